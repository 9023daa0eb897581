import { ExplorerClient } from "./client.js";
import { buildExplorer } from "./dom.js";
import { ExplorerSession } from "./session.js";

async function boot(): Promise<void> {
  const params = new URLSearchParams(location.search);
  const client = new ExplorerClient(params.get("api") ?? "");
  const session = await ExplorerSession.open(client, {
    preset: params.get("preset") ?? "chair",
  });
  document.body.appendChild(buildExplorer(document, session).root);
}

boot().catch((err: unknown) => {
  const msg = document.createElement("pre");
  msg.className = "boot-error";
  msg.textContent = String(err);
  document.body.appendChild(msg);
});
