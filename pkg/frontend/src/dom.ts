import { boxesToCss } from "./overlay.js";
import {
  ExplorerSession,
  rareBadgeText,
  statusLine,
  VIEW_PIXELS,
} from "./session.js";

export interface ExplorerView {
  root: HTMLElement;
  refresh(): void;
}

/** Wire a session to DOM elements. The document is injected so tests can
 * pass a stub; only createElement and the members used here are needed. */
export function buildExplorer(
  doc: Document,
  session: ExplorerSession,
): ExplorerView {
  const root = doc.createElement("div");
  root.className = "explorer";

  const frame = doc.createElement("div");
  frame.className = "frame";
  const img = doc.createElement("img");
  img.className = "view";
  img.setAttribute("alt", `attractor neighborhood view (${session.summary.name})`);
  frame.appendChild(img);

  // child outlines are decoration only; the boxes overlap, so clicks go
  // through the overlay and resolve by nearest box center
  const overlay = doc.createElement("div");
  overlay.className = "overlay";
  for (const box of boxesToCss(session.childBoxes)) {
    const child = doc.createElement("div");
    child.className = "child";
    child.style.left = `${box.leftPct}%`;
    child.style.top = `${box.topPct}%`;
    child.style.width = `${box.widthPct}%`;
    child.style.height = `${box.heightPct}%`;
    child.setAttribute("data-label", String(box.label));
    overlay.appendChild(child);
  }
  overlay.addEventListener("click", (ev) => {
    const e = ev as MouseEvent;
    const w = overlay.clientWidth || 1;
    const h = overlay.clientHeight || 1;
    void session.clickAt(e.offsetX / w, e.offsetY / h).then(refresh);
  });
  frame.appendChild(overlay);
  root.appendChild(frame);

  const badge = doc.createElement("div");
  badge.className = "badge";
  badge.hidden = true;
  root.appendChild(badge);

  const status = doc.createElement("div");
  status.className = "status";
  root.appendChild(status);

  const out = doc.createElement("button");
  out.className = "out";
  out.textContent = "zoom out";
  out.addEventListener("click", () => {
    void session.zoomOut().then(refresh);
  });
  root.appendChild(out);

  function refresh(): void {
    img.setAttribute("src", session.viewUrl(VIEW_PIXELS));
    const text = rareBadgeText(session.state);
    badge.hidden = text === null;
    badge.textContent = text ?? "";
    status.textContent = statusLine(session.state);
  }

  refresh();
  return { root, refresh };
}
