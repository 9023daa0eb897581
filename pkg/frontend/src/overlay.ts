import type { ChildBox } from "./types.js";

export interface CssBox {
  label: number;
  leftPct: number;
  topPct: number;
  widthPct: number;
  heightPct: number;
}

/** Child boxes arrive normalized to the unit square (origin top left);
 * convert to percentage geometry for absolutely positioned overlays. */
export function boxesToCss(boxes: ChildBox[]): CssBox[] {
  return boxes.map((b) => ({
    label: b.label,
    leftPct: 100 * b.x0,
    topPct: 100 * b.y0,
    widthPct: 100 * (b.x1 - b.x0),
    heightPct: 100 * (b.y1 - b.y0),
  }));
}

/** Which child a click at normalized (x, y) lands in. Bounding boxes of
 * sibling pieces overlap a lot, so among the boxes containing the point
 * the nearest center wins; exact ties go to the lowest label. Containment
 * is written positively so NaN coordinates miss every box. */
export function hitTest(boxes: ChildBox[], x: number, y: number): number | null {
  let winner: number | null = null;
  let best = Infinity;
  for (const b of boxes) {
    if (!(x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1)) continue;
    const dx = x - (b.x0 + b.x1) / 2;
    const dy = y - (b.y0 + b.y1) / 2;
    const d = dx * dx + dy * dy;
    if (winner === null || d < best || (d === best && b.label < winner)) {
      best = d;
      winner = b.label;
    }
  }
  return winner;
}

/** Center of a child's box, for synthesizing clicks in tests. */
export function boxCenter(boxes: ChildBox[], label: number): [number, number] {
  const box = boxes.find((b) => b.label === label);
  if (!box) throw new Error(`no child box with label ${label}`);
  return [(box.x0 + box.x1) / 2, (box.y0 + box.y1) / 2];
}
