// 2D section view: plane coordinates, t to the right, w up.  Pure affine
// math-to-screen mapping; every curve point comes from the document.

import { SectionDocument } from "./types.js";

export interface Affine2D {
  scale: number;
  cx: number;
  cy: number;
}

export function fitView(bound: number, width: number, height: number): Affine2D {
  const b = bound > 0 ? bound : 1;
  const scale = Math.min(width, height) / (2 * b * 1.05);
  return { scale, cx: width / 2, cy: height / 2 };
}

export function toScreen(t: number, w: number, a: Affine2D): [number, number] {
  return [a.cx + t * a.scale, a.cy - w * a.scale];
}

export function draw2d(
  ctx: CanvasRenderingContext2D,
  doc: SectionDocument,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const view = fitView(doc.bound, width, height);

  ctx.strokeStyle = "#39424e";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(...toScreen(-doc.bound * 1.02, 0, view));
  ctx.lineTo(...toScreen(doc.bound * 1.02, 0, view));
  ctx.moveTo(...toScreen(0, -doc.bound * 1.02, view));
  ctx.lineTo(...toScreen(0, doc.bound * 1.02, view));
  ctx.stroke();

  ctx.strokeStyle = "#ff6b6b";
  ctx.lineWidth = 2;
  doc.polylines2d.forEach((poly, i) => {
    if (poly.length < 2) return;
    ctx.beginPath();
    ctx.moveTo(...toScreen(poly[0][0], poly[0][1], view));
    for (let k = 1; k < poly.length; k++) {
      ctx.lineTo(...toScreen(poly[k][0], poly[k][1], view));
    }
    if (doc.closed[i]) ctx.closePath();
    ctx.stroke();
  });
}
