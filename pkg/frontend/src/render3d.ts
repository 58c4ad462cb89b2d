// Minimal 3D wireframe painter: a slowly rotating orthographic projection of
// the torus wireframe (sampled from the parametric surface equations), the
// cutting-plane rectangle (from the document's frame block) and the embedded
// section curve (from polylines3d).

import { SectionDocument } from "./types.js";

type Vec3 = [number, number, number];

export interface Camera {
  yaw: number;
  pitch: number;
  scale: number;
  cx: number;
  cy: number;
}

export function project(p: Vec3, cam: Camera): [number, number] {
  const [x, y, z] = p;
  const cy = Math.cos(cam.yaw), sy = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch), sp = Math.sin(cam.pitch);
  const x1 = cy * x + sy * y;
  const y1 = -sy * x + cy * y;
  const z1 = cp * z - sp * y1;
  const y2 = sp * z + cp * y1;
  void y2;
  return [cam.cx + cam.scale * x1, cam.cy - cam.scale * z1];
}

function torusRings(R: number, r: number): Vec3[][] {
  const rings: Vec3[][] = [];
  const NV = 18, NU = 36;
  for (let j = 0; j < NV; j++) {
    const v = (2 * Math.PI * j) / NV;
    const ring: Vec3[] = [];
    for (let i = 0; i <= NU; i++) {
      const u = (2 * Math.PI * i) / NU;
      const ringRadius = R + r * Math.cos(u);
      ring.push([ringRadius * Math.cos(v), ringRadius * Math.sin(v), r * Math.sin(u)]);
    }
    rings.push(ring);
  }
  for (let i = 0; i < 12; i++) {
    const u = (2 * Math.PI * i) / 12;
    const ring: Vec3[] = [];
    for (let j = 0; j <= 48; j++) {
      const v = (2 * Math.PI * j) / 48;
      const ringRadius = R + r * Math.cos(u);
      ring.push([ringRadius * Math.cos(v), ringRadius * Math.sin(v), r * Math.sin(u)]);
    }
    rings.push(ring);
  }
  return rings;
}

function planeRect(doc: SectionDocument): Vec3[] {
  const { origin, axis_t, axis_w } = doc.frame;
  const b = doc.bound > 0 ? doc.bound : doc.params.R + doc.params.r;
  const corner = (st: number, sw: number): Vec3 => [
    origin[0] + st * b * axis_t[0] + sw * b * axis_w[0],
    origin[1] + st * b * axis_t[1] + sw * b * axis_w[1],
    origin[2] + st * b * axis_t[2] + sw * b * axis_w[2],
  ];
  return [corner(-1, -1), corner(1, -1), corner(1, 1), corner(-1, 1), corner(-1, -1)];
}

function strokePath(ctx: CanvasRenderingContext2D, pts: Vec3[], cam: Camera, close = false): void {
  if (pts.length < 2) return;
  ctx.beginPath();
  ctx.moveTo(...project(pts[0], cam));
  for (let i = 1; i < pts.length; i++) ctx.lineTo(...project(pts[i], cam));
  if (close) ctx.closePath();
  ctx.stroke();
}

export function draw3d(
  ctx: CanvasRenderingContext2D,
  doc: SectionDocument,
  width: number,
  height: number,
  yaw: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const extent = doc.params.R + doc.params.r;
  const cam: Camera = {
    yaw,
    pitch: 0.45,
    scale: Math.min(width, height) / (2.4 * extent),
    cx: width / 2,
    cy: height / 2,
  };

  ctx.strokeStyle = "#3a4a5a";
  ctx.lineWidth = 0.6;
  for (const ring of torusRings(doc.params.R, doc.params.r)) {
    strokePath(ctx, ring, cam);
  }

  ctx.strokeStyle = "#7f9cc0";
  ctx.lineWidth = 1.2;
  strokePath(ctx, planeRect(doc), cam);

  ctx.strokeStyle = "#ff6b6b";
  ctx.lineWidth = 2;
  doc.polylines3d.forEach((poly, i) => {
    strokePath(ctx, poly as Vec3[], cam, doc.closed[i]);
  });
}
