// Cone-cylinder construction overlay: replays the precomputed sweep from the
// document's bridge block (source circle point P, its lifts on the cone and
// their projections onto the section plane).  No geometry is computed here;
// the sweep positions come verbatim from the API.

import { BridgeBlock, SectionDocument } from "./types.js";
import { Affine2D, fitView, toScreen } from "./render2d.js";

export class BridgeSweepAnimator {
  private index = 0;
  private running = false;

  constructor(private stepsPerTick = 1) {}

  get position(): number {
    return this.index;
  }

  get isRunning(): boolean {
    return this.running;
  }

  start(): void {
    this.running = true;
  }

  pause(): void {
    this.running = false;
  }

  /** Deterministic resume: pausing never changes the sweep position. */
  toggle(): void {
    this.running = !this.running;
  }

  reset(): void {
    this.index = 0;
  }

  tick(sweepLength: number): void {
    if (this.running && sweepLength > 0) {
      this.index = (this.index + this.stepsPerTick) % sweepLength;
    }
  }
}

export function drawBridgeOverlay(
  ctx: CanvasRenderingContext2D,
  doc: SectionDocument,
  animator: BridgeSweepAnimator,
  width: number,
  height: number,
): void {
  const bridge: BridgeBlock | null = doc.bridge;
  if (!bridge) return; // hidden for horizontal planes
  const view: Affine2D = fitView(
    Math.max(doc.bound, Math.abs(bridge.circle_centers_zy[0][0]) + bridge.circle_radius),
    width,
    height,
  );

  // source circles drawn in the (x, y) canvas via their (z, y) coordinates:
  // the z axis of the construction is laid along the horizontal screen axis
  ctx.strokeStyle = "#4f8f4f";
  ctx.lineWidth = 1;
  for (const [cz, cy] of bridge.circle_centers_zy) {
    ctx.beginPath();
    const [sx, sy] = toScreen(cz, cy, view);
    ctx.arc(sx, sy, bridge.circle_radius * view.scale, 0, 2 * Math.PI);
    ctx.stroke();
  }

  const rec = bridge.sweep[animator.position % bridge.sweep.length];
  if (!rec) return;

  // P on the circle
  ctx.fillStyle = "#d0e57b";
  const [px, py] = toScreen(rec.z, rec.y, view);
  ctx.beginPath();
  ctx.arc(px, py, 4, 0, 2 * Math.PI);
  ctx.fill();

  if (rec.x !== null) {
    // projected points P'' = (+-x, y) on the section
    ctx.fillStyle = "#ff6b6b";
    for (const sgn of [1, -1]) {
      const [qx, qy] = toScreen(sgn * rec.x, rec.y, view);
      ctx.beginPath();
      ctx.arc(qx, qy, 3, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.strokeStyle = "#88888866";
    ctx.beginPath();
    ctx.moveTo(...toScreen(-rec.x, rec.y, view));
    ctx.lineTo(...toScreen(rec.x, rec.y, view));
    ctx.stroke();
  }
}
