// Explorer state: parameter clamping, request debouncing and the monotone
// response-sequence gate that keeps stale documents off the screen.

import { ExplorerParams, SectionDocument } from "./types.js";

export const PARAM_LIMITS = {
  R: { min: 0.2, max: 6 },
  r: { min: 0.05, max: 6 }, // effective max is linked to R
  rho: { min: 0, max: 8 },
  alphaDeg: { min: 0, max: 360 },
  phiDeg: { min: -90, max: 90 },
} as const;

export const DEBOUNCE_MS = 80;
export const DRAG_RESOLUTION = 256;
export const FINAL_RESOLUTION = 512;

export type Fetcher = (
  params: ExplorerParams,
  resolution: number,
) => Promise<SectionDocument>;

function clampTo(value: number, min: number, max: number): number {
  if (!Number.isFinite(value)) return min;
  return Math.min(max, Math.max(min, value));
}

/** Clamp a parameter set into range; r is additionally capped by R so the
 * torus can never go spindle. Returns a fresh object. */
export function clampParams(p: ExplorerParams): ExplorerParams {
  const R = clampTo(p.R, PARAM_LIMITS.R.min, PARAM_LIMITS.R.max);
  const r = clampTo(p.r, PARAM_LIMITS.r.min, R);
  return {
    R,
    r,
    rho: clampTo(p.rho, PARAM_LIMITS.rho.min, PARAM_LIMITS.rho.max),
    alphaDeg: clampTo(p.alphaDeg, PARAM_LIMITS.alphaDeg.min, PARAM_LIMITS.alphaDeg.max),
    phiDeg: clampTo(p.phiDeg, PARAM_LIMITS.phiDeg.min, PARAM_LIMITS.phiDeg.max),
  };
}

export interface ViewOptions {
  showBridge: boolean;
  show3d: boolean;
  showVillarceauGuides: boolean;
}

export class ExplorerStore {
  params: ExplorerParams = { R: 2, r: 1, rho: 0, alphaDeg: 0, phiDeg: 0 };
  doc: SectionDocument | null = null;
  error: string | null = null;
  pending = false;
  view: ViewOptions = { showBridge: false, show3d: true, showVillarceauGuides: false };

  private nextSeq = 0;
  private displayedSeq = -1;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private listeners: Array<() => void> = [];

  constructor(private fetcher: Fetcher) {}

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  /** Latest sequence number whose document is on screen (for tests). */
  get displayedSequence(): number {
    return this.displayedSeq;
  }

  setParam(name: keyof ExplorerParams, value: number, dragging = false): void {
    const next = { ...this.params, [name]: value };
    this.params = clampParams(next);
    if (name === "R") {
      // keep r consistent with the linked slider maximum
      this.params = clampParams(this.params);
    }
    this.notify();
    if (dragging) {
      this.scheduleFetch(DRAG_RESOLUTION);
    } else {
      this.cancelScheduled();
      this.issue(FINAL_RESOLUTION);
    }
  }

  applyPreset(params: { R: number; r: number; rho: number; alpha: number; phi: number }): void {
    this.params = clampParams({
      R: params.R,
      r: params.r,
      rho: params.rho,
      alphaDeg: params.alpha,
      phiDeg: params.phi,
    });
    this.cancelScheduled();
    this.notify();
    this.issue(FINAL_RESOLUTION);
  }

  refresh(resolution = FINAL_RESOLUTION): void {
    this.issue(resolution);
  }

  private scheduleFetch(resolution: number): void {
    this.cancelScheduled();
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      this.issue(resolution);
    }, DEBOUNCE_MS);
  }

  private cancelScheduled(): void {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
  }

  /** Issue a request; the response is dropped unless its sequence number is
   * newer than everything already displayed. */
  private issue(resolution: number): void {
    const seq = this.nextSeq++;
    this.pending = true;
    this.notify();
    this.fetcher({ ...this.params }, resolution).then(
      (doc) => this.accept(seq, doc),
      (err) => this.acceptError(seq, err),
    );
  }

  private accept(seq: number, doc: SectionDocument): void {
    if (seq <= this.displayedSeq) return; // stale response, never rendered
    this.displayedSeq = seq;
    this.doc = doc;
    this.error = null;
    this.pending = seq !== this.nextSeq - 1;
    this.notify();
  }

  private acceptError(seq: number, err: unknown): void {
    if (seq <= this.displayedSeq) return;
    this.displayedSeq = seq;
    // keep the last good drawing, surface the message
    this.error = err instanceof Error ? err.message : String(err);
    this.pending = seq !== this.nextSeq - 1;
    this.notify();
  }
}
