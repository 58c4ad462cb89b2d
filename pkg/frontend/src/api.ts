// Thin fetch wrapper for the section service; the fetch implementation is
// injectable so tests can supply delayed mocks.

import { ExplorerParams, Preset, SectionDocument } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export function sectionUrl(p: ExplorerParams, resolution: number): string {
  const q = new URLSearchParams({
    R: String(p.R),
    r: String(p.r),
    rho: String(p.rho),
    alpha: String(p.alphaDeg),
    phi: String(p.phiDeg),
    resolution: String(resolution),
  });
  return `/api/section?${q.toString()}`;
}

export function makeSectionFetcher(fetchImpl: FetchLike = fetch) {
  return async (p: ExplorerParams, resolution: number): Promise<SectionDocument> => {
    const res = await fetchImpl(sectionUrl(p, resolution));
    const body = (await res.json()) as Record<string, unknown>;
    if (!res.ok) {
      throw new Error(String(body["error"] ?? `HTTP ${res.status}`));
    }
    return body as unknown as SectionDocument;
  };
}

export async function fetchPresets(fetchImpl: FetchLike = fetch): Promise<Preset[]> {
  const res = await fetchImpl("/api/presets");
  if (!res.ok) throw new Error(`HTTP ${res.status}`);
  return (await res.json()) as Preset[];
}
