// Wire types for the schema v1 section document served by /api/section.

export interface SectionDocument {
  schema_version: number;
  params: {
    R: number;
    r: number;
    rho: number;
    alpha_deg: number;
    phi_deg: number;
    resolution: number;
  };
  classification: { tag: string; detail: Record<string, unknown> };
  quartic: { a: number; b: number; c: number; d: number };
  frame: {
    origin: number[];
    axis_t: number[];
    axis_w: number[];
    normal: number[];
  };
  bound: number;
  polylines2d: number[][][];
  polylines3d: number[][][];
  closed: boolean[];
  residuals: { max_torus: number; max_plane: number };
  bridge: BridgeBlock | null;
}

export interface BridgeBlock {
  k: number;
  circle_radius: number;
  circle_centers_zy: number[][];
  cone_vertex: number[] | null;
  vertex_at_infinity: boolean;
  sweep: SweepRecord[];
}

export interface SweepRecord {
  angle: number;
  z: number;
  y: number;
  x: number | null;
}

export interface Preset {
  name: string;
  params: { R: number; r: number; rho: number; alpha: number; phi: number };
  expected_class: string;
  description: string;
}

export interface ExplorerParams {
  R: number;
  r: number;
  rho: number;
  alphaDeg: number;
  phiDeg: number;
}
