/**
 * Shapes of the JSON documents exchanged with the floorplan service.
 *
 * These mirror the service schemas exactly; the client contains no geometry
 * logic of its own, it just moves these documents around.
 */

/** Outer-wall names accepted wherever a door override endpoint appears. */
export type BoundaryLabel = "N" | "E" | "S" | "W";

export interface ConstraintDoc {
  min_width: number;
  ar_min?: number;
  ar_max?: number;
  max_width?: number;
  max_height?: number;
}

export interface DoorOverrideDoc {
  rooms: [number | BoundaryLabel, number | BoundaryLabel];
  min_width: number;
}

export interface DoorDoc {
  default_min?: number;
  overrides?: DoorOverrideDoc[];
}

export interface OptionsDoc {
  max_iterations?: number;
  tol?: number;
  prune_sink_edges?: boolean;
}

export interface ProjectDoc {
  matrix: number[][];
  constraints: Record<string, ConstraintDoc>;
  door?: DoorDoc;
  options?: OptionsDoc;
}

export interface RectDoc {
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface FloorplanDoc {
  envelope: { w: number; h: number };
  rooms: RectDoc[];
}

export interface TraceIterationDoc {
  index: number;
  min_widths: Record<string, number>;
  widths: Record<string, number>;
  min_heights: Record<string, number>;
  heights: Record<string, number>;
  updated_min_widths: Record<string, number>;
  envelope_width: number;
  envelope_height: number;
  violators: number[];
}

export interface TraceDoc {
  status: string;
  iterations: TraceIterationDoc[];
}

export interface AdjacencyCheckDoc {
  rooms: [number, number];
  orientation: "horizontal" | "vertical";
  shared_length: number;
  door_required: number;
  ok: boolean;
}

export interface VerificationDoc {
  ok: boolean;
  tiling_ok: boolean;
  geometry_preserved: boolean;
  adjacency: AdjacencyCheckDoc[];
  messages: string[];
}

export interface WallFlowsDoc {
  edges: Record<string, number>;
  room_dim: Record<string, number>;
  envelope: number;
  pruned: boolean;
}

export interface ResultDoc {
  status: "CONVERGED" | "NON_CONVERGENT";
  floorplan: FloorplanDoc | null;
  verification: VerificationDoc | null;
  trace: TraceDoc;
  wall_flows: { width: WallFlowsDoc; height: WallFlowsDoc };
  timing_ms: number;
}

export interface ViolationDoc {
  rule: string;
  message: string;
  cells: [number, number][];
}

export interface ApiErrorBody {
  code: "VALIDATION" | "INFEASIBLE" | "NON_CONVERGENT" | "INTERNAL" | "NETWORK";
  message: string;
  details: unknown;
}

export interface ExampleDoc {
  name: string;
  description: string;
  project: ProjectDoc;
}

/** Numeric id for a boundary label; rooms keep their positive ids. */
export const BOUNDARY_ID: Record<BoundaryLabel, number> = {
  N: -1,
  E: -2,
  S: -3,
  W: -4,
};

export const BOUNDARY_LABEL: Record<number, BoundaryLabel> = {
  [-1]: "N",
  [-2]: "E",
  [-3]: "S",
  [-4]: "W",
};

/** Ordering used for door-override endpoints: N, E, S, W first, then rooms. */
export function vertexSortKey(v: number): [number, number] {
  return v < 0 ? [0, -v] : [1, v];
}
