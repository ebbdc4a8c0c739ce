/**
 * Editor state and the operations the UI performs on it.
 *
 * Everything here is pure: each operation returns a new state, so the DOM
 * layer can re-render from scratch and the tests can drive the editor
 * without a browser. Arrangement rules (rooms must be solid rectangles,
 * ids contiguous, ...) are NOT checked here; drafts go to the service's
 * validate endpoint and its verdict is displayed as-is.
 */

import { canonicalJson, type JsonValue } from "./canonical.js";
import {
  BOUNDARY_ID,
  BOUNDARY_LABEL,
  vertexSortKey,
  type BoundaryLabel,
  type ConstraintDoc,
  type DoorOverrideDoc,
  type ProjectDoc,
  type ResultDoc,
} from "./model.js";

export const MIN_GRID = 1;
export const MAX_GRID = 32;
export const DEFAULT_GRID = 8;

export const DEFAULT_DOOR_MIN = 1.0;
export const DEFAULT_MAX_ITERATIONS = 50;
export const DEFAULT_TOL = 1e-6;

export interface ConstraintRow {
  minWidth: number;
  arMin: number;
  arMax: number;
  maxWidth: number | null;
  maxHeight: number | null;
}

/** Endpoints are room ids, or negative boundary ids, in ascending order. */
export interface DoorOverride {
  a: number;
  b: number;
  width: number;
}

export interface DoorState {
  defaultMin: number;
  overrides: DoorOverride[];
}

export interface OptionsState {
  maxIterations: number;
  tol: number;
  pruneSinkEdges: boolean;
}

/** One rectangular block of cells, inclusive on both corners. */
export interface CellRect {
  r0: number;
  c0: number;
  r1: number;
  c1: number;
}

export interface EditorState {
  rows: number;
  cols: number;
  /** cells[r][c] = room id, 0 while still unpainted. */
  cells: number[][];
  activeRoom: number;
  constraints: Record<number, ConstraintRow>;
  door: DoorState;
  options: OptionsState;
  lastResult: ResultDoc | null;
}

export function defaultConstraintRow(): ConstraintRow {
  return { minWidth: 5, arMin: 0.5, arMax: 2, maxWidth: null, maxHeight: null };
}

export function newEditor(
  rows: number = DEFAULT_GRID,
  cols: number = DEFAULT_GRID,
): EditorState {
  rows = clampGrid(rows);
  cols = clampGrid(cols);
  return {
    rows,
    cols,
    cells: Array.from({ length: rows }, () => Array<number>(cols).fill(0)),
    activeRoom: 1,
    constraints: { 1: defaultConstraintRow() },
    door: { defaultMin: DEFAULT_DOOR_MIN, overrides: [] },
    options: {
      maxIterations: DEFAULT_MAX_ITERATIONS,
      tol: DEFAULT_TOL,
      pruneSinkEdges: false,
    },
    lastResult: null,
  };
}

function clampGrid(n: number): number {
  return Math.max(MIN_GRID, Math.min(MAX_GRID, Math.trunc(n)));
}

/** Resize the grid, keeping the overlapping cells painted as they were. */
export function resizeGrid(
  state: EditorState,
  rows: number,
  cols: number,
): EditorState {
  rows = clampGrid(rows);
  cols = clampGrid(cols);
  const cells = Array.from({ length: rows }, (_, r) =>
    Array.from({ length: cols }, (_, c) => state.cells[r]?.[c] ?? 0),
  );
  return { ...state, rows, cols, cells };
}

function normalizeRect(state: EditorState, sel: CellRect): CellRect {
  const r0 = Math.max(0, Math.min(sel.r0, sel.r1));
  const c0 = Math.max(0, Math.min(sel.c0, sel.c1));
  const r1 = Math.min(state.rows - 1, Math.max(sel.r0, sel.r1));
  const c1 = Math.min(state.cols - 1, Math.max(sel.c0, sel.c1));
  return { r0, c0, r1, c1 };
}

/**
 * Paint a solid block of cells with one room id (the rectangle-drag tool).
 * Id 0 erases. A newly used id gets a default constraint row; rows for ids
 * no longer on the grid are kept, since the table may be mid-edit.
 */
export function paintCells(
  state: EditorState,
  selection: CellRect,
  roomId: number,
): EditorState {
  const { r0, c0, r1, c1 } = normalizeRect(state, selection);
  if (r1 < r0 || c1 < c0) return state;
  const cells = state.cells.map((row) => row.slice());
  for (let r = r0; r <= r1; r++) {
    for (let c = c0; c <= c1; c++) {
      cells[r]![c] = roomId;
    }
  }
  const constraints = { ...state.constraints };
  if (roomId > 0 && !(roomId in constraints)) {
    constraints[roomId] = defaultConstraintRow();
  }
  return { ...state, cells, constraints };
}

export function setActiveRoom(state: EditorState, roomId: number): EditorState {
  const constraints = { ...state.constraints };
  if (roomId > 0 && !(roomId in constraints)) {
    constraints[roomId] = defaultConstraintRow();
  }
  return { ...state, activeRoom: roomId, constraints };
}

function idsInCells(cells: number[][]): number[] {
  const seen = new Set<number>();
  for (const row of cells) {
    for (const v of row) if (v > 0) seen.add(v);
  }
  return [...seen].sort((a, b) => a - b);
}

/** Distinct room ids currently painted, ascending. */
export function roomsInUse(state: EditorState): number[] {
  return idsInCells(state.cells);
}

export function setConstraint(
  state: EditorState,
  roomId: number,
  patch: Partial<ConstraintRow>,
): EditorState {
  const row = state.constraints[roomId] ?? defaultConstraintRow();
  return {
    ...state,
    constraints: { ...state.constraints, [roomId]: { ...row, ...patch } },
  };
}

export function setDoorDefault(state: EditorState, width: number): EditorState {
  return { ...state, door: { ...state.door, defaultMin: width } };
}

function pairKey(u: number, v: number): [number, number] {
  return u <= v ? [u, v] : [v, u];
}

/** Add or replace the override for an unordered endpoint pair. */
export function setDoorOverride(
  state: EditorState,
  u: number,
  v: number,
  width: number,
): EditorState {
  const [a, b] = pairKey(u, v);
  const overrides = state.door.overrides.filter(
    (o) => !(o.a === a && o.b === b),
  );
  overrides.push({ a, b, width });
  return { ...state, door: { ...state.door, overrides } };
}

export function removeDoorOverride(
  state: EditorState,
  u: number,
  v: number,
): EditorState {
  const [a, b] = pairKey(u, v);
  return {
    ...state,
    door: {
      ...state.door,
      overrides: state.door.overrides.filter((o) => !(o.a === a && o.b === b)),
    },
  };
}

export function setOptions(
  state: EditorState,
  patch: Partial<OptionsState>,
): EditorState {
  return { ...state, options: { ...state.options, ...patch } };
}

export function setResult(
  state: EditorState,
  result: ResultDoc | null,
): EditorState {
  return { ...state, lastResult: result };
}

// --- project document conversion -------------------------------------------

function endpointToDoc(v: number): number | BoundaryLabel {
  return v < 0 ? BOUNDARY_LABEL[v]! : v;
}

/**
 * Serialize the editor to a project document, omitting every field that
 * still holds its default so the output matches the service's canonical
 * form: constraint maxima only when set, the door block only when it
 * differs from "1.0, no overrides", option fields only when changed.
 */
export function toProjectDoc(state: EditorState): ProjectDoc {
  const doc: ProjectDoc = {
    matrix: state.cells.map((row) => row.slice()),
    constraints: {},
  };
  for (const rid of roomsInUse(state)) {
    const row = state.constraints[rid] ?? defaultConstraintRow();
    const cdoc: ConstraintDoc = {
      min_width: row.minWidth,
      ar_min: row.arMin,
      ar_max: row.arMax,
    };
    if (row.maxWidth !== null) cdoc.max_width = row.maxWidth;
    if (row.maxHeight !== null) cdoc.max_height = row.maxHeight;
    doc.constraints[String(rid)] = cdoc;
  }

  const { defaultMin, overrides } = state.door;
  if (defaultMin !== DEFAULT_DOOR_MIN || overrides.length > 0) {
    doc.door = { default_min: defaultMin };
    if (overrides.length > 0) {
      const sorted = [...overrides].sort((x, y) => {
        const kx = [...vertexSortKey(x.a), ...vertexSortKey(x.b)];
        const ky = [...vertexSortKey(y.a), ...vertexSortKey(y.b)];
        for (let i = 0; i < 4; i++) {
          if (kx[i]! !== ky[i]!) return kx[i]! - ky[i]!;
        }
        return 0;
      });
      doc.door.overrides = sorted.map(
        (o): DoorOverrideDoc => ({
          rooms: [endpointToDoc(o.a), endpointToDoc(o.b)],
          min_width: o.width,
        }),
      );
    }
  }

  const opts = state.options;
  const odoc: NonNullable<ProjectDoc["options"]> = {};
  if (opts.maxIterations !== DEFAULT_MAX_ITERATIONS) {
    odoc.max_iterations = opts.maxIterations;
  }
  if (opts.tol !== DEFAULT_TOL) odoc.tol = opts.tol;
  if (opts.pruneSinkEdges) odoc.prune_sink_edges = true;
  if (Object.keys(odoc).length > 0) doc.options = odoc;
  return doc;
}

/** Canonical bytes of the current project, as a download or diff target. */
export function exportProject(state: EditorState): string {
  return canonicalJson(toProjectDoc(state) as unknown as JsonValue);
}

function endpointFromDoc(v: number | BoundaryLabel): number {
  if (typeof v === "number") return v;
  const id = BOUNDARY_ID[v];
  if (id === undefined) throw new Error(`unknown wall label: ${v}`);
  return id;
}

/**
 * Build editor state from a project document (example load or file
 * import). The grid takes the matrix's size; ids and constraints come in
 * as-is, so exporting again round-trips.
 */
export function loadProject(doc: ProjectDoc): EditorState {
  const rows = doc.matrix.length;
  const cols = doc.matrix[0]?.length ?? 0;
  if (rows === 0 || cols === 0) throw new Error("matrix must be a non-empty grid");
  if (rows > MAX_GRID || cols > MAX_GRID) {
    throw new Error(`matrix exceeds the ${MAX_GRID}x${MAX_GRID} editor grid`);
  }
  for (const row of doc.matrix) {
    if (row.length !== cols) throw new Error("matrix rows have differing lengths");
  }

  const constraints: Record<number, ConstraintRow> = {};
  for (const [key, cdoc] of Object.entries(doc.constraints)) {
    constraints[Number(key)] = {
      minWidth: cdoc.min_width,
      arMin: cdoc.ar_min ?? 0.5,
      arMax: cdoc.ar_max ?? 2.0,
      maxWidth: cdoc.max_width ?? null,
      maxHeight: cdoc.max_height ?? null,
    };
  }

  const door: DoorState = { defaultMin: DEFAULT_DOOR_MIN, overrides: [] };
  if (doc.door) {
    door.defaultMin = doc.door.default_min ?? DEFAULT_DOOR_MIN;
    for (const ov of doc.door.overrides ?? []) {
      const [a, b] = pairKey(
        endpointFromDoc(ov.rooms[0]),
        endpointFromDoc(ov.rooms[1]),
      );
      door.overrides = door.overrides.filter(
        (o) => !(o.a === a && o.b === b),
      );
      door.overrides.push({ a, b, width: ov.min_width });
    }
  }

  const options: OptionsState = {
    maxIterations: doc.options?.max_iterations ?? DEFAULT_MAX_ITERATIONS,
    tol: doc.options?.tol ?? DEFAULT_TOL,
    pruneSinkEdges: doc.options?.prune_sink_edges ?? false,
  };

  const first = idsInCells(doc.matrix)[0] ?? 1;
  return {
    rows,
    cols,
    cells: doc.matrix.map((row) => row.slice()),
    activeRoom: first,
    constraints,
    door,
    options,
    lastResult: null,
  };
}
