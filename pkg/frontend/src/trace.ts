/**
 * View model for the convergence trace panel.
 *
 * Each solver iteration becomes one table: a row per room with the width
 * floor going in, the solved width, the height floor, the solved height,
 * and whether the room blew its aspect band; plus the envelope line and
 * the violator list for the iteration heading.
 */

import type { TraceDoc, TraceIterationDoc } from "./model.js";

export interface TraceRoomRow {
  room: number;
  minWidth: number;
  width: number;
  minHeight: number;
  height: number;
  violator: boolean;
}

export interface TraceIterationView {
  index: number;
  rooms: TraceRoomRow[];
  envelope: string;
  violators: string;
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : String(Math.round(v * 1000) / 1000);
}

export function iterationView(it: TraceIterationDoc): TraceIterationView {
  const bad = new Set(it.violators);
  const ids = Object.keys(it.widths)
    .map(Number)
    .sort((a, b) => a - b);
  const rooms = ids.map((id) => {
    const key = String(id);
    return {
      room: id,
      minWidth: it.min_widths[key] ?? 0,
      width: it.widths[key] ?? 0,
      minHeight: it.min_heights[key] ?? 0,
      height: it.heights[key] ?? 0,
      violator: bad.has(id),
    };
  });
  return {
    index: it.index,
    rooms,
    envelope: `${fmt(it.envelope_width)} × ${fmt(it.envelope_height)}`,
    violators: it.violators.length > 0 ? it.violators.join(", ") : "none",
  };
}

export function traceViews(trace: TraceDoc): TraceIterationView[] {
  return trace.iterations.map(iterationView);
}
