/**
 * Turn a solved floorplan into drawing primitives.
 *
 * The draw list is the single source of geometry for the screen and for
 * SVG export: plan coordinates times one uniform scale factor, origin top
 * left, y growing downward, no other transforms. Tests check the list;
 * the DOM layer and the SVG builder just transcribe it.
 */

import type { FloorplanDoc } from "./model.js";

export const DEFAULT_SCALE = 10;

export interface EnvelopeShape {
  kind: "envelope";
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface RoomShape {
  kind: "room";
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface LabelShape {
  kind: "label";
  id: number;
  /** Center of the room, in scaled units. */
  x: number;
  y: number;
  /** "id (w×h)" with w and h in plan units, unscaled. */
  text: string;
}

export type PlanShape = EnvelopeShape | RoomShape | LabelShape;

/** Shortest plain decimal: integers without a dot, never exponent form. */
export function fmtLength(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 2 ** 53) {
    return String(value);
  }
  return value
    .toFixed(6)
    .replace(/0+$/, "")
    .replace(/\.$/, "");
}

export function roomLabel(id: number, w: number, h: number): string {
  return `${id} (${fmtLength(w)}×${fmtLength(h)})`;
}

/**
 * Build the draw list: envelope first, then rooms in id order, then labels
 * in id order (when enabled).
 */
export function planDrawList(
  plan: FloorplanDoc,
  scale: number = DEFAULT_SCALE,
  labels: boolean = true,
): PlanShape[] {
  if (scale <= 0) throw new Error("scale must be positive");
  const shapes: PlanShape[] = [
    {
      kind: "envelope",
      x: 0,
      y: 0,
      w: plan.envelope.w * scale,
      h: plan.envelope.h * scale,
    },
  ];
  const rooms = [...plan.rooms].sort((a, b) => a.id - b.id);
  for (const r of rooms) {
    shapes.push({
      kind: "room",
      id: r.id,
      x: r.x * scale,
      y: r.y * scale,
      w: r.w * scale,
      h: r.h * scale,
    });
  }
  if (labels) {
    for (const r of rooms) {
      shapes.push({
        kind: "label",
        id: r.id,
        x: (r.x + r.w / 2) * scale,
        y: (r.y + r.h / 2) * scale,
        text: roomLabel(r.id, r.w, r.h),
      });
    }
  }
  return shapes;
}

const SVG_STYLE =
  ".envelope { fill: none; stroke: #1a1a1a; stroke-width: 2; }\n" +
  "    .room { fill: #f3ede2; stroke: #4a4a4a; stroke-width: 1; }\n" +
  "    .label { font: 13px sans-serif; fill: #1a1a1a; " +
  "text-anchor: middle; dominant-baseline: middle; }";

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/**
 * Serialize a draw list to SVG. The shapes carry scaled coordinates
 * already, so what downloads is exactly what was on screen.
 */
export function svgFromDrawList(shapes: PlanShape[], pad: number): string {
  const envelope = shapes.find((s) => s.kind === "envelope");
  if (!envelope) throw new Error("draw list has no envelope");
  const vb = [
    fmtLength(-pad),
    fmtLength(-pad),
    fmtLength(envelope.w + 2 * pad),
    fmtLength(envelope.h + 2 * pad),
  ].join(" ");
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="${vb}" ` +
      `width="${fmtLength(envelope.w + 2 * pad)}" ` +
      `height="${fmtLength(envelope.h + 2 * pad)}">`,
    `  <style>${SVG_STYLE}</style>`,
  ];
  for (const s of shapes) {
    if (s.kind === "envelope") {
      lines.push(
        `  <rect class="envelope" x="${fmtLength(s.x)}" y="${fmtLength(s.y)}" ` +
          `width="${fmtLength(s.w)}" height="${fmtLength(s.h)}"/>`,
      );
    } else if (s.kind === "room") {
      lines.push(
        `  <rect class="room" data-id="${s.id}" x="${fmtLength(s.x)}" ` +
          `y="${fmtLength(s.y)}" width="${fmtLength(s.w)}" height="${fmtLength(s.h)}"/>`,
      );
    } else {
      lines.push(
        `  <text class="label" x="${fmtLength(s.x)}" y="${fmtLength(s.y)}">` +
          `${escapeText(s.text)}</text>`,
      );
    }
  }
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}

/** Render a floorplan straight to SVG with the standard half-cell margin. */
export function planSvg(
  plan: FloorplanDoc,
  scale: number = DEFAULT_SCALE,
  labels: boolean = true,
): string {
  return svgFromDrawList(planDrawList(plan, scale, labels), scale * 0.5);
}
