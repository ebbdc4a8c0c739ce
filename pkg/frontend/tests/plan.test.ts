import { describe, expect, it } from "vitest";
import type { FloorplanDoc, ResultDoc } from "../src/model.js";
import {
  fmtLength,
  planDrawList,
  planSvg,
  roomLabel,
  svgFromDrawList,
  type LabelShape,
  type RoomShape,
} from "../src/plan.js";
import { GRID2X2_SOLVE_RESPONSE } from "./frozen.js";

const solved = JSON.parse(GRID2X2_SOLVE_RESPONSE) as ResultDoc;
const plan = solved.floorplan!;

describe("planDrawList", () => {
  it("draws the envelope, one rect per room, and one label per room", () => {
    const shapes = planDrawList(plan);
    expect(shapes.filter((s) => s.kind === "envelope")).toHaveLength(1);
    expect(shapes.filter((s) => s.kind === "room")).toHaveLength(4);
    expect(shapes.filter((s) => s.kind === "label")).toHaveLength(4);
  });

  it("scales plan coordinates uniformly with no other transform", () => {
    const scale = 10;
    const rooms = planDrawList(plan, scale).filter(
      (s): s is RoomShape => s.kind === "room",
    );
    for (const r of rooms) {
      const src = plan.rooms.find((p) => p.id === r.id)!;
      expect(r.x).toBe(src.x * scale);
      expect(r.y).toBe(src.y * scale);
      expect(r.w).toBe(src.w * scale);
      expect(r.h).toBe(src.h * scale);
    }
    const envelope = planDrawList(plan, scale)[0]!;
    expect(envelope).toMatchObject({ x: 0, y: 0, w: 100, h: 100 });
  });

  it("labels rooms as 'id (w×h)' in unscaled plan units", () => {
    const labels = planDrawList(plan, 7).filter(
      (s): s is LabelShape => s.kind === "label",
    );
    expect(labels.map((l) => l.text)).toEqual([
      "1 (5×5)",
      "2 (5×5)",
      "3 (5×5)",
      "4 (5×5)",
    ]);
  });

  it("centers each label in its room", () => {
    const labels = planDrawList(plan, 10).filter(
      (s): s is LabelShape => s.kind === "label",
    );
    const first = labels.find((l) => l.id === 4)!;
    expect(first.x).toBe(75);
    expect(first.y).toBe(75);
  });

  it("lists rooms in id order whatever the response order", () => {
    const shuffled: FloorplanDoc = {
      envelope: plan.envelope,
      rooms: [...plan.rooms].reverse(),
    };
    const ids = planDrawList(shuffled)
      .filter((s): s is RoomShape => s.kind === "room")
      .map((s) => s.id);
    expect(ids).toEqual([1, 2, 3, 4]);
  });

  it("can omit labels", () => {
    const shapes = planDrawList(plan, 10, false);
    expect(shapes.some((s) => s.kind === "label")).toBe(false);
  });

  it("rejects non-positive scales", () => {
    expect(() => planDrawList(plan, 0)).toThrow(/positive/);
  });
});

describe("length formatting", () => {
  it("renders integers without a decimal point", () => {
    expect(fmtLength(50)).toBe("50");
    expect(fmtLength(-0)).toBe("0");
  });

  it("renders fractions as plain trimmed decimals, never exponents", () => {
    expect(fmtLength(2.5)).toBe("2.5");
    expect(fmtLength(1 / 3)).toBe("0.333333");
    expect(fmtLength(0.0000001)).toBe("0");
    expect(fmtLength(147.36842105263158)).toBe("147.368421");
  });

  it("builds labels with the same rules", () => {
    expect(roomLabel(3, 2.5, 4)).toBe("3 (2.5×4)");
  });
});

describe("SVG export", () => {
  it("writes exactly the draw-list coordinates into the markup", () => {
    const shapes = planDrawList(plan, 10);
    const svg = svgFromDrawList(shapes, 5);
    for (const s of shapes) {
      if (s.kind === "room") {
        expect(svg).toContain(
          `<rect class="room" data-id="${s.id}" x="${s.x}" y="${s.y}" ` +
            `width="${s.w}" height="${s.h}"/>`,
        );
      }
    }
    expect(svg).toContain('viewBox="-5 -5 110 110"');
  });

  it("matches the on-screen scale end to end", () => {
    const svg = planSvg(plan);
    expect(svg.match(/<rect /g)).toHaveLength(5);
    expect(svg.match(/<text /g)).toHaveLength(4);
    expect(svg).toContain('x="75" y="75">4 (5×5)</text>');
    expect(svg.endsWith("</svg>\n")).toBe(true);
  });

  it("escapes markup characters in label text", () => {
    const svg = svgFromDrawList(
      [
        { kind: "envelope", x: 0, y: 0, w: 10, h: 10 },
        { kind: "label", id: 1, x: 5, y: 5, text: "a<b & c>d" },
      ],
      1,
    );
    expect(svg).toContain(">a&lt;b &amp; c&gt;d</text>");
  });

  it("needs an envelope shape", () => {
    expect(() => svgFromDrawList([], 1)).toThrow(/envelope/);
  });
});
