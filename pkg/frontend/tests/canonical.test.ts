import { describe, expect, it } from "vitest";
import {
  canonicalJson,
  formatNumber,
  formatString,
} from "../src/canonical.js";
import { CANONICAL_DOC_PAIRS, NUMBER_PAIRS } from "./frozen.js";

describe("formatNumber", () => {
  it("matches the service's rendering on every frozen pair", () => {
    for (const [value, expected] of NUMBER_PAIRS) {
      expect(formatNumber(value), `value ${value}`).toBe(expected);
    }
  });

  it("collapses integral floats to integers", () => {
    expect(formatNumber(6)).toBe("6");
    expect(formatNumber(-0)).toBe("0");
    expect(formatNumber(2 ** 52)).toBe(String(2 ** 52));
  });

  it("keeps a float marker above the exact-integer range", () => {
    expect(formatNumber(2 ** 53)).toBe("9007199254740992.0");
  });

  it("switches to exponent form exactly where the service does", () => {
    expect(formatNumber(0.0001)).toBe("0.0001");
    expect(formatNumber(0.00001)).toBe("1e-05");
    expect(formatNumber(0.5e15 * 2 + 0.5)).toBe("1000000000000000.5");
    expect(formatNumber(1e16)).toBe("1e+16");
  });

  it("rejects non-finite values", () => {
    expect(() => formatNumber(Infinity)).toThrow(/non-finite/);
    expect(() => formatNumber(NaN)).toThrow(/non-finite/);
  });
});

describe("formatString", () => {
  it("escapes non-ASCII as lowercase \\u sequences", () => {
    expect(formatString("5×5")).toBe('"5\\u00d75"');
    expect(formatString("☃")).toBe('"\\u2603"');
  });

  it("escapes astral code points as surrogate pairs", () => {
    expect(formatString("\u{1f3e0}")).toBe('"\\ud83c\\udfe0"');
  });

  it("uses short escapes for the common control characters", () => {
    expect(formatString('a"b\\c\nd\te')).toBe('"a\\"b\\\\c\\nd\\te"');
    expect(formatString("")).toBe('"\\u0001"');
  });
});

describe("canonicalJson", () => {
  it("reproduces the service bytes for every frozen document", () => {
    for (const [input, expected] of CANONICAL_DOC_PAIRS) {
      expect(canonicalJson(JSON.parse(input)), input).toBe(expected);
    }
  });

  it("sorts keys as strings, so id 10 precedes id 2", () => {
    const out = canonicalJson({ "2": 0, "10": 0 });
    expect(out.indexOf('"10"')).toBeLessThan(out.indexOf('"2"'));
  });

  it("ends with exactly one newline", () => {
    const out = canonicalJson({ a: 1 });
    expect(out.endsWith("}\n")).toBe(true);
    expect(out.endsWith("\n\n")).toBe(false);
  });

  it("renders empty containers inline", () => {
    expect(canonicalJson({})).toBe("{}\n");
    expect(canonicalJson([])).toBe("[]\n");
  });

  it("is stable under key insertion order", () => {
    const a = canonicalJson({ x: 1, y: { b: 2, a: 3 } });
    const b = canonicalJson({ y: { a: 3, b: 2 }, x: 1 });
    expect(a).toBe(b);
  });
});
