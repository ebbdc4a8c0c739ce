/**
 * Canonical JSON, matching the service's output byte for byte.
 *
 * Rules: object keys sorted as plain strings, 2-space indent, numbers with
 * an integral value written as integers, everything else in the shortest
 * round-trip form, non-ASCII escaped, trailing newline. The number
 * formatting mirrors the server exactly, including its switchover points
 * between positional and exponent notation, so an exported document diffs
 * clean against one the service wrote.
 */

export type JsonValue =
  | null
  | boolean
  | number
  | string
  | JsonValue[]
  | { [key: string]: JsonValue };

const MAX_SAFE = 2 ** 53;

/** Format one finite number the way the service serializes it. */
export function formatNumber(v: number): string {
  if (!Number.isFinite(v)) {
    throw new Error(`non-finite number in document: ${v}`);
  }
  // Integral values inside the exact-double range collapse to integers.
  if (Number.isInteger(v) && Math.abs(v) < MAX_SAFE) {
    return v === 0 ? "0" : String(v);
  }
  const neg = v < 0 || (v === 0 && 1 / v < 0);
  const s = String(Math.abs(v));
  const m = /^(\d+)(?:\.(\d+))?(?:e([+-]?\d+))?$/.exec(s);
  if (!m) throw new Error(`unexpected number form: ${s}`);
  const intPart = m[1]!;
  const fracPart = m[2] ?? "";
  const expPart = m[3] ? parseInt(m[3], 10) : 0;

  // Normalize to scientific form: digits[0].digits[1..] x 10^sciExp.
  let digits: string;
  let sciExp: number;
  if (intPart === "0") {
    const lead = /^0*/.exec(fracPart)![0].length;
    digits = fracPart.slice(lead);
    sciExp = expPart - 1 - lead;
  } else {
    digits = intPart + fracPart;
    sciExp = intPart.length - 1 + expPart;
  }
  digits = digits.replace(/0+$/, "");
  if (digits === "") return "0"; // only reachable for 0, handled above

  let out: string;
  if (sciExp < -4 || sciExp >= 16) {
    const mantissa =
      digits.length > 1 ? `${digits[0]}.${digits.slice(1)}` : digits;
    const sign = sciExp < 0 ? "-" : "+";
    out = `${mantissa}e${sign}${String(Math.abs(sciExp)).padStart(2, "0")}`;
  } else if (sciExp < 0) {
    out = `0.${"0".repeat(-sciExp - 1)}${digits}`;
  } else if (sciExp >= digits.length - 1) {
    // Integral value too large for the integer path keeps a float marker.
    out = `${digits}${"0".repeat(sciExp - digits.length + 1)}.0`;
  } else {
    out = `${digits.slice(0, sciExp + 1)}.${digits.slice(sciExp + 1)}`;
  }
  return neg ? `-${out}` : out;
}

const ESCAPES: Record<string, string> = {
  '"': '\\"',
  "\\": "\\\\",
  "\b": "\\b",
  "\f": "\\f",
  "\n": "\\n",
  "\r": "\\r",
  "\t": "\\t",
};

/** Escape a string with every non-ASCII code unit as \uXXXX. */
export function formatString(s: string): string {
  let out = '"';
  for (const ch of s) {
    const esc = ESCAPES[ch];
    if (esc !== undefined) {
      out += esc;
      continue;
    }
    const cp = ch.codePointAt(0)!;
    if (cp >= 0x20 && cp < 0x7f) {
      out += ch;
    } else {
      // Astral code points become a surrogate pair of \u escapes.
      for (let i = 0; i < ch.length; i++) {
        out += `\\u${ch.charCodeAt(i).toString(16).padStart(4, "0")}`;
      }
    }
  }
  return out + '"';
}

function serialize(v: JsonValue, indent: string): string {
  if (v === null) return "null";
  if (typeof v === "boolean") return v ? "true" : "false";
  if (typeof v === "number") return formatNumber(v);
  if (typeof v === "string") return formatString(v);
  const inner = indent + "  ";
  if (Array.isArray(v)) {
    if (v.length === 0) return "[]";
    const items = v.map((item) => inner + serialize(item, inner));
    return `[\n${items.join(",\n")}\n${indent}]`;
  }
  const keys = Object.keys(v).sort();
  if (keys.length === 0) return "{}";
  const items = keys.map(
    (k) => `${inner}${formatString(k)}: ${serialize(v[k]!, inner)}`,
  );
  return `{\n${items.join(",\n")}\n${indent}}`;
}

/** Serialize a document in canonical form, trailing newline included. */
export function canonicalJson(doc: JsonValue): string {
  return serialize(doc, "") + "\n";
}
