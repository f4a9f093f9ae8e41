/**
 * Minimal deterministic SVG construction: linear/log axis scales, tick
 * generation, and element builders. Pixel coordinates are emitted with a
 * fixed two-decimal precision so identical inputs give byte-identical files.
 */

export interface Scale {
  (value: number): number;
  readonly domain: readonly [number, number];
  readonly range: readonly [number, number];
  readonly kind: "linear" | "log";
  invert(pixel: number): number;
}

export function linearScale(domain: readonly [number, number], range: readonly [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  if (!(span > 0)) throw new Error(`degenerate axis domain [${d0}, ${d1}]`);
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale & {
    domain: readonly [number, number];
    range: readonly [number, number];
    kind: "linear" | "log";
    invert: (pixel: number) => number;
  };
  fn.domain = domain;
  fn.range = range;
  fn.kind = "linear";
  fn.invert = (pixel: number) => d0 + ((pixel - r0) / (r1 - r0)) * span;
  return fn;
}

export function logScale(domain: readonly [number, number], range: readonly [number, number]): Scale {
  const [d0, d1] = domain;
  if (!(d0 > 0 && d1 > d0)) throw new Error(`log axis needs 0 < lo < hi, got [${d0}, ${d1}]`);
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  const fn = ((v: number) => inner(Math.log10(v))) as Scale & {
    domain: readonly [number, number];
    range: readonly [number, number];
    kind: "linear" | "log";
    invert: (pixel: number) => number;
  };
  fn.domain = domain;
  fn.range = range;
  fn.kind = "log";
  fn.invert = (pixel: number) => 10 ** inner.invert(pixel);
  return fn;
}

/** Round-numbered tick positions covering the domain (at most ~7 for linear). */
export function ticks(scale: Scale): number[] {
  const [lo, hi] = scale.domain;
  if (scale.kind === "log") {
    const out: number[] = [];
    for (let e = Math.ceil(Math.log10(lo) - 1e-9); 10 ** e <= hi * (1 + 1e-9); e++) {
      out.push(10 ** e);
    }
    return out.length >= 2 ? out : [lo, hi];
  }
  const rawStep = (hi - lo) / 5;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    const e = Math.floor(Math.log10(magnitude));
    const mantissa = value / 10 ** e;
    const m = mantissa.toPrecision(3).replace(/\.?0+$/, "");
    return `${m}e${e}`;
  }
  return parseFloat(value.toPrecision(6)).toString();
}

export const px = (v: number): string => {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Attrs {
  [name: string]: string | number;
}

function attrText(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${escapeXml(String(v))}"`)
    .join("");
}

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  if (children.length === 0) return `<${tag}${attrText(attrs)}/>`;
  return `<${tag}${attrText(attrs)}>${children.join("")}</${tag}>`;
}

export function textEl(tag: string, attrs: Attrs, text: string): string {
  return `<${tag}${attrText(attrs)}>${escapeXml(text)}</${tag}>`;
}

export function polylinePoints(xs: readonly number[], ys: readonly number[]): string {
  return xs.map((x, i) => `${px(x)},${px(ys[i]!)}`).join(" ");
}

/** A closed band polygon: upper edge left-to-right, then lower edge back. */
export function bandPoints(
  xs: readonly number[],
  upper: readonly number[],
  lower: readonly number[],
): string {
  const forward = xs.map((x, i) => `${px(x)},${px(upper[i]!)}`);
  const back = [...xs].reverse().map((x, i) => `${px(x)},${px(lower[xs.length - 1 - i]!)}`);
  return [...forward, ...back].join(" ");
}
