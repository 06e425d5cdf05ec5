/** Diverging color scale, symmetric about zero so sign structure is faithful. */

type Rgb = [number, number, number];

const NEGATIVE: Rgb = [33, 102, 172]; // deep blue
const MIDDLE: Rgb = [247, 247, 247]; // near white
const POSITIVE: Rgb = [178, 24, 43]; // deep red

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [0, 1, 2].map((i) => Math.round(a[i] + (b[i] - a[i]) * t)) as Rgb;
}

/** Map t in [-1, 1] to an rgb() string; t = 0 is the neutral midpoint. */
export function divergingColor(t: number): string {
  const c = Math.max(-1, Math.min(1, t));
  const rgb = c < 0 ? lerp(MIDDLE, NEGATIVE, -c) : lerp(MIDDLE, POSITIVE, c);
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

/** Symmetric normalization limit: the largest magnitude in the data. */
export function symmetricLimit(values: number[][]): number {
  let m = 0;
  for (const row of values) {
    for (const v of row) m = Math.max(m, Math.abs(v));
  }
  return m;
}
