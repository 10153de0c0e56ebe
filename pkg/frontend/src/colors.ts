/** Color scales. Harm-like values live on a fixed [0, 100] scale (green ->
 * red, more red is worse); influence lives on a fixed diverging [-100, 100]
 * scale where negative (a harmful presence) reads red and positive blue. */

export const HARM_SCALE_MIN_COLOR = "rgb(46,125,50)";
export const HARM_SCALE_MAX_COLOR = "rgb(198,40,40)";

function clamp(x: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, x));
}

function lerp(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

/** h in [0, 100] -> sequential green..red, endpoints exactly the scale colors. */
export function harmColor(h: number): string {
  const t = clamp(h, 0, 100) / 100;
  const r = lerp(46, 198, t);
  const g = lerp(125, 40, t);
  const b = lerp(50, 40, t);
  return `rgb(${r},${g},${b})`;
}

/** Signed intensity in [-1, 1] for a diverging value on [-100, 100]. */
export function divergingIntensity(v: number): number {
  return clamp(v, -100, 100) / 100;
}

/** v in [-100, 100] -> red (negative) .. white (0) .. blue (positive). */
export function influenceColor(v: number): string {
  const t = divergingIntensity(v);
  if (t < 0) {
    const s = -t;
    return `rgb(${lerp(255, 198, s)},${lerp(255, 40, s)},${lerp(255, 40, s)})`;
  }
  const s = t;
  return `rgb(${lerp(255, 21, s)},${lerp(255, 101, s)},${lerp(255, 192, s)})`;
}
