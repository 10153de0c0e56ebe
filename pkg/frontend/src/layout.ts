/** Deterministic force-directed layout: seeded initial positions, a fixed
 * number of repulsion/spring/centering iterations, no randomness afterwards,
 * so the same graph and seed always render identically. */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  seed: number;
  width: number;
  height: number;
  iterations?: number;
}

/** mulberry32: tiny deterministic PRNG, good enough for jittering layouts. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  nodeCount: number,
  edges: [number, number][],
  options: LayoutOptions,
): Point[] {
  const { seed, width, height } = options;
  const iterations = options.iterations ?? 250;
  const rng = mulberry32(seed);
  const positions: Point[] = [];
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.35;
  for (let i = 0; i < nodeCount; i++) {
    const angle = (2 * Math.PI * i) / Math.max(1, nodeCount) + rng() * 0.5;
    const r = radius * (0.6 + 0.4 * rng());
    positions.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  if (nodeCount <= 1) return positions;

  const k = Math.sqrt((width * height) / nodeCount) * 0.5;
  let temperature = Math.min(width, height) * 0.1;
  const cool = 0.97;

  for (let step = 0; step < iterations; step++) {
    const dx = new Array<number>(nodeCount).fill(0);
    const dy = new Array<number>(nodeCount).fill(0);
    for (let i = 0; i < nodeCount; i++) {
      for (let j = i + 1; j < nodeCount; j++) {
        const ax = positions[i]!.x - positions[j]!.x;
        const ay = positions[i]!.y - positions[j]!.y;
        const d2 = Math.max(ax * ax + ay * ay, 0.01);
        const f = (k * k) / d2;
        dx[i]! += ax * f;
        dy[i]! += ay * f;
        dx[j]! -= ax * f;
        dy[j]! -= ay * f;
      }
    }
    for (const [u, v] of edges) {
      const ax = positions[u]!.x - positions[v]!.x;
      const ay = positions[u]!.y - positions[v]!.y;
      const d = Math.sqrt(Math.max(ax * ax + ay * ay, 0.01));
      const f = (d * d) / k / d;
      dx[u]! -= ax * f;
      dy[u]! -= ay * f;
      dx[v]! += ax * f;
      dy[v]! += ay * f;
    }
    for (let i = 0; i < nodeCount; i++) {
      // gentle pull to the centre keeps disconnected pieces on screen
      dx[i]! += (cx - positions[i]!.x) * 0.02;
      dy[i]! += (cy - positions[i]!.y) * 0.02;
      const len = Math.sqrt(dx[i]! * dx[i]! + dy[i]! * dy[i]!);
      if (len > 0) {
        const capped = Math.min(len, temperature);
        positions[i]!.x += (dx[i]! / len) * capped;
        positions[i]!.y += (dy[i]! / len) * capped;
      }
      positions[i]!.x = Math.min(width - 20, Math.max(20, positions[i]!.x));
      positions[i]!.y = Math.min(height - 20, Math.max(20, positions[i]!.y));
    }
    temperature *= cool;
  }
  return positions;
}
