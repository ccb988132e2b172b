// Seeded force layout: a fixed number of spring/repulsion iterations
// driven by a deterministic PRNG, so the same graph renders to the same
// pixel positions every time.

export type LayoutNode = { id: string; x: number; y: number };
export type LayoutEdge = { source: string; target: string };

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
  ids: string[],
  edges: LayoutEdge[],
  width: number,
  height: number,
  seed = 42,
  iterations = 300,
): Map<string, LayoutNode> {
  const rand = mulberry32(seed);
  const nodes = ids.map((id) => ({
    id,
    x: width * (0.2 + 0.6 * rand()),
    y: height * (0.2 + 0.6 * rand()),
    dx: 0,
    dy: 0,
  }));
  const index = new Map(nodes.map((n, i) => [n.id, i]));
  const springs = edges
    .filter((e) => index.has(e.source) && index.has(e.target))
    .map((e) => [index.get(e.source)!, index.get(e.target)!] as const);

  const area = width * height;
  const ideal = Math.sqrt(area / Math.max(nodes.length, 1)) * 0.9;
  for (let step = 0; step < iterations; step++) {
    const temperature = 0.1 * Math.min(width, height) * (1 - step / iterations);
    for (const n of nodes) {
      n.dx = 0;
      n.dy = 0;
    }
    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        const a = nodes[i];
        const b = nodes[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          // deterministic nudge for exact overlaps
          dx = 0.01 * (i - j);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const force = (ideal * ideal) / dist;
        a.dx += (dx / dist) * force;
        a.dy += (dy / dist) * force;
        b.dx -= (dx / dist) * force;
        b.dy -= (dy / dist) * force;
      }
    }
    for (const [i, j] of springs) {
      const a = nodes[i];
      const b = nodes[j];
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (dist * dist) / ideal;
      a.dx -= (dx / dist) * force;
      a.dy -= (dy / dist) * force;
      b.dx += (dx / dist) * force;
      b.dy += (dy / dist) * force;
    }
    for (const n of nodes) {
      const len = Math.max(Math.hypot(n.dx, n.dy), 1e-6);
      const gain = Math.min(len, temperature);
      n.x += (n.dx / len) * gain;
      n.y += (n.dy / len) * gain;
      n.x = Math.min(width - 30, Math.max(30, n.x));
      n.y = Math.min(height - 30, Math.max(30, n.y));
    }
  }
  return new Map(nodes.map((n) => [n.id, { id: n.id, x: n.x, y: n.y }]));
}
