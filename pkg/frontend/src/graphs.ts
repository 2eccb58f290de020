/** Boards the picker offers: the demo square and unit cubes up to Q_6.
 *
 * Cube documents mirror the server's generator exactly: vertices ordered by
 * (level, label text), labels are sorted 1-based coordinates (commas once
 * the dimension hits 10), edges sorted by endpoint indices, start at the
 * empty set.
 */

import type { GraphDoc } from "./api.js";

export const MAX_PICKER_DIMENSION = 6;

export function demoGraphDoc(): GraphDoc {
  return {
    name: "demo",
    vertices: ["v1", "v2", "v3", "v4"],
    edges: [
      { u: 0, v: 1, w: 2 },
      { u: 0, v: 3, w: 5 },
      { u: 1, v: 2, w: 3 },
      { u: 1, v: 3, w: 2 },
      { u: 2, v: 3, w: 4 },
    ],
    start: 0,
  };
}

export function cubeLabel(mask: number, n: number): string {
  const coords: string[] = [];
  for (let i = 0; i < n; i++) {
    if (mask >> i & 1) coords.push(String(i + 1));
  }
  return coords.join(n >= 10 ? "," : "");
}

function popcount(mask: number): number {
  let count = 0;
  for (let m = mask; m; m >>= 1) count += m & 1;
  return count;
}

export function cubeGraphDoc(n: number): GraphDoc {
  const masks: number[] = [];
  for (let mask = 0; mask < 1 << n; mask++) masks.push(mask);
  masks.sort((a, b) => {
    const la = popcount(a);
    const lb = popcount(b);
    if (la !== lb) return la - lb;
    const sa = cubeLabel(a, n);
    const sb = cubeLabel(b, n);
    return sa < sb ? -1 : sa > sb ? 1 : 0;
  });
  const index = new Map<number, number>();
  masks.forEach((mask, i) => index.set(mask, i));

  const edges: { u: number; v: number; w: number }[] = [];
  for (const mask of masks) {
    for (let bit = 0; bit < n; bit++) {
      const other = mask ^ (1 << bit);
      const u = index.get(mask)!;
      const v = index.get(other)!;
      if (u < v) edges.push({ u, v, w: 1 });
    }
  }
  edges.sort((a, b) => a.u - b.u || a.v - b.v);

  return {
    name: `Q${n}`,
    vertices: masks.map((mask) => cubeLabel(mask, n)),
    edges,
    start: index.get(0)!,
  };
}

export interface BoardChoice {
  key: string;
  title: string;
  doc: () => GraphDoc;
}

export function boardChoices(): BoardChoice[] {
  const choices: BoardChoice[] = [
    { key: "demo", title: "demo square", doc: demoGraphDoc },
  ];
  for (let n = 1; n <= MAX_PICKER_DIMENSION; n++) {
    choices.push({ key: `q${n}`, title: `Q${n} unit cube`, doc: () => cubeGraphDoc(n) });
  }
  return choices;
}
