/** Vertex placement for the board drawing.
 *
 * Boards that come with level info (cubes) get one horizontal row per
 * level, level 0 at the bottom, vertices spread across the row in the
 * order the server lists them.  Everything else sits on a circle.
 */

import type { StateDoc } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export function layoutPositions(
  state: StateDoc,
  width: number,
  height: number,
  pad = 48,
): Map<string, Point> {
  const positions = new Map<string, Point>();
  const levels = state.levels;

  if (levels) {
    const maxLevel = Math.max(0, ...Object.values(levels));
    const rows: string[][] = Array.from({ length: maxLevel + 1 }, () => []);
    for (const v of state.vertices) rows[levels[v] ?? 0].push(v);
    for (let level = 0; level <= maxLevel; level++) {
      const y = maxLevel === 0
        ? height / 2
        : height - pad - (level * (height - 2 * pad)) / maxLevel;
      const row = rows[level];
      row.forEach((v, i) => {
        positions.set(v, { x: ((i + 1) * width) / (row.length + 1), y });
      });
    }
    return positions;
  }

  const n = state.vertices.length;
  const radius = Math.min(width, height) / 2 - pad;
  state.vertices.forEach((v, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    positions.set(v, {
      x: width / 2 + radius * Math.cos(angle),
      y: height / 2 + radius * Math.sin(angle),
    });
  });
  return positions;
}
