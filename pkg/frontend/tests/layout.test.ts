import { describe, expect, it } from "vitest";

import type { StateDoc } from "../src/api.js";
import { layoutPositions } from "../src/layout.js";

function cubeState(): StateDoc {
  return {
    vertices: ["", "1", "2", "3", "12", "13", "23", "123"],
    edges: [],
    position: "",
    moveCount: 0,
    toMove: "P1",
    terminal: false,
    levels: { "": 0, "1": 1, "2": 1, "3": 1, "12": 2, "13": 2, "23": 2, "123": 3 },
  };
}

describe("level layout", () => {
  it("puts each level on its own row, level 0 at the bottom", () => {
    const pos = layoutPositions(cubeState(), 640, 480);
    expect(pos.size).toBe(8);
    const ys = [pos.get("")!.y, pos.get("1")!.y, pos.get("12")!.y, pos.get("123")!.y];
    // SVG y grows downward, so higher levels have smaller y
    expect(ys[0]).toBeGreaterThan(ys[1]);
    expect(ys[1]).toBeGreaterThan(ys[2]);
    expect(ys[2]).toBeGreaterThan(ys[3]);
    expect(pos.get("1")!.y).toBe(pos.get("2")!.y);
    expect(pos.get("1")!.y).toBe(pos.get("3")!.y);
  });

  it("spreads a row in listed order", () => {
    const pos = layoutPositions(cubeState(), 640, 480);
    expect(pos.get("1")!.x).toBeLessThan(pos.get("2")!.x);
    expect(pos.get("2")!.x).toBeLessThan(pos.get("3")!.x);
  });
});

describe("circle layout", () => {
  it("places boards without level info on a circle", () => {
    const state: StateDoc = {
      vertices: ["v1", "v2", "v3", "v4"],
      edges: [],
      position: "v1",
      moveCount: 0,
      toMove: "P1",
      terminal: false,
    };
    const pos = layoutPositions(state, 640, 480);
    expect(pos.size).toBe(4);
    const points = [...pos.values()];
    for (const p of points) {
      const dx = p.x - 320;
      const dy = p.y - 240;
      expect(Math.hypot(dx, dy)).toBeCloseTo(192, 6);
    }
    const distinct = new Set(points.map((p) => `${p.x.toFixed(3)},${p.y.toFixed(3)}`));
    expect(distinct.size).toBe(4);
  });
});
