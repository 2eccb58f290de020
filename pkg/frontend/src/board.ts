/** SVG board drawing.
 *
 * The drawing is rebuilt from scratch on every call, always from the last
 * state the server sent; nothing here keeps game state of its own.  Edges
 * at weight 0 are simply not drawn.  Edges incident to the piece carry the
 * "incident" class, which is exactly the set of legal destinations.
 */

import type { StateDoc } from "./api.js";
import { layoutPositions } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardOptions {
  width?: number;
  height?: number;
  lastEdge?: [string, string] | null;
  bestEdge?: [string, string] | null;
  onEdgeClick?: (u: string, v: string, w: number) => void;
}

export function displayLabel(label: string): string {
  return label === "" ? "∅" : label;
}

export function edgeKey(u: string, v: string): string {
  return u <= v ? `${u}|${v}` : `${v}|${u}`;
}

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function renderBoard(svg: SVGSVGElement, state: StateDoc, opts: BoardOptions = {}): void {
  const width = opts.width ?? 640;
  const height = opts.height ?? 480;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const positions = layoutPositions(state, width, height);
  const last = opts.lastEdge ? edgeKey(opts.lastEdge[0], opts.lastEdge[1]) : null;
  const best = opts.bestEdge ? edgeKey(opts.bestEdge[0], opts.bestEdge[1]) : null;

  for (const edge of state.edges) {
    if (edge.w === 0) continue;
    const a = positions.get(edge.u);
    const b = positions.get(edge.v);
    if (!a || !b) continue;
    const key = edgeKey(edge.u, edge.v);
    const incident = edge.u === state.position || edge.v === state.position;
    let cls = "edge";
    if (incident) cls += " incident";
    if (key === last) cls += " last";
    if (key === best) cls += " best";

    const group = el("g", { class: cls, "data-edge": key, "data-w": String(edge.w) });
    group.appendChild(el("line", {
      x1: String(a.x), y1: String(a.y),
      x2: String(b.x), y2: String(b.y),
      "stroke-width": String(1.5 + 0.7 * edge.w),
    }));
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    group.appendChild(el("circle", { class: "wpad", cx: String(mx), cy: String(my), r: "10" }));
    const weight = el("text", {
      class: "weight", x: String(mx), y: String(my),
      "text-anchor": "middle", "dominant-baseline": "central",
    });
    weight.textContent = String(edge.w);
    group.appendChild(weight);
    if (opts.onEdgeClick) {
      group.addEventListener("click", () => opts.onEdgeClick!(edge.u, edge.v, edge.w));
    }
    svg.appendChild(group);
  }

  for (const vertex of state.vertices) {
    const p = positions.get(vertex)!;
    const current = vertex === state.position;
    const group = el("g", {
      class: current ? "vertex current" : "vertex",
      "data-vertex": vertex,
    });
    group.appendChild(el("circle", { cx: String(p.x), cy: String(p.y), r: "16" }));
    const label = el("text", {
      x: String(p.x), y: String(p.y),
      "text-anchor": "middle", "dominant-baseline": "central",
    });
    label.textContent = displayLabel(vertex);
    group.appendChild(label);
    if (current) {
      const piece = el("text", {
        class: "piece", x: String(p.x), y: String(p.y - 26),
        "text-anchor": "middle",
      });
      piece.textContent = "Δ";
      group.appendChild(piece);
    }
    svg.appendChild(group);
  }
}
