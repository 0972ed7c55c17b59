// Radial focus+context layout: the focus sits at the origin, each hop ring
// is compressed hyperbolically (R * tanh(k/K), so far context never leaves
// the viewport), and every subtree gets an angular sector proportional to
// its leaf count, subdivided recursively. Pure and deterministic: same
// subgraph in, same positions out.

import type { NavigateResponse, SubgraphNode } from "./api.js";

const TREE_ARCS = new Set(["hierarchy", "implicitDescriptorOf"]);
const FULL_CIRCLE = Math.PI * 2;

export interface LayoutNode {
  nodeId: string;
  displayLabel: string;
  fullLabel: string;
  kind: string;
  ring: number;
  radius: number;
  angle: number;
  sectorStart: number;
  sectorEnd: number;
}

export interface LayoutOptions {
  viewportRadius: number;
  hopBudget: number;
}

function truncate(label: string, ring: number): string {
  const budget = Math.max(26 - 5 * ring, 8);
  return label.length > budget ? label.slice(0, budget - 1) + "…" : label;
}

interface TreeIndex {
  childrenOf: Map<string, string[]>;
  orphans: string[];
}

// Parent of a node = its tree neighbor one ring closer to the focus
// (smallest id wins when several qualify, so the layout stays stable).
function buildTree(subgraph: NavigateResponse): TreeIndex {
  const ringOf = new Map<string, number>();
  for (const node of subgraph.nodes) {
    ringOf.set(node.id, node.ring);
  }
  const neighbors = new Map<string, string[]>();
  const link = (a: string, b: string) => {
    if (!neighbors.has(a)) neighbors.set(a, []);
    neighbors.get(a)!.push(b);
  };
  for (const arc of subgraph.arcs) {
    if (TREE_ARCS.has(arc.kind)) {
      link(arc.from, arc.to);
      link(arc.to, arc.from);
    }
  }
  const childrenOf = new Map<string, string[]>();
  const orphans: string[] = [];
  const sorted = [...subgraph.nodes].sort((a, b) => a.id.localeCompare(b.id));
  for (const node of sorted) {
    if (node.id === subgraph.focus) continue;
    const candidates = (neighbors.get(node.id) ?? [])
      .filter((other) => ringOf.get(other) === node.ring - 1)
      .sort();
    const parent = candidates[0];
    if (parent === undefined) {
      orphans.push(node.id);
      continue;
    }
    if (!childrenOf.has(parent)) childrenOf.set(parent, []);
    childrenOf.get(parent)!.push(node.id);
  }
  // Unreachable leftovers hang off the focus so nothing vanishes.
  for (const orphan of orphans) {
    if (!childrenOf.has(subgraph.focus)) childrenOf.set(subgraph.focus, []);
    childrenOf.get(subgraph.focus)!.push(orphan);
  }
  for (const children of childrenOf.values()) children.sort();
  return { childrenOf, orphans };
}

export function layoutSubgraph(
  subgraph: NavigateResponse,
  options: LayoutOptions,
): LayoutNode[] {
  const { viewportRadius, hopBudget } = options;
  if (subgraph.nodes.length === 0) return [];
  const byId = new Map<string, SubgraphNode>();
  for (const node of subgraph.nodes) byId.set(node.id, node);
  const { childrenOf } = buildTree(subgraph);

  const leafCount = new Map<string, number>();
  const countLeaves = (id: string): number => {
    const cached = leafCount.get(id);
    if (cached !== undefined) return cached;
    const children = childrenOf.get(id) ?? [];
    const total = children.length === 0
      ? 1
      : children.reduce((sum, child) => sum + countLeaves(child), 0);
    leafCount.set(id, total);
    return total;
  };
  countLeaves(subgraph.focus);

  const out: LayoutNode[] = [];
  const place = (id: string, sectorStart: number, sectorEnd: number) => {
    const node = byId.get(id);
    if (node === undefined) return;
    const ring = node.ring;
    const radius = ring === 0 ? 0 : viewportRadius * Math.tanh(ring / hopBudget);
    out.push({
      nodeId: id,
      displayLabel: truncate(node.label, ring),
      fullLabel: node.label,
      kind: node.kind,
      ring,
      radius,
      angle: ring === 0 ? 0 : (sectorStart + sectorEnd) / 2,
      sectorStart,
      sectorEnd,
    });
    const children = childrenOf.get(id) ?? [];
    const total = children.reduce((sum, child) => sum + countLeaves(child), 0);
    if (total === 0) return;
    let cursor = sectorStart;
    for (const child of children) {
      const width = ((sectorEnd - sectorStart) * countLeaves(child)) / total;
      place(child, cursor, cursor + width);
      cursor += width;
    }
  };
  place(subgraph.focus, 0, FULL_CIRCLE);
  return out;
}

export function toCartesian(node: LayoutNode): { x: number; y: number } {
  return {
    x: node.radius * Math.cos(node.angle),
    y: node.radius * Math.sin(node.angle),
  };
}
