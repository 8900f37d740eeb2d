/** Neighborhood expansion grouped by relation. */

import type { Graph } from './graph.js';
import type { EdgeType, GraphEdge, GraphNode } from './types.js';
import { compareLabels } from './normalize.js';

export const RELATION_GROUPS = [
  'generic',
  'associated',
  'used_for',
  'instance_of',
  'spatial',
] as const;

export type RelationGroup = (typeof RELATION_GROUPS)[number];

export const GROUP_FOR_TYPE: Record<EdgeType, RelationGroup> = {
  subclass_generic: 'generic',
  associated: 'associated',
  used_for: 'used_for',
  instance_of: 'instance_of',
  spatial_within: 'spatial',
  spatial_near: 'spatial',
};

// These relations carry no direction in the source vocabularies, so the
// expansion reports them identically from either endpoint.
const SYMMETRIC: ReadonlySet<EdgeType> = new Set(['associated', 'spatial_near']);

/** 'out' when the expanded node is the edge source, 'both' for symmetric types. */
export type Direction = 'out' | 'in' | 'both';

export interface NeighborEntry {
  readonly node: GraphNode;
  readonly edge: GraphEdge;
  readonly direction: Direction;
}

export interface NeighborGroup {
  readonly group: RelationGroup;
  readonly entries: readonly NeighborEntry[];
}

export type ExpandResult =
  | { readonly kind: 'ok'; readonly node: GraphNode; readonly groups: readonly NeighborGroup[] }
  | { readonly kind: 'not_found'; readonly id: string };

/**
 * Collect the neighbors of `id` reachable over edge types in `filter`,
 * grouped by relation and ordered by neighbor label inside each group.
 * Groups that end up empty are omitted; an unknown id yields the
 * not_found variant instead of throwing.
 */
export function expand(
  id: string,
  graph: Graph,
  filter: ReadonlySet<EdgeType>
): ExpandResult {
  const node = graph.byId.get(id);
  if (node === undefined) return { kind: 'not_found', id };

  const collected = new Map<RelationGroup, NeighborEntry[]>();
  for (const { edge, other } of graph.incident.get(id) ?? []) {
    if (!filter.has(edge.type)) continue;
    const neighbor = graph.byId.get(other);
    if (neighbor === undefined) continue;
    const direction: Direction = SYMMETRIC.has(edge.type)
      ? 'both'
      : edge.src === id
        ? 'out'
        : 'in';
    const group = GROUP_FOR_TYPE[edge.type];
    const entries = collected.get(group);
    const entry: NeighborEntry = { node: neighbor, edge, direction };
    if (entries === undefined) {
      collected.set(group, [entry]);
    } else {
      entries.push(entry);
    }
  }

  const byEntry = (a: NeighborEntry, b: NeighborEntry): number =>
    compareLabels(a.node.label, b.node.label) ||
    (a.edge.type < b.edge.type ? -1 : a.edge.type > b.edge.type ? 1 : 0) ||
    (a.direction === b.direction ? 0 : a.direction === 'out' ? -1 : 1);
  const groups: NeighborGroup[] = [];
  for (const group of RELATION_GROUPS) {
    const entries = collected.get(group);
    if (entries === undefined) continue;
    entries.sort(byEntry);
    groups.push({ group, entries });
  }
  return { kind: 'ok', node, groups };
}

/** Neighbor ids an expansion of `id` would reveal under `filter`. */
export function expandedIds(
  id: string,
  graph: Graph,
  filter: ReadonlySet<EdgeType>
): string[] {
  const result = expand(id, graph, filter);
  if (result.kind === 'not_found') return [];
  const seen = new Set<string>();
  for (const group of result.groups) {
    for (const entry of group.entries) seen.add(entry.node.id);
  }
  return [...seen];
}
