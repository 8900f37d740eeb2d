/** Label search over the loaded graph. */

import type { Graph } from './graph.js';
import type { GraphNode } from './types.js';
import { compareLabels, normalizeLabel } from './normalize.js';

/**
 * Rank nodes whose folded label contains the folded query.
 *
 * Prefix matches come first, then mid-label matches; each block is
 * ordered by label. An empty or whitespace-only query matches nothing.
 */
export function search(query: string, graph: Graph): GraphNode[] {
  const needle = normalizeLabel(query);
  if (needle === '') return [];

  const prefixed: GraphNode[] = [];
  const contained: GraphNode[] = [];
  for (const node of graph.nodes) {
    const folded = normalizeLabel(node.label);
    if (!folded.includes(needle)) continue;
    if (folded.startsWith(needle)) {
      prefixed.push(node);
    } else {
      contained.push(node);
    }
  }

  const byLabel = (a: GraphNode, b: GraphNode): number =>
    compareLabels(a.label, b.label) || (a.id < b.id ? -1 : a.id > b.id ? 1 : 0);
  prefixed.sort(byLabel);
  contained.sort(byLabel);
  return [...prefixed, ...contained];
}
