/**
 * View state and its transitions.
 *
 * Every transition returns a fresh state and leaves the graph untouched.
 * Two invariants are maintained throughout: visibleNodes contains the
 * focused node whenever one is set, and flags only ever reference edges
 * present in the graph.
 */

import { findEdge, type Graph, edgeKey } from './graph.js';
import { expandedIds } from './expand.js';
import { EDGE_TYPES, type EdgeRef, type EdgeType } from './types.js';

interface Expansion {
  readonly node: string;
  readonly added: readonly string[];
}

export interface ViewState {
  readonly focus: string | null;
  readonly visibleNodes: ReadonlySet<string>;
  readonly relationFilter: ReadonlySet<EdgeType>;
  readonly flags: ReadonlyMap<string, EdgeRef>;
  // Stack of live expansions; collapse pops the matching record so the
  // visible set returns to what it was before that expansion.
  readonly expansions: readonly Expansion[];
}

export function initialState(): ViewState {
  return {
    focus: null,
    visibleNodes: new Set(),
    relationFilter: new Set(EDGE_TYPES),
    flags: new Map(),
    expansions: [],
  };
}

/** Focus a node, revealing it. Unknown ids leave the state unchanged. */
export function focusNode(state: ViewState, graph: Graph, id: string): ViewState {
  if (!graph.byId.has(id)) return state;
  if (state.focus === id && state.visibleNodes.has(id)) return state;
  const visibleNodes = new Set(state.visibleNodes);
  visibleNodes.add(id);
  return { ...state, focus: id, visibleNodes };
}

/**
 * Reveal the neighbors of `id` permitted by the current relation filter.
 * The ids actually added are recorded so collapseNode can undo exactly
 * this expansion.
 */
export function expandNode(state: ViewState, graph: Graph, id: string): ViewState {
  if (!graph.byId.has(id)) return state;
  const added: string[] = [];
  const visibleNodes = new Set(state.visibleNodes);
  if (!visibleNodes.has(id)) {
    visibleNodes.add(id);
    added.push(id);
  }
  for (const neighbor of expandedIds(id, graph, state.relationFilter).sort()) {
    if (visibleNodes.has(neighbor)) continue;
    visibleNodes.add(neighbor);
    added.push(neighbor);
  }
  const expansions = [...state.expansions, { node: id, added }];
  return { ...state, visibleNodes, expansions };
}

/**
 * Undo the most recent expansion of `id`. Nodes that expansion added are
 * hidden again, except the current focus, which always stays visible.
 */
export function collapseNode(state: ViewState, id: string): ViewState {
  let index = -1;
  for (let i = state.expansions.length - 1; i >= 0; i--) {
    const expansion = state.expansions[i];
    if (expansion !== undefined && expansion.node === id) {
      index = i;
      break;
    }
  }
  if (index < 0) return state;
  const record = state.expansions[index];
  if (record === undefined) return state;
  const visibleNodes = new Set(state.visibleNodes);
  for (const added of record.added) {
    if (added !== state.focus) visibleNodes.delete(added);
  }
  const expansions = state.expansions.filter((_, i) => i !== index);
  return { ...state, visibleNodes, expansions };
}

/** True when `id` has an expansion that collapseNode could undo. */
export function hasExpansion(state: ViewState, id: string): boolean {
  return state.expansions.some((expansion) => expansion.node === id);
}

/** Toggle one relation type in the filter. */
export function toggleRelation(state: ViewState, type: EdgeType): ViewState {
  const relationFilter = new Set(state.relationFilter);
  if (relationFilter.has(type)) {
    relationFilter.delete(type);
  } else {
    relationFilter.add(type);
  }
  return { ...state, relationFilter };
}

/** Toggle a suspect mark on an edge; refs to absent edges are ignored. */
export function toggleFlag(state: ViewState, graph: Graph, ref: EdgeRef): ViewState {
  if (findEdge(graph, ref) === undefined) return state;
  const key = edgeKey(ref);
  const flags = new Map(state.flags);
  if (flags.has(key)) {
    flags.delete(key);
  } else {
    flags.set(key, { src: ref.src, dst: ref.dst, type: ref.type });
  }
  return { ...state, flags };
}

export function isFlagged(state: ViewState, ref: EdgeRef): boolean {
  return state.flags.has(edgeKey(ref));
}

/** Replace all flags with `refs`, dropping any that match no edge. */
export function withFlags(
  state: ViewState,
  graph: Graph,
  refs: readonly EdgeRef[]
): ViewState {
  const flags = new Map<string, EdgeRef>();
  for (const ref of refs) {
    if (findEdge(graph, ref) === undefined) continue;
    flags.set(edgeKey(ref), { src: ref.src, dst: ref.dst, type: ref.type });
  }
  return { ...state, flags };
}
