/**
 * Flag report export and persistence.
 *
 * Flags live in browser storage only; the pipeline output is never
 * written to. The exported report is a JSON list with one entry per
 * flagged edge, labels included, for follow-up outside the client.
 */

import { findEdge, type Graph } from './graph.js';
import type { ViewState } from './state.js';
import { EDGE_TYPES, type EdgeRef, type EdgeType } from './types.js';

export const FLAGS_STORAGE_KEY = 'concept-navigator.flags';

export interface FlagReportEntry {
  readonly src: string;
  readonly src_label: string;
  readonly dst: string;
  readonly dst_label: string;
  readonly type: EdgeType;
  readonly prov: string;
}

function reportEntries(state: ViewState, graph: Graph): FlagReportEntry[] {
  const entries: FlagReportEntry[] = [];
  for (const ref of state.flags.values()) {
    const edge = findEdge(graph, ref);
    const src = graph.byId.get(ref.src);
    const dst = graph.byId.get(ref.dst);
    if (edge === undefined || src === undefined || dst === undefined) continue;
    entries.push({
      src: ref.src,
      src_label: src.label,
      dst: ref.dst,
      dst_label: dst.label,
      type: ref.type,
      prov: edge.prov,
    });
  }
  entries.sort((a, b) => {
    if (a.src !== b.src) return a.src < b.src ? -1 : 1;
    if (a.dst !== b.dst) return a.dst < b.dst ? -1 : 1;
    return a.type < b.type ? -1 : a.type > b.type ? 1 : 0;
  });
  return entries;
}

/** Serialize the flagged edges as a downloadable JSON report. */
export function exportFlags(state: ViewState, graph: Graph): string {
  return `${JSON.stringify(reportEntries(state, graph), null, 2)}\n`;
}

/** Anything exposing getItem/setItem; window.localStorage qualifies. */
export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export function saveFlags(store: KeyValueStore, state: ViewState): void {
  const refs = [...state.flags.values()].map((ref) => ({
    src: ref.src,
    dst: ref.dst,
    type: ref.type,
  }));
  refs.sort((a, b) => {
    if (a.src !== b.src) return a.src < b.src ? -1 : 1;
    if (a.dst !== b.dst) return a.dst < b.dst ? -1 : 1;
    return a.type < b.type ? -1 : a.type > b.type ? 1 : 0;
  });
  store.setItem(FLAGS_STORAGE_KEY, JSON.stringify(refs));
}

/**
 * Read persisted flags, keeping only well-formed refs that match an
 * edge in the current graph. Corrupt or stale payloads are dropped
 * silently; startup must not fail over a bad cache.
 */
export function loadFlags(store: KeyValueStore, graph: Graph): EdgeRef[] {
  const raw = store.getItem(FLAGS_STORAGE_KEY);
  if (raw === null) return [];
  let decoded: unknown;
  try {
    decoded = JSON.parse(raw);
  } catch {
    return [];
  }
  if (!Array.isArray(decoded)) return [];
  const refs: EdgeRef[] = [];
  for (const item of decoded) {
    if (typeof item !== 'object' || item === null) continue;
    const { src, dst, type } = item as Record<string, unknown>;
    if (typeof src !== 'string' || typeof dst !== 'string' || typeof type !== 'string') {
      continue;
    }
    if (!(EDGE_TYPES as readonly string[]).includes(type)) continue;
    const ref: EdgeRef = { src, dst, type: type as EdgeType };
    if (findEdge(graph, ref) === undefined) continue;
    refs.push(ref);
  }
  return refs;
}
