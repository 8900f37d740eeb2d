/**
 * Shapes of the graph document served at /graph.json.
 *
 * The pipeline exports nodes (concepts, spatial instances, temporal terms)
 * and typed directed edges; this client treats the document as read-only.
 */

export const EDGE_TYPES = [
  'subclass_generic',
  'associated',
  'used_for',
  'instance_of',
  'spatial_within',
  'spatial_near',
] as const;

export type EdgeType = (typeof EDGE_TYPES)[number];

export const NODE_KINDS = ['concept', 'instance', 'temporal'] as const;

export type NodeKind = (typeof NODE_KINDS)[number];

/** Gazetteer row attached to resolved spatial instances. */
export interface PlaceEntry {
  readonly name: string;
  readonly admin: string;
  readonly class: string;
  readonly lon: number;
  readonly lat: number;
}

export interface GraphNode {
  readonly id: string;
  readonly label: string;
  readonly kind: NodeKind;
  readonly origin: string;
  readonly docs: readonly string[];
  readonly note?: string;
  readonly entry?: PlaceEntry;
}

export interface GraphEdge {
  readonly src: string;
  readonly dst: string;
  readonly type: EdgeType;
  readonly prov: string;
}

export interface GraphDocument {
  readonly nodes: readonly GraphNode[];
  readonly edges: readonly GraphEdge[];
}

/** Identifies one edge; the triple is unique within a document. */
export interface EdgeRef {
  readonly src: string;
  readonly dst: string;
  readonly type: EdgeType;
}
