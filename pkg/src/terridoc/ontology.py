"""Ontology assembly from the term graph.

Four passes: classify each node as concept or spatial instance, retype
the thesaurus edges across that split, inject links mined from free
text, and (optionally) derive containment/proximity relations from
gazetteer geometry. Every edge keeps a provenance token: thesaurus,
gazetteer, text:<notice id>, or geometry.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from .gazetteer import Gazetteer, GazetteerEntry, MATCHED, distance_km
from .graph import ASSOCIATED, GENERIC, TerridocGraph, slugify
from .patterns import ExtractionCandidate
from .thesaurus import normalize_label

logger = logging.getLogger(__name__)

ROOT_LABEL = "Entité spatiale"

SUBCLASS_GENERIC = "subclass_generic"
INSTANCE_OF = "instance_of"
USED_FOR = "used_for"
SPATIAL_WITHIN = "spatial_within"
SPATIAL_NEAR = "spatial_near"
EDGE_TYPES = frozenset(
    {SUBCLASS_GENERIC, ASSOCIATED, USED_FOR, INSTANCE_OF, SPATIAL_WITHIN, SPATIAL_NEAR}
)

PROV_THESAURUS = "thesaurus"
PROV_GAZETTEER = "gazetteer"
PROV_GEOMETRY = "geometry"

ORIGIN_SYSTEM = "system"
ORIGIN_TEXT = "text"

DEFAULT_NEAR_KM = 30.0


@dataclass(frozen=True, slots=True)
class OntoConcept:
    id: str
    label: str
    origin: str  # corpus | enrichment | system | text
    note: str | None = None
    temporal: bool = False
    docs: frozenset[str] = frozenset()


@dataclass(frozen=True, slots=True)
class OntoInstance:
    id: str
    label: str
    origin: str
    entry: GazetteerEntry
    docs: frozenset[str] = frozenset()


@dataclass(frozen=True, slots=True)
class OntoEdge:
    src: str
    dst: str
    type: str
    prov: str


@dataclass(frozen=True)
class Ontology:
    """Concepts and instances under shared ids, with provenance-tagged edges.

    node_map carries the graph-node-to-entity correspondence used while
    building; it is derivation metadata and takes no part in equality.
    """

    concepts: dict[str, OntoConcept] = field(default_factory=dict)
    instances: dict[str, OntoInstance] = field(default_factory=dict)
    edges: tuple[OntoEdge, ...] = ()
    node_map: dict[str, str] = field(default_factory=dict, compare=False, repr=False)


@dataclass
class Report:
    """Pipeline observations that do not belong in the ontology itself."""

    ambiguous: list[dict] = field(default_factory=list)
    dropped_edges: list[dict] = field(default_factory=list)
    dropped_candidates: list[dict] = field(default_factory=list)
    unlinked_qualifiers: list[dict] = field(default_factory=list)
    text_links: int = 0


def _edge_key(edge: OntoEdge) -> tuple[str, str, str, str]:
    return (edge.src, edge.dst, edge.type, edge.prov)


def _sorted_edges(edges: list[OntoEdge]) -> tuple[OntoEdge, ...]:
    return tuple(sorted(edges, key=_edge_key))


def _allocate(base: str, taken: set[str]) -> str:
    candidate, n = base, 1
    while candidate in taken:
        n += 1
        candidate = f"{base}_{n}"
    taken.add(candidate)
    return candidate


def classify_terms(
    graph: TerridocGraph, gazetteer: Gazetteer, report: Report | None = None
) -> Ontology:
    """Partition graph nodes into concepts and gazetteer-typed instances.

    Temporal nodes are never sent to the resolver and always stay
    concepts. Nodes resolving to the same gazetteer entry merge into one
    instance. Concepts keep their graph node ids; instance ids come from
    the entry name. Every instance is typed against the root concept.
    """
    report = report if report is not None else Report()
    concepts: dict[str, OntoConcept] = {}
    instances: dict[str, OntoInstance] = {}
    node_map: dict[str, str] = {}
    taken: set[str] = set()

    decisions: list[tuple[str, GazetteerEntry | None]] = []
    for node_id in sorted(graph.nodes):
        node = graph.nodes[node_id]
        entry: GazetteerEntry | None = None
        if not node.temporal_flag:
            match = gazetteer.resolve(node.label)
            if match.status == MATCHED:
                entry = match.entries[0]
            elif match.status == "ambiguous":
                report.ambiguous.append(
                    {"label": node.label, "entries": len(match.entries)}
                )
        decisions.append((node_id, entry))

    # concepts claim their graph ids before any instance id is minted
    for node_id, entry in decisions:
        if entry is not None:
            continue
        node = graph.nodes[node_id]
        concepts[node_id] = OntoConcept(
            id=node_id,
            label=node.label,
            origin=node.origin,
            note=node.note,
            temporal=node.temporal_flag,
            docs=node.docs,
        )
        node_map[node_id] = node_id
        taken.add(node_id)

    by_entry: dict[GazetteerEntry, str] = {}
    for node_id, entry in decisions:
        if entry is None:
            continue
        node = graph.nodes[node_id]
        instance_id = by_entry.get(entry)
        if instance_id is None:
            instance_id = _allocate(slugify(entry.name), taken)
            by_entry[entry] = instance_id
            instances[instance_id] = OntoInstance(
                id=instance_id,
                label=entry.name,
                origin=node.origin,
                entry=entry,
                docs=node.docs,
            )
        else:
            merged = instances[instance_id]
            instances[instance_id] = replace(merged, docs=merged.docs | node.docs)
        node_map[node_id] = instance_id

    ontology = Ontology(
        concepts=concepts, instances=instances, edges=(), node_map=node_map
    )
    if instances:
        ontology, root_id = _ensure_root(ontology)
        edges = [
            OntoEdge(src=instance_id, dst=root_id, type=INSTANCE_OF, prov=PROV_GAZETTEER)
            for instance_id in sorted(instances)
        ]
        ontology = replace(ontology, edges=_sorted_edges(edges))
    return ontology


def _ensure_root(ontology: Ontology) -> tuple[Ontology, str]:
    for concept_id in sorted(ontology.concepts):
        concept = ontology.concepts[concept_id]
        if concept.origin == ORIGIN_SYSTEM and concept.label == ROOT_LABEL:
            return ontology, concept_id
    taken = set(ontology.concepts) | set(ontology.instances)
    root_id = _allocate(slugify(ROOT_LABEL), taken)
    concepts = dict(ontology.concepts)
    concepts[root_id] = OntoConcept(id=root_id, label=ROOT_LABEL, origin=ORIGIN_SYSTEM)
    return replace(ontology, concepts=concepts), root_id


def retype_edges(
    graph: TerridocGraph, ontology: Ontology, report: Report | None = None
) -> Ontology:
    """Carry the graph edges over the concept/instance split.

    generic becomes instance_of when its narrower end is an instance and
    subclass_generic otherwise; a generic edge between two instances is
    kept as spatial_within only when the narrower entry's admin names the
    broader entry, else dropped. associated and used_for carry over.
    Edges whose endpoints merged into one entity are dropped and counted.
    """
    report = report if report is not None else Report()
    edges = list(ontology.edges)
    existing = {_edge_key(e) for e in edges}
    for edge in sorted(graph.edges, key=lambda e: (e.src, e.dst, e.type)):
        src = ontology.node_map[edge.src]
        dst = ontology.node_map[edge.dst]
        src_label = graph.nodes[edge.src].label
        dst_label = graph.nodes[edge.dst].label
        if src == dst:
            report.dropped_edges.append(
                {
                    "src": src_label,
                    "dst": dst_label,
                    "type": edge.type,
                    "reason": "endpoints merged into one instance",
                }
            )
            continue
        if edge.type == GENERIC:
            src_instance = ontology.instances.get(src)
            dst_instance = ontology.instances.get(dst)
            if src_instance is not None and dst_instance is not None:
                logger.warning(
                    "generic edge between spatial instances: %s -> %s",
                    src_label,
                    dst_label,
                )
                if _contains(src_instance.entry, dst_instance.entry):
                    edge_type = SPATIAL_WITHIN
                else:
                    report.dropped_edges.append(
                        {
                            "src": src_label,
                            "dst": dst_label,
                            "type": edge.type,
                            "reason": "generic between two instances without containment",
                        }
                    )
                    continue
            elif src_instance is not None:
                edge_type = INSTANCE_OF
            else:
                edge_type = SUBCLASS_GENERIC
        else:
            edge_type = edge.type
        candidate = OntoEdge(src=src, dst=dst, type=edge_type, prov=PROV_THESAURUS)
        if _edge_key(candidate) in existing:
            report.dropped_edges.append(
                {
                    "src": src_label,
                    "dst": dst_label,
                    "type": edge.type,
                    "reason": "duplicate after instance merge",
                }
            )
            continue
        existing.add(_edge_key(candidate))
        edges.append(candidate)
    return replace(ontology, edges=_sorted_edges(edges))


def _contains(inner: GazetteerEntry, outer: GazetteerEntry) -> bool:
    # containment by naming: the inner entry's admin field names the outer entry
    if not inner.admin.strip():
        return False
    return normalize_label(inner.admin) == normalize_label(outer.name)


def inject_text_links(
    linked: list[tuple[ExtractionCandidate, str | None]],
    gazetteer: Gazetteer,
    ontology: Ontology,
    report: Report | None = None,
    link_policy: str = "existing",
) -> Ontology:
    """Materialize text-mined candidates as instances and instance_of edges.

    A candidate whose proper name resolves uniquely becomes (or joins) an
    instance; its qualifier's node, when linked and still a concept, gets
    an instance_of edge with text provenance. Unlinked qualifiers are
    reported, or become fresh concepts under link_policy="create".
    """
    report = report if report is not None else Report()
    concepts = dict(ontology.concepts)
    instances = dict(ontology.instances)
    edges = list(ontology.edges)
    node_map = dict(ontology.node_map)
    existing = {_edge_key(e) for e in edges}
    taken = set(concepts) | set(instances)
    by_entry: dict[GazetteerEntry, str] = {}
    for instance_id in sorted(instances):
        by_entry.setdefault(instances[instance_id].entry, instance_id)
    created_concepts: dict[str, str] = {}

    current = replace(
        ontology, concepts=concepts, instances=instances, node_map=node_map
    )
    for candidate, graph_node_id in linked:
        match = gazetteer.resolve(candidate.proper_name)
        if match.status != MATCHED:
            report.dropped_candidates.append(
                {
                    "proper_name": candidate.proper_name,
                    "notice_id": candidate.notice_id,
                    "status": match.status,
                }
            )
            continue
        entry = match.entries[0]
        instance_id = by_entry.get(entry)
        if instance_id is None:
            current, root_id = _ensure_root(current)
            concepts = current.concepts
            taken.add(root_id)
            instance_id = _allocate(slugify(entry.name), taken)
            by_entry[entry] = instance_id
            instances[instance_id] = OntoInstance(
                id=instance_id,
                label=entry.name,
                origin=ORIGIN_TEXT,
                entry=entry,
                docs=frozenset({candidate.notice_id}),
            )
            typing = OntoEdge(
                src=instance_id, dst=root_id, type=INSTANCE_OF, prov=PROV_GAZETTEER
            )
            existing.add(_edge_key(typing))
            edges.append(typing)
        else:
            instance = instances[instance_id]
            instances[instance_id] = replace(
                instance, docs=instance.docs | {candidate.notice_id}
            )
        if candidate.qualifier_np is None:
            continue
        concept_id = node_map.get(graph_node_id) if graph_node_id else None
        if concept_id is None:
            if link_policy == "create":
                norm = normalize_label(candidate.qualifier_np)
                concept_id = created_concepts.get(norm)
                if concept_id is None:
                    concept_id = _allocate(slugify(candidate.qualifier_np), taken)
                    created_concepts[norm] = concept_id
                    concepts[concept_id] = OntoConcept(
                        id=concept_id,
                        label=candidate.qualifier_np,
                        origin=ORIGIN_TEXT,
                        docs=frozenset({candidate.notice_id}),
                    )
            else:
                report.unlinked_qualifiers.append(
                    {
                        "qualifier": candidate.qualifier_np,
                        "proper_name": candidate.proper_name,
                        "notice_id": candidate.notice_id,
                    }
                )
                continue
        if concept_id in instances:
            report.unlinked_qualifiers.append(
                {
                    "qualifier": candidate.qualifier_np,
                    "proper_name": candidate.proper_name,
                    "notice_id": candidate.notice_id,
                    "reason": "qualifier resolved to a spatial instance",
                }
            )
            continue
        link = OntoEdge(
            src=concept_id,
            dst=instance_id,
            type=INSTANCE_OF,
            prov=f"text:{candidate.notice_id}",
        )
        if _edge_key(link) not in existing:
            existing.add(_edge_key(link))
            edges.append(link)
            report.text_links += 1
    return replace(
        current,
        concepts=concepts,
        instances=instances,
        edges=_sorted_edges(edges),
        node_map=node_map,
    )


def derive_spatial_relations(
    ontology: Ontology, near_km: float = DEFAULT_NEAR_KM
) -> Ontology:
    """Add geometry-derived spatial_within and spatial_near edges.

    Containment uses the admin-naming test; proximity uses great-circle
    distance, suppressed inside pairs already related by containment.
    near edges are stored once, from the smaller id to the larger.
    """
    edges = list(ontology.edges)
    within_directed = {
        (e.src, e.dst) for e in edges if e.type == SPATIAL_WITHIN
    }
    within_pairs = {frozenset(pair) for pair in within_directed}
    ids = sorted(ontology.instances)
    for inner_id in ids:
        for outer_id in ids:
            if inner_id == outer_id or (inner_id, outer_id) in within_directed:
                continue
            inner = ontology.instances[inner_id].entry
            outer = ontology.instances[outer_id].entry
            if _contains(inner, outer):
                edges.append(
                    OntoEdge(
                        src=inner_id,
                        dst=outer_id,
                        type=SPATIAL_WITHIN,
                        prov=PROV_GEOMETRY,
                    )
                )
                within_directed.add((inner_id, outer_id))
                within_pairs.add(frozenset((inner_id, outer_id)))
    near_seen = {
        frozenset((e.src, e.dst)) for e in edges if e.type == SPATIAL_NEAR
    }
    for index, a in enumerate(ids):
        for b in ids[index + 1 :]:
            pair = frozenset((a, b))
            if pair in within_pairs or pair in near_seen:
                continue
            entry_a = ontology.instances[a].entry
            entry_b = ontology.instances[b].entry
            if distance_km(entry_a.lat, entry_a.lon, entry_b.lat, entry_b.lon) <= near_km:
                edges.append(
                    OntoEdge(src=a, dst=b, type=SPATIAL_NEAR, prov=PROV_GEOMETRY)
                )
    return replace(ontology, edges=_sorted_edges(edges))


def build_ontology(
    graph: TerridocGraph,
    gazetteer: Gazetteer,
    linked: list[tuple[ExtractionCandidate, str | None]],
    *,
    link_policy: str = "existing",
    spatial_relations: bool = False,
    near_km: float = DEFAULT_NEAR_KM,
) -> tuple[Ontology, Report]:
    """Run the four assembly passes in order."""
    report = Report()
    ontology = classify_terms(graph, gazetteer, report)
    ontology = retype_edges(graph, ontology, report)
    ontology = inject_text_links(
        linked, gazetteer, ontology, report, link_policy=link_policy
    )
    if spatial_relations:
        ontology = derive_spatial_relations(ontology, near_km=near_km)
    return ontology, report
