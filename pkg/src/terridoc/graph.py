"""Typed term graph: corpus terms from notices, enriched with thesaurus relations.

Nodes are keyed by normalized label, so a label names at most one node.
Corpus nodes come from subject headings and keep the set of notices that
carry them; enrichment nodes are pulled in from the thesaurus (the full
upward generic closure, plus non-preferred variants of matched terms).
"""

from __future__ import annotations

import re
import unicodedata
from collections import defaultdict
from dataclasses import dataclass

from .notices import Notice
from .thesaurus import Thesaurus, normalize_label

CORPUS = "corpus"
ENRICHMENT = "enrichment"

GENERIC = "generic"
ASSOCIATED = "associated"
USED_FOR = "used_for"

# century subdivisions like "18e siècle"; matched on normalized labels
TEMPORAL_PATTERN = re.compile(r"^[0-9]{1,2}e[ -]siècle")


def is_temporal(label: str) -> bool:
    return TEMPORAL_PATTERN.match(normalize_label(label)) is not None


def slugify(label: str) -> str:
    """ASCII identifier for a label: diacritics folded, other runs become "_"."""
    folded = unicodedata.normalize("NFD", normalize_label(label))
    folded = "".join(ch for ch in folded if not unicodedata.combining(ch))
    folded = folded.replace("œ", "oe").replace("æ", "ae")
    slug = re.sub(r"[^a-z0-9]+", "_", folded).strip("_")
    return slug or "term"


@dataclass(frozen=True, slots=True)
class TermNode:
    id: str
    label: str
    origin: str  # corpus | enrichment
    temporal_flag: bool
    docs: frozenset[str] = frozenset()
    note: str | None = None


@dataclass(frozen=True, slots=True)
class TypedEdge:
    src: str
    dst: str
    type: str  # generic | associated | used_for


@dataclass(frozen=True, slots=True)
class TerridocGraph:
    nodes: dict[str, TermNode]
    edges: frozenset[TypedEdge]
    unmatched: tuple[str, ...] = ()  # corpus labels absent from the thesaurus


def extract_corpus_terms(notices: list[Notice]) -> list[tuple[str, frozenset[str]]]:
    """Collect distinct heading terms with the notices carrying them.

    Terms are deduplicated by normalized label (first surface form wins)
    and returned sorted by normalized label.
    """
    surface: dict[str, str] = {}
    docs: defaultdict[str, set[str]] = defaultdict(set)
    for notice in notices:
        for heading in notice.headings:
            for term in heading.terms:
                key = normalize_label(term)
                surface.setdefault(key, term)
                docs[key].add(notice.id)
    return [(surface[key], frozenset(docs[key])) for key in sorted(surface)]


def enrich(
    corpus_terms: list[tuple[str, frozenset[str]]], thesaurus: Thesaurus
) -> TerridocGraph:
    """Build the typed graph from corpus terms and thesaurus relations.

    A matched term contributes its full upward generic closure. A term
    matched through a non-preferred variant hangs off a node for the
    preferred label, linked by used_for; the matched record's own
    non-preferred variants also become used_for targets. Associative
    links are added only when both endpoint records already have a node.
    """
    surface: dict[str, str] = {}
    origin: dict[str, str] = {}
    docs: dict[str, frozenset[str]] = {}
    note: dict[str, str | None] = {}
    edges: set[tuple[str, str, str]] = set()
    unmatched: list[str] = []
    matched_records: set[str] = set()

    def ensure(label: str, node_origin: str) -> str:
        key = normalize_label(label)
        if key not in surface:
            surface[key] = label
            origin[key] = node_origin
            docs[key] = frozenset()
            note[key] = None
        return key

    for label, doc_ids in corpus_terms:
        key = ensure(label, CORPUS)
        docs[key] = docs[key] | doc_ids

    for label, _doc_ids in corpus_terms:
        record_id = thesaurus.lookup(label)
        if record_id is None:
            unmatched.append(label)
            continue
        record = thesaurus.records[record_id]
        key = normalize_label(label)
        anchor = normalize_label(record.pref_label)
        if anchor != key:
            # matched a non-preferred variant: the hierarchy hangs off the
            # preferred term, the corpus surface stays as a variant node
            ensure(record.pref_label, ENRICHMENT)
            edges.add((anchor, key, USED_FOR))
        if note[key] is None:
            note[key] = record.note
        if note[anchor] is None:
            note[anchor] = record.note
        for alternate in record.used_for:
            alternate_key = normalize_label(alternate)
            if alternate_key == anchor:
                continue
            ensure(alternate, ENRICHMENT)
            edges.add((anchor, alternate_key, USED_FOR))
        matched_records.add(record_id)
        stack = [record_id]
        visited = {record_id}
        while stack:
            current = thesaurus.records[stack.pop()]
            current_key = ensure(current.pref_label, ENRICHMENT)
            for parent_id in current.generic:
                parent = thesaurus.records[parent_id]
                parent_key = ensure(parent.pref_label, ENRICHMENT)
                if note[parent_key] is None:
                    note[parent_key] = parent.note
                edges.add((current_key, parent_key, GENERIC))
                matched_records.add(parent_id)
                if parent_id not in visited:
                    visited.add(parent_id)
                    stack.append(parent_id)

    # associative links only between records that already contributed a node
    for record_id in sorted(matched_records):
        record = thesaurus.records[record_id]
        src_key = normalize_label(record.pref_label)
        for target_id in record.associated:
            if target_id not in matched_records:
                continue
            dst_key = normalize_label(thesaurus.records[target_id].pref_label)
            if dst_key != src_key:
                edges.add((src_key, dst_key, ASSOCIATED))

    ids = _allocate_ids(surface)
    nodes = {
        ids[key]: TermNode(
            id=ids[key],
            label=surface[key],
            origin=origin[key],
            temporal_flag=is_temporal(surface[key]),
            docs=docs[key],
            note=note[key],
        )
        for key in surface
    }
    edge_set = frozenset(
        TypedEdge(src=ids[src], dst=ids[dst], type=edge_type)
        for src, dst, edge_type in edges
    )
    return TerridocGraph(
        nodes=nodes,
        edges=edge_set,
        unmatched=tuple(sorted(unmatched, key=normalize_label)),
    )


def _allocate_ids(surface: dict[str, str]) -> dict[str, str]:
    # slug collisions get numeric suffixes, assigned in sorted-label order
    taken: set[str] = set()
    ids: dict[str, str] = {}
    for key in sorted(surface):
        base = slugify(surface[key])
        candidate, n = base, 1
        while candidate in taken:
            n += 1
            candidate = f"{base}_{n}"
        taken.add(candidate)
        ids[key] = candidate
    return ids


def graph_stats(graph: TerridocGraph) -> dict[str, object]:
    """Deterministic summary counts for the build report."""
    corpus_nodes = [n for n in graph.nodes.values() if n.origin == CORPUS]
    edge_counts = {edge_type: 0 for edge_type in (GENERIC, ASSOCIATED, USED_FOR)}
    for edge in graph.edges:
        edge_counts[edge.type] += 1
    return {
        "notices_seen": len({doc for node in corpus_nodes for doc in node.docs}),
        "corpus_nodes": len(corpus_nodes),
        "enrichment_nodes": len(graph.nodes) - len(corpus_nodes),
        "edges": edge_counts,
        "unmatched_corpus": list(graph.unmatched),
        "temporal_nodes": sum(1 for n in graph.nodes.values() if n.temporal_flag),
    }
