"""Canonical serializations of the ontology: JSON, SKOS Turtle, DOT.

Every export is deterministic: nodes sorted by id, edges by
(src, dst, type, prov), 2-space indentation, UTF-8 text with a trailing
newline. import_json inverts export_json exactly.
"""

from __future__ import annotations

import json

from .errors import FormatError, ValidationError
from .gazetteer import GazetteerEntry
from .graph import ASSOCIATED
from .ontology import (
    EDGE_TYPES,
    INSTANCE_OF,
    OntoConcept,
    OntoEdge,
    OntoInstance,
    Ontology,
    PROV_GAZETTEER,
    PROV_GEOMETRY,
    PROV_THESAURUS,
    SPATIAL_NEAR,
    SPATIAL_WITHIN,
    SUBCLASS_GENERIC,
    USED_FOR,
)

TURTLE_PREFIXES = (
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n"
    "@prefix trd: <http://example.org/terridoc#> .\n"
)

_KINDS = ("concept", "instance", "temporal")
_FIXED_PROV = (PROV_THESAURUS, PROV_GAZETTEER, PROV_GEOMETRY)


def export_json(ontology: Ontology) -> str:
    nodes = []
    for node_id in sorted(set(ontology.concepts) | set(ontology.instances)):
        concept = ontology.concepts.get(node_id)
        if concept is not None:
            node: dict = {
                "id": concept.id,
                "label": concept.label,
                "kind": "temporal" if concept.temporal else "concept",
                "origin": concept.origin,
            }
            if concept.note is not None:
                node["note"] = concept.note
            node["docs"] = sorted(concept.docs)
        else:
            instance = ontology.instances[node_id]
            entry = instance.entry
            node = {
                "id": instance.id,
                "label": instance.label,
                "kind": "instance",
                "origin": instance.origin,
                "docs": sorted(instance.docs),
                "entry": {
                    "name": entry.name,
                    "admin": entry.admin,
                    "class": entry.feature_class,
                    "lon": entry.lon,
                    "lat": entry.lat,
                },
            }
        nodes.append(node)
    edges = [
        {"src": e.src, "dst": e.dst, "type": e.type, "prov": e.prov}
        for e in sorted(ontology.edges, key=lambda e: (e.src, e.dst, e.type, e.prov))
    ]
    return json.dumps({"nodes": nodes, "edges": edges}, ensure_ascii=False, indent=2) + "\n"


def import_json(text: str) -> Ontology:
    """Parse an exported graph document back into an Ontology.

    Validation failures name the JSON path of the offending value.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ValidationError("$: expected an object")
    nodes = document.get("nodes")
    edges = document.get("edges")
    if not isinstance(nodes, list):
        raise ValidationError("nodes: expected a list")
    if not isinstance(edges, list):
        raise ValidationError("edges: expected a list")
    concepts: dict[str, OntoConcept] = {}
    instances: dict[str, OntoInstance] = {}
    for index, raw in enumerate(nodes):
        path = f"nodes[{index}]"
        if not isinstance(raw, dict):
            raise ValidationError(f"{path}: expected an object")
        node_id = _required_str(raw, "id", path)
        if node_id in concepts or node_id in instances:
            raise ValidationError(f"{path}.id: duplicate id {node_id!r}")
        label = _required_str(raw, "label", path)
        kind = _required_str(raw, "kind", path)
        if kind not in _KINDS:
            raise ValidationError(f"{path}.kind: unknown kind {kind!r}")
        origin = _required_str(raw, "origin", path)
        docs = raw.get("docs", [])
        if not isinstance(docs, list) or any(not isinstance(d, str) for d in docs):
            raise ValidationError(f"{path}.docs: expected a list of strings")
        if kind == "instance":
            entry = _parse_entry(raw.get("entry"), path)
            if "note" in raw:
                raise ValidationError(f"{path}.note: instances carry no note")
            instances[node_id] = OntoInstance(
                id=node_id, label=label, origin=origin, entry=entry, docs=frozenset(docs)
            )
        else:
            if "entry" in raw:
                raise ValidationError(f"{path}.entry: only instances carry an entry")
            note = raw.get("note")
            if note is not None and not isinstance(note, str):
                raise ValidationError(f"{path}.note: expected a string")
            concepts[node_id] = OntoConcept(
                id=node_id,
                label=label,
                origin=origin,
                note=note,
                temporal=kind == "temporal",
                docs=frozenset(docs),
            )
    known = set(concepts) | set(instances)
    parsed_edges: list[OntoEdge] = []
    for index, raw in enumerate(edges):
        path = f"edges[{index}]"
        if not isinstance(raw, dict):
            raise ValidationError(f"{path}: expected an object")
        src = _required_str(raw, "src", path)
        dst = _required_str(raw, "dst", path)
        edge_type = _required_str(raw, "type", path)
        prov = _required_str(raw, "prov", path)
        if src not in known:
            raise ValidationError(f"{path}.src: unknown node {src!r}")
        if dst not in known:
            raise ValidationError(f"{path}.dst: unknown node {dst!r}")
        if edge_type not in EDGE_TYPES:
            raise ValidationError(f"{path}.type: unknown edge type {edge_type!r}")
        if prov not in _FIXED_PROV and not (
            prov.startswith("text:") and len(prov) > len("text:")
        ):
            raise ValidationError(f"{path}.prov: unknown provenance {prov!r}")
        parsed_edges.append(OntoEdge(src=src, dst=dst, type=edge_type, prov=prov))
    return Ontology(
        concepts=dict(sorted(concepts.items())),
        instances=dict(sorted(instances.items())),
        edges=tuple(sorted(parsed_edges, key=lambda e: (e.src, e.dst, e.type, e.prov))),
    )


def _required_str(raw: dict, key: str, path: str) -> str:
    value = raw.get(key)
    if not isinstance(value, str) or not value:
        raise ValidationError(f"{path}.{key}: expected a non-empty string")
    return value


def _parse_entry(raw: object, path: str) -> GazetteerEntry:
    if not isinstance(raw, dict):
        raise ValidationError(f"{path}.entry: instances require an entry object")
    for key in ("name", "admin", "class"):
        if not isinstance(raw.get(key), str):
            raise ValidationError(f"{path}.entry.{key}: expected a string")
    for key in ("lon", "lat"):
        if not isinstance(raw.get(key), (int, float)) or isinstance(raw.get(key), bool):
            raise ValidationError(f"{path}.entry.{key}: expected a number")
    return GazetteerEntry(
        name=raw["name"],
        admin=raw["admin"],
        feature_class=raw["class"],
        lon=float(raw["lon"]),
        lat=float(raw["lat"]),
    )


def _turtle_escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def export_turtle(ontology: Ontology) -> str:
    """SKOS rendering: concepts with prefLabel/note/altLabel/broader/related,
    instances typed trd:EntiteSpatiale, text links as trd:instance_of,
    spatial relations as trd:within and trd:near."""
    by_subject: dict[str, dict[str, list[str]]] = {}

    def add(subject: str, predicate: str, obj: str) -> None:
        by_subject.setdefault(subject, {}).setdefault(predicate, []).append(obj)

    for edge in ontology.edges:
        if edge.type == SUBCLASS_GENERIC:
            add(edge.src, "skos:broader", f"trd:{edge.dst}")
        elif edge.type == ASSOCIATED:
            add(edge.src, "skos:related", f"trd:{edge.dst}")
        elif edge.type == USED_FOR:
            target = ontology.concepts.get(edge.dst) or ontology.instances.get(edge.dst)
            if target is not None:
                add(edge.src, "skos:altLabel", f'"{_turtle_escape(target.label)}"@fr')
        elif edge.type == INSTANCE_OF and edge.prov == PROV_GAZETTEER:
            add(edge.src, "a", "trd:EntiteSpatiale")
        elif edge.type == INSTANCE_OF:
            add(edge.src, "trd:instance_of", f"trd:{edge.dst}")
        elif edge.type == SPATIAL_WITHIN:
            add(edge.src, "trd:within", f"trd:{edge.dst}")
        elif edge.type == SPATIAL_NEAR:
            add(edge.src, "trd:near", f"trd:{edge.dst}")

    blocks: list[str] = []
    predicate_order = (
        "a",
        "skos:prefLabel",
        "rdfs:label",
        "skos:note",
        "skos:altLabel",
        "skos:broader",
        "skos:related",
        "trd:instance_of",
        "trd:within",
        "trd:near",
    )
    for subject_id in sorted(set(ontology.concepts) | set(ontology.instances)):
        predicates = by_subject.setdefault(subject_id, {})
        concept = ontology.concepts.get(subject_id)
        if concept is not None:
            predicates.setdefault("a", []).insert(0, "skos:Concept")
            predicates.setdefault("skos:prefLabel", []).append(
                f'"{_turtle_escape(concept.label)}"@fr'
            )
            if concept.note is not None:
                predicates.setdefault("skos:note", []).append(
                    f'"{_turtle_escape(concept.note)}"@fr'
                )
        else:
            instance = ontology.instances[subject_id]
            predicates.setdefault("rdfs:label", []).append(
                f'"{_turtle_escape(instance.label)}"@fr'
            )
        lines = []
        for predicate in predicate_order:
            if predicate not in predicates:
                continue
            objects = predicates[predicate]
            if predicate != "a":
                objects = sorted(set(objects))
            lines.append((predicate, ", ".join(objects)))
        first_predicate, first_objects = lines[0]
        text = f"trd:{subject_id} {first_predicate} {first_objects}"
        for predicate, objects in lines[1:]:
            text += f" ;\n    {predicate} {objects}"
        blocks.append(text + " .")
    if not blocks:
        return TURTLE_PREFIXES
    return TURTLE_PREFIXES + "\n" + "\n\n".join(blocks) + "\n"


def export_dot(ontology: Ontology) -> str:
    """Directed concept map: concepts as ellipses, instances as boxes,
    temporal nodes dashed, edges labeled with their type."""
    lines = ["digraph terridoc {"]
    for node_id in sorted(set(ontology.concepts) | set(ontology.instances)):
        concept = ontology.concepts.get(node_id)
        if concept is not None:
            attrs = f'label="{_dot_escape(concept.label)}", shape=ellipse'
            if concept.temporal:
                attrs += ", style=dashed"
        else:
            instance = ontology.instances[node_id]
            attrs = f'label="{_dot_escape(instance.label)}", shape=box'
        lines.append(f'  "{node_id}" [{attrs}];')
    for edge in sorted(ontology.edges, key=lambda e: (e.src, e.dst, e.type, e.prov)):
        lines.append(f'  "{edge.src}" -> "{edge.dst}" [label="{edge.type}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')
