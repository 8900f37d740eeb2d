"""Shared test helpers: random input generators, independent oracles,
and a fixture-scale Turtle reader used to re-parse exports."""

from __future__ import annotations

import random
import re

from terridoc.gazetteer import GazetteerEntry
from terridoc.ontology import OntoConcept, OntoEdge, OntoInstance, Ontology

FEATURE_CLASSES = ["commune", "lieu-dit", "route", "pic", "vallée", "région", "autre"]


def random_thesaurus_lines(rng: random.Random, max_records: int = 50) -> list[str]:
    """Random acyclic thesaurus as JSON Lines; tg only points to earlier
    records, so the generic relation is a DAG by construction. uf stays
    empty so enrichment nodes are exactly the ancestor closure."""
    import json

    count = rng.randint(1, max_records)
    lines = []
    for i in range(count):
        generic = sorted(
            rng.sample(range(i), k=min(rng.randint(0, 2), i)) if i else []
        )
        associated = [
            f"r{j}" for j in rng.sample(range(count), k=rng.randint(0, 2)) if j != i
        ]
        lines.append(
            json.dumps(
                {
                    "id": f"r{i}",
                    "pref": f"Terme {i}",
                    "uf": [],
                    "tg": [f"r{j}" for j in generic],
                    "ta": associated,
                }
            )
        )
    return lines


def bfs_ancestors(lines: list[str], record_id: str) -> set[str]:
    """Independent ancestor computation straight from the raw JSON lines."""
    import json

    generic = {}
    for line in lines:
        obj = json.loads(line)
        generic[obj["id"]] = list(obj.get("tg", []))
    seen: set[str] = set()
    frontier = [record_id]
    while frontier:
        current = frontier.pop(0)
        for parent in generic[current]:
            if parent not in seen:
                seen.add(parent)
                frontier.append(parent)
    return seen


def random_entry(rng: random.Random, name: str, admin: str = "") -> GazetteerEntry:
    return GazetteerEntry(
        name=name,
        admin=admin,
        feature_class=rng.choice(FEATURE_CLASSES),
        lon=round(rng.uniform(-5.0, 8.0), 4),
        lat=round(rng.uniform(41.0, 51.0), 4),
    )


def random_ontology(rng: random.Random) -> Ontology:
    """Random well-formed ontology for serialization round-trips."""
    concepts: dict[str, OntoConcept] = {}
    instances: dict[str, OntoInstance] = {}
    for i in range(rng.randint(1, 8)):
        node_id = f"concept_{i}"
        temporal = rng.random() < 0.2
        concepts[node_id] = OntoConcept(
            id=node_id,
            label=f"Concept é{i}" if rng.random() < 0.5 else f"Concept {i}",
            origin=rng.choice(["corpus", "enrichment"]),
            note=f"note \"{i}\"" if rng.random() < 0.3 else None,
            temporal=temporal,
            docs=frozenset(f"n{j}" for j in range(rng.randint(0, 3))),
        )
    for i in range(rng.randint(0, 5)):
        node_id = f"instance_{i}"
        instances[node_id] = OntoInstance(
            id=node_id,
            label=f"Lieu {i}",
            origin=rng.choice(["corpus", "text"]),
            entry=random_entry(rng, f"Lieu {i}", admin="Région X" if rng.random() < 0.4 else ""),
            docs=frozenset(f"n{j}" for j in range(rng.randint(0, 2))),
        )
    edges: set[OntoEdge] = set()
    if instances:
        root = OntoConcept(id="entite_spatiale", label="Entité spatiale", origin="system")
        concepts[root.id] = root
        for instance_id in instances:
            edges.add(OntoEdge(instance_id, root.id, "instance_of", "gazetteer"))
    concept_ids = sorted(concepts)
    instance_ids = sorted(instances)
    for _ in range(rng.randint(0, 6)):
        src, dst = rng.choice(concept_ids), rng.choice(concept_ids)
        if src != dst:
            edges.add(
                OntoEdge(src, dst, rng.choice(["subclass_generic", "associated"]), "thesaurus")
            )
    for _ in range(rng.randint(0, 4)):
        if not instance_ids:
            break
        src = rng.choice(concept_ids)
        dst = rng.choice(instance_ids)
        edges.add(OntoEdge(src, dst, "instance_of", f"text:n{rng.randint(1, 5)}"))
    if len(instance_ids) >= 2:
        for _ in range(rng.randint(0, 3)):
            a, b = rng.sample(instance_ids, 2)
            edges.add(
                OntoEdge(a, b, rng.choice(["spatial_within", "spatial_near"]), "geometry")
            )
    return Ontology(
        concepts=dict(sorted(concepts.items())),
        instances=dict(sorted(instances.items())),
        edges=tuple(sorted(edges, key=lambda e: (e.src, e.dst, e.type, e.prov))),
    )


_PREFIX_LINE = re.compile(r"^@prefix\s+(\w*):\s+<([^>]*)>\s+\.$")
_TERM = re.compile(
    r'\s*(?:(?P<iri><[^>]*>)|(?P<pname>[A-Za-z_][\w-]*:[^\s;,.]*)|(?P<kw>a)\b|'
    r'"(?P<lit>(?:[^"\\]|\\.)*)"(?:@(?P<lang>[\w-]+))?)'
)


def parse_turtle(text: str) -> set[tuple[str, str, str]]:
    """Minimal Turtle reader covering the subset our exporter emits:
    prefix declarations, prefixed names, "a", language-tagged literals,
    ';' predicate lists and ',' object lists. Returns expanded triples."""
    prefixes: dict[str, str] = {}
    triples: set[tuple[str, str, str]] = set()
    body_lines = []
    for line in text.splitlines():
        m = _PREFIX_LINE.match(line.strip())
        if m:
            prefixes[m.group(1)] = m.group(2)
        elif line.strip():
            body_lines.append(line)
    statements = " ".join(body_lines)

    def expand(token: str) -> str:
        if token.startswith("<") and token.endswith(">"):
            return token[1:-1]
        if token == "a":
            return "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
        prefix, _, local = token.partition(":")
        assert prefix in prefixes, f"undeclared prefix {prefix!r}"
        return prefixes[prefix] + local

    def read_term(text: str, pos: int) -> tuple[str, int]:
        m = _TERM.match(text, pos)
        assert m, f"cannot read term at: {text[pos:pos + 40]!r}"
        if m.group("lit") is not None:
            literal = m.group("lit")
            literal = (
                literal.replace("\\\\", "\x00")
                .replace('\\"', '"')
                .replace("\\n", "\n")
                .replace("\\r", "\r")
                .replace("\\t", "\t")
                .replace("\x00", "\\")
            )
            lang = m.group("lang")
            return (f'"{literal}"@{lang}' if lang else f'"{literal}"'), m.end()
        token = m.group("iri") or m.group("pname") or m.group("kw")
        return expand(token), m.end()

    pos = 0
    length = len(statements)
    while pos < length:
        while pos < length and statements[pos].isspace():
            pos += 1
        if pos >= length:
            break
        subject, pos = read_term(statements, pos)
        while True:
            predicate, pos = read_term(statements, pos)
            while True:
                obj, pos = read_term(statements, pos)
                triples.add((subject, predicate, obj))
                while pos < length and statements[pos].isspace():
                    pos += 1
                if pos < length and statements[pos] == ",":
                    pos += 1
                    continue
                break
            if pos < length and statements[pos] == ";":
                pos += 1
                continue
            break
        assert pos < length and statements[pos] == ".", (
            f"expected '.' at: {statements[pos:pos + 40]!r}"
        )
        pos += 1
    return triples
