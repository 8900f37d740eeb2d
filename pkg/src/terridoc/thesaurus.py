"""Thesaurus store: JSON Lines loading, label normalization, label lookup.

Records follow the classic subject-authority shape: a preferred label,
non-preferred variants (``uf``), broader terms (``tg``) and associative
links (``ta``). The broader relation must form a DAG; every normalized
label (preferred or not) must belong to exactly one record.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field

from .errors import FormatError, ValidationError

_WS_RUN = re.compile(r"\s+")


def normalize_label(raw: str) -> str:
    """Normalize a label for comparison and indexing.

    NFC, typographic apostrophe mapped to ASCII, case-folded, trimmed,
    internal whitespace runs collapsed to one space. Idempotent.
    """
    text = unicodedata.normalize("NFC", raw)
    text = text.replace("’", "'")
    text = text.casefold()
    text = _WS_RUN.sub(" ", text).strip()
    # casefold can denormalize some compositions; re-apply NFC so a second
    # pass is guaranteed to be a no-op
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True, slots=True)
class ThesaurusRecord:
    id: str
    pref_label: str
    used_for: tuple[str, ...] = ()
    generic: tuple[str, ...] = ()
    associated: tuple[str, ...] = ()
    note: str | None = None


@dataclass(frozen=True, slots=True)
class Thesaurus:
    """Immutable record store with a total label index."""

    records: dict[str, ThesaurusRecord] = field(default_factory=dict)
    label_index: dict[str, str] = field(default_factory=dict)

    def lookup(self, label: str) -> str | None:
        return self.label_index.get(normalize_label(label))


def lookup(label: str, thesaurus: Thesaurus) -> str | None:
    """Resolve a label to a record id; non-preferred hits redirect to their record."""
    return thesaurus.lookup(label)


def load_thesaurus(file_content: str) -> Thesaurus:
    """Parse a JSON Lines thesaurus and validate its referential structure.

    Raises FormatError on broken JSON and ValidationError on duplicate ids,
    dangling or self references, generic cycles, or a normalized label
    claimed by two records.
    """
    records: dict[str, ThesaurusRecord] = {}
    for lineno, line in enumerate(file_content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise FormatError(f"line {lineno}: expected a JSON object")
        record = _parse_record(obj, lineno)
        if record.id in records:
            raise ValidationError(f"line {lineno}: duplicate record id {record.id!r}")
        records[record.id] = record
    _check_references(records)
    _check_acyclic(records)
    return Thesaurus(records=records, label_index=_build_label_index(records))


def _parse_record(obj: dict, lineno: int) -> ThesaurusRecord:
    rec_id = obj.get("id")
    pref = obj.get("pref")
    if not isinstance(rec_id, str) or not rec_id.strip():
        raise ValidationError(f"line {lineno}: missing or empty record id")
    if not isinstance(pref, str) or not pref.strip():
        raise ValidationError(f"line {lineno}: record {rec_id!r} has no preferred label")
    note = obj.get("note")
    if note is not None and not isinstance(note, str):
        raise ValidationError(f"line {lineno}: record {rec_id!r}: note must be a string")
    return ThesaurusRecord(
        id=rec_id,
        pref_label=unicodedata.normalize("NFC", pref),
        used_for=_string_list(obj, "uf", rec_id, lineno),
        generic=_string_list(obj, "tg", rec_id, lineno),
        associated=_string_list(obj, "ta", rec_id, lineno),
        note=note,
    )


def _string_list(obj: dict, key: str, rec_id: str, lineno: int) -> tuple[str, ...]:
    value = obj.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ValidationError(
            f"line {lineno}: record {rec_id!r}: {key} must be a list of strings"
        )
    return tuple(unicodedata.normalize("NFC", v) for v in value)


def _check_references(records: dict[str, ThesaurusRecord]) -> None:
    for rec_id in sorted(records):
        record = records[rec_id]
        for key, refs in (("tg", record.generic), ("ta", record.associated)):
            for ref in refs:
                if ref == rec_id:
                    raise ValidationError(f"record {rec_id!r}: {key} refers to itself")
                if ref not in records:
                    raise ValidationError(
                        f"record {rec_id!r}: {key} refers to unknown record {ref!r}"
                    )


def _check_acyclic(records: dict[str, ThesaurusRecord]) -> None:
    # iterative DFS over the generic relation; sorted start order keeps the
    # reported cycle stable for a given input
    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    for start in sorted(records):
        if state.get(start):
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        path: list[str] = []
        while stack:
            node, edge_index = stack.pop()
            if edge_index == 0:
                state[node] = 1
                path.append(node)
            targets = records[node].generic
            if edge_index < len(targets):
                stack.append((node, edge_index + 1))
                target = targets[edge_index]
                if state.get(target) == 1:
                    cycle = path[path.index(target):] + [target]
                    raise ValidationError("generic cycle: " + " -> ".join(cycle))
                if not state.get(target):
                    stack.append((target, 0))
            else:
                state[node] = 2
                path.pop()


def _build_label_index(records: dict[str, ThesaurusRecord]) -> dict[str, str]:
    index: dict[str, str] = {}
    owner: dict[str, str] = {}
    for rec_id in sorted(records):
        record = records[rec_id]
        for label in (record.pref_label, *record.used_for):
            key = normalize_label(label)
            if not key:
                raise ValidationError(f"record {rec_id!r}: empty label")
            if key in owner and owner[key] != rec_id:
                raise ValidationError(
                    f"label {label!r} belongs to both {owner[key]!r} and {rec_id!r}"
                )
            owner[key] = rec_id
            index[key] = rec_id
    return index
