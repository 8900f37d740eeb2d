"""Gazetteer store and spatial resolution of term labels.

A label like "Barèges (Hautes-Pyrénées)" splits into a base name and a
qualifier; the qualifier narrows homonyms by administrative unit. A
qualifier naming a whole country matches entries with an empty admin
field, so national-level entries resolve without inventing admin rows.
"""

from __future__ import annotations

import csv
import io
import math
import re
import unicodedata
from dataclasses import dataclass, field

from .errors import FormatError, ValidationError
from .thesaurus import normalize_label

FEATURE_CLASSES = frozenset(
    {"commune", "lieu-dit", "route", "pic", "vallée", "région", "autre"}
)
DEFAULT_COUNTRY_QUALIFIERS = frozenset({"France"})

EARTH_RADIUS_KM = 6371.0

MATCHED = "matched"
AMBIGUOUS = "ambiguous"
UNMATCHED = "unmatched"

_HEADER = ["name", "admin", "class", "lon", "lat"]
_TRAILING_GROUP = re.compile(r"\(([^()]*)\)\s*$")


@dataclass(frozen=True, slots=True)
class GazetteerEntry:
    name: str
    admin: str  # empty for entries above the admin level
    feature_class: str
    lon: float
    lat: float


@dataclass(frozen=True, slots=True)
class LabelParts:
    base: str
    qualifier: str | None = None


@dataclass(frozen=True, slots=True)
class SpatialMatch:
    status: str  # matched | ambiguous | unmatched
    entries: tuple[GazetteerEntry, ...] = ()


@dataclass(frozen=True, slots=True)
class Gazetteer:
    entries: tuple[GazetteerEntry, ...]
    by_name: dict[str, tuple[GazetteerEntry, ...]] = field(repr=False)
    country_qualifiers: frozenset[str] = DEFAULT_COUNTRY_QUALIFIERS

    @classmethod
    def build(
        cls,
        entries: tuple[GazetteerEntry, ...],
        country_qualifiers: frozenset[str] = DEFAULT_COUNTRY_QUALIFIERS,
    ) -> "Gazetteer":
        by_name: dict[str, list[GazetteerEntry]] = {}
        for entry in entries:
            by_name.setdefault(normalize_label(entry.name), []).append(entry)
        return cls(
            entries=entries,
            by_name={name: tuple(group) for name, group in by_name.items()},
            country_qualifiers=country_qualifiers,
        )

    def resolve(self, label: str) -> SpatialMatch:
        """Match a (possibly qualified) label against the gazetteer.

        Pure and total: labels that fail qualifier parsing are looked up
        whole. One surviving candidate is a match, several are ambiguous.
        """
        try:
            parts = parse_label_qualifier(label)
        except ValidationError:
            parts = LabelParts(base=label.strip())
        candidates = self.by_name.get(normalize_label(parts.base), ())
        if parts.qualifier is not None:
            wanted = normalize_label(parts.qualifier)
            is_country = any(
                normalize_label(c) == wanted for c in self.country_qualifiers
            )
            candidates = tuple(
                entry
                for entry in candidates
                if normalize_label(entry.admin) == wanted
                or (not entry.admin.strip() and is_country)
            )
        if not candidates:
            return SpatialMatch(status=UNMATCHED)
        if len(candidates) == 1:
            return SpatialMatch(status=MATCHED, entries=candidates)
        return SpatialMatch(status=AMBIGUOUS, entries=candidates)


def parse_label_qualifier(label: str) -> LabelParts:
    """Split a single trailing parenthesized group off a label.

    Nested or non-trailing groups stay in the base; unbalanced
    parentheses are a validation error.
    """
    depth = 0
    for ch in label:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValidationError(f"unbalanced parentheses in label {label!r}")
    if depth != 0:
        raise ValidationError(f"unbalanced parentheses in label {label!r}")
    match = _TRAILING_GROUP.search(label)
    if match is None:
        return LabelParts(base=label.strip())
    qualifier = match.group(1).strip()
    if not qualifier:
        return LabelParts(base=label[: match.start()].strip())
    return LabelParts(base=label[: match.start()].strip(), qualifier=qualifier)


def resolve(label: str, gazetteer: Gazetteer) -> SpatialMatch:
    return gazetteer.resolve(label)


def load_gazetteer(
    file_content: str,
    country_qualifiers: frozenset[str] = DEFAULT_COUNTRY_QUALIFIERS,
) -> Gazetteer:
    """Parse a CSV gazetteer with header name,admin,class,lon,lat."""
    reader = csv.reader(io.StringIO(file_content))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("gazetteer is empty: missing header row") from None
    if [h.strip() for h in header] != _HEADER:
        raise FormatError(
            "gazetteer header must be " + ",".join(_HEADER)
        )
    entries: list[GazetteerEntry] = []
    for row_number, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(_HEADER):
            raise FormatError(
                f"row {row_number}: expected {len(_HEADER)} fields, found {len(row)}"
            )
        name, admin, feature_class, lon_text, lat_text = (
            unicodedata.normalize("NFC", value.strip()) for value in row
        )
        if not name:
            raise ValidationError(f"row {row_number}: empty name")
        if feature_class not in FEATURE_CLASSES:
            raise ValidationError(
                f"row {row_number}: unknown feature class {feature_class!r}"
            )
        try:
            lon, lat = float(lon_text), float(lat_text)
        except ValueError:
            raise ValidationError(
                f"row {row_number}: coordinates must be numbers"
            ) from None
        if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
            raise ValidationError(f"row {row_number}: coordinate out of range")
        entries.append(
            GazetteerEntry(
                name=name, admin=admin, feature_class=feature_class, lon=lon, lat=lat
            )
        )
    return Gazetteer.build(tuple(entries), country_qualifiers)


def distance_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance (haversine, spherical earth of radius 6371 km)."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(a))
