"""Catalog notice parsing: NOTICES markup and composite subject headings."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from xml.etree import ElementTree

from .errors import FormatError, ValidationError

# the heading separator is exactly two hyphen-minus characters; surrounding
# whitespace belongs to the separator, em/en dashes never split
_SEPARATOR = re.compile(r"\s*--\s*")


@dataclass(frozen=True, slots=True)
class SubjectHeading:
    terms: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Notice:
    id: str
    headings: tuple[SubjectHeading, ...] = ()
    title: str | None = None
    legend: str | None = None


def split_heading(raw: str) -> SubjectHeading:
    """Split a composite heading into its ordered terms.

    Empty pieces between consecutive separators are dropped; a heading
    reduced to nothing is a validation error.
    """
    pieces = (piece.strip() for piece in _SEPARATOR.split(raw))
    terms = tuple(piece for piece in pieces if piece)
    if not terms:
        raise ValidationError(f"heading has no terms: {raw!r}")
    return SubjectHeading(terms=terms)


def head_term(heading: SubjectHeading) -> str:
    """First term of a heading, the entry the notice is primarily indexed under."""
    return heading.terms[0]


def parse_notices(file_content: str) -> list[Notice]:
    """Parse a NOTICES document into notice records, in document order.

    DEE children become headings, TITRE and LEGENDE (at most one each)
    become optional free-text fields, unknown children are skipped. All
    text is NFC-normalized and trimmed.
    """
    try:
        root = ElementTree.fromstring(file_content)
    except ElementTree.ParseError as exc:
        raise FormatError(f"notices markup: {exc}") from exc
    if root.tag != "NOTICES":
        raise FormatError(f"expected root element NOTICES, found {root.tag!r}")
    notices: list[Notice] = []
    seen: set[str] = set()
    for element in root:
        if element.tag != "NOTICE":
            continue
        notice_id = element.get("id")
        if notice_id is None or not notice_id.strip():
            raise ValidationError("NOTICE element without an id attribute")
        notice_id = _clean(notice_id)
        if notice_id in seen:
            raise ValidationError(f"duplicate notice id {notice_id!r}")
        seen.add(notice_id)
        headings: list[SubjectHeading] = []
        title: str | None = None
        legend: str | None = None
        for child in element:
            text = _clean("".join(child.itertext()))
            if child.tag == "DEE":
                try:
                    headings.append(split_heading(text))
                except ValidationError as exc:
                    raise ValidationError(f"notice {notice_id!r}: {exc}") from exc
            elif child.tag == "TITRE":
                if title is not None:
                    raise ValidationError(f"notice {notice_id!r}: more than one TITRE")
                title = text or None
            elif child.tag == "LEGENDE":
                if legend is not None:
                    raise ValidationError(f"notice {notice_id!r}: more than one LEGENDE")
                legend = text or None
            # unknown children are tolerated so newer notice exports still load
        notices.append(
            Notice(id=notice_id, headings=tuple(headings), title=title, legend=legend)
        )
    return notices


def _clean(text: str) -> str:
    return unicodedata.normalize("NFC", text).strip()
