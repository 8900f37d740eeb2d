"""Lexico-syntactic scan of notice free text.

Tokenization tags a closed-class lexicon (determiners, prepositions,
conjunctions) and otherwise classifies words by their first character.
Three patterns produce toponym candidates from titles and legends:

  P1  [DET?] LOW+ PREP CAP+           qualified name ("les eaux de Barèges")
  P2  P1 (CC [PREP|DET]? CAP+)+       coordination sharing the qualifier
  P3  leftover CAP+ runs              bare names, validated downstream

Capitalized runs bridge the particles de/du/des/d'/de la, so compound
names like "Théophile de Bourdeu" stay in one candidate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .graph import TerridocGraph
from .thesaurus import normalize_label

DET = "DET"
PREP = "PREP"
CC = "CC"
PUNCT = "PUNCT"
CAP = "CAP"
LOW = "LOW"
NUM = "NUM"

QUALIFIER_MAX_TOKENS = 4

_SENTENCE_END = frozenset({".", "!", "?"})
_WORD = re.compile(r"\w+(?:[-'’]\w+)*")
_TOKEN = re.compile(r"\w+(?:[-'’]\w+)*|[^\w\s]")
# longest particle sequence first, so "de la" wins over "de"
_BRIDGES = (("de", "la"), ("de",), ("du",), ("des",), ("d'",))


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    start: int
    tag: str
    sentence_initial: bool = False

    @property
    def end(self) -> int:
        return self.start + len(self.surface)


@dataclass(frozen=True, slots=True)
class ExtractionCandidate:
    proper_name: str
    qualifier_np: str | None
    notice_id: str
    span: tuple[int, int]
    pattern_id: str  # P1 | P2 | P3


@dataclass(frozen=True, slots=True)
class Lexicon:
    determiners: frozenset[str]
    prepositions: frozenset[str]
    conjunctions: frozenset[str]

    @property
    def elidable(self) -> frozenset[str]:
        return frozenset(
            w
            for w in self.determiners | self.prepositions | self.conjunctions
            if w.endswith("'")
        )


def load_lexicon(directory: str | Path) -> Lexicon:
    base = Path(directory)
    return Lexicon(
        determiners=_read_word_list(base / "det.txt"),
        prepositions=_read_word_list(base / "prep.txt"),
        conjunctions=_read_word_list(base / "cc.txt"),
    )


def _read_word_list(path: Path) -> frozenset[str]:
    words: set[str] = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.lstrip().startswith("#"):
            continue
        word = normalize_label(line)
        if word:
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    with resources.as_file(resources.files("terridoc") / "lexicon") as directory:
        return load_lexicon(directory)


def tokenize(text: str, lexicon: Lexicon | None = None) -> list[Token]:
    """Split text into tagged tokens with character offsets.

    Elided particles ("d'Ossau") split into particle plus remainder when
    the particle is in the lexicon. Sentence boundaries are ., ! and ?;
    the first word after one is flagged sentence_initial.
    """
    lex = lexicon or default_lexicon()
    tokens: list[Token] = []
    sentence_start = True
    for match in _TOKEN.finditer(text):
        piece = match.group(0)
        if _WORD.fullmatch(piece):
            for surface, offset in _split_elision(piece, lex):
                tokens.append(
                    Token(
                        surface=surface,
                        start=match.start() + offset,
                        tag=_tag_word(surface, lex),
                        sentence_initial=sentence_start,
                    )
                )
                sentence_start = False
        else:
            tokens.append(Token(surface=piece, start=match.start(), tag=PUNCT))
            if piece in _SENTENCE_END:
                sentence_start = True
    return tokens


def _split_elision(piece: str, lex: Lexicon) -> list[tuple[str, int]]:
    for k, ch in enumerate(piece):
        if ch in "'’":
            prefix = piece[: k + 1]
            if normalize_label(prefix) in lex.elidable:
                rest = piece[k + 1 :]
                if rest:
                    return [(prefix, 0), (rest, k + 1)]
                return [(prefix, 0)]
            break
    return [(piece, 0)]


def _tag_word(surface: str, lex: Lexicon) -> str:
    # lexicon beats case, and prepositions beat determiners for the
    # portmanteau forms du/des shared by both lists
    norm = normalize_label(surface)
    if norm in lex.prepositions:
        return PREP
    if norm in lex.determiners:
        return DET
    if norm in lex.conjunctions:
        return CC
    if surface[0].isdigit():
        return NUM
    if surface[0].isupper():
        return CAP
    return LOW


def match_patterns(
    tokens: list[Token], notice_id: str, *, text: str | None = None
) -> list[ExtractionCandidate]:
    """Run P1/P2/P3 left to right; each token feeds at most one candidate.

    When the source text is given, proper names are exact slices of it;
    otherwise token surfaces are joined with single spaces.
    """
    consumed = [False] * len(tokens)
    candidates: list[ExtractionCandidate] = []

    def cap_run(i: int) -> tuple[int, int] | None:
        # returns (exclusive end, number of CAP tokens) of the run at i
        if i >= len(tokens) or tokens[i].tag != CAP:
            return None
        j, count = i + 1, 1
        while j < len(tokens):
            if tokens[j].tag == CAP:
                j, count = j + 1, count + 1
                continue
            bridged = _bridge_end(tokens, j)
            if (
                bridged is not None
                and bridged < len(tokens)
                and tokens[bridged].tag == CAP
            ):
                j, count = bridged + 1, count + 1
                continue
            break
        return j, count

    def emit(first: int, last_exclusive: int, qualifier: str | None, pattern: str) -> None:
        span = (tokens[first].start, tokens[last_exclusive - 1].end)
        if text is not None:
            name = text[span[0] : span[1]]
        else:
            name = " ".join(t.surface for t in tokens[first:last_exclusive])
        candidates.append(
            ExtractionCandidate(
                proper_name=name,
                qualifier_np=qualifier,
                notice_id=notice_id,
                span=span,
                pattern_id=pattern,
            )
        )
        for index in range(first, last_exclusive):
            consumed[index] = True

    i = 0
    while i < len(tokens):
        p1 = _try_p1(tokens, i, cap_run)
        if p1 is None:
            i += 1
            continue
        low_start, prep_index, run_end = p1
        qualifier_tokens = tokens[low_start:prep_index][-QUALIFIER_MAX_TOKENS:]
        qualifier = " ".join(t.surface for t in qualifier_tokens)
        emit(prep_index + 1, run_end, qualifier, "P1")
        for index in range(i, prep_index + 1):
            consumed[index] = True
        k = run_end
        while True:
            extension = _try_coordination(tokens, k, cap_run)
            if extension is None:
                break
            name_start, ext_end = extension
            emit(name_start, ext_end, qualifier, "P2")
            for index in range(k, name_start):
                consumed[index] = True
            k = ext_end
        i = k

    i = 0
    while i < len(tokens):
        if consumed[i] or tokens[i].tag != CAP:
            i += 1
            continue
        run = cap_run(i)
        assert run is not None
        run_end, cap_count = run
        if any(consumed[i:run_end]):
            i = run_end
            continue
        # a lone capitalized word at a sentence start is just capitalization
        if not (cap_count == 1 and tokens[i].sentence_initial):
            emit(i, run_end, None, "P3")
        i = run_end

    candidates.sort(key=lambda c: c.span)
    return candidates


def _try_p1(tokens, i, cap_run):
    j = i
    if j < len(tokens) and tokens[j].tag == DET:
        j += 1
    low_start = j
    while j < len(tokens) and tokens[j].tag == LOW:
        j += 1
    if j == low_start:
        return None
    if j >= len(tokens) or tokens[j].tag != PREP:
        return None
    run = cap_run(j + 1)
    if run is None:
        return None
    return low_start, j, run[0]


def _try_coordination(tokens, k, cap_run):
    if k >= len(tokens) or tokens[k].tag != CC:
        return None
    j = k + 1
    if j < len(tokens) and tokens[j].tag in (PREP, DET):
        j += 1
    run = cap_run(j)
    if run is None:
        return None
    return j, run[0]


def _bridge_end(tokens: list[Token], j: int) -> int | None:
    for sequence in _BRIDGES:
        k = j
        for word in sequence:
            if (
                k < len(tokens)
                and tokens[k].tag in (PREP, DET)
                and normalize_label(tokens[k].surface) == word
            ):
                k += 1
            else:
                break
        else:
            return k
    return None


def link_qualifiers(
    candidates: list[ExtractionCandidate], graph: TerridocGraph
) -> list[tuple[ExtractionCandidate, str | None]]:
    """Attach each qualifier to a graph node, or None.

    Exact normalized-label match first; failing that, both sides are
    compared with a final 's' or 'x' stripped from each word. Stripped
    collisions resolve to the smallest node id.
    """
    exact: dict[str, str] = {}
    stripped: dict[str, str] = {}
    for node_id in sorted(graph.nodes):
        norm = normalize_label(graph.nodes[node_id].label)
        exact.setdefault(norm, node_id)
        stripped.setdefault(_strip_plurals(norm), node_id)
    linked: list[tuple[ExtractionCandidate, str | None]] = []
    for candidate in candidates:
        if candidate.qualifier_np is None:
            linked.append((candidate, None))
            continue
        norm = normalize_label(candidate.qualifier_np)
        node_id = exact.get(norm)
        if node_id is None:
            node_id = stripped.get(_strip_plurals(norm))
        linked.append((candidate, node_id))
    return linked


def _strip_plurals(normalized: str) -> str:
    words = [
        w[:-1] if len(w) > 1 and w.endswith(("s", "x")) else w
        for w in normalized.split(" ")
    ]
    return " ".join(words)


def extract_from_notices(notices, lexicon: Lexicon | None = None) -> list[ExtractionCandidate]:
    """Scan every notice title and legend; merge candidates in (notice, span) order."""
    out: list[ExtractionCandidate] = []
    for notice in notices:
        for source in (notice.title, notice.legend):
            if not source:
                continue
            tokens = tokenize(source, lexicon)
            out.extend(match_patterns(tokens, notice.id, text=source))
    out.sort(key=lambda c: (c.notice_id, c.span))
    return out
