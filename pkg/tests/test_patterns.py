from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from terridoc.graph import enrich
from terridoc.notices import parse_notices
from terridoc.patterns import (
    CAP,
    CC,
    DET,
    LOW,
    NUM,
    PREP,
    PUNCT,
    default_lexicon,
    extract_from_notices,
    link_qualifiers,
    match_patterns,
    tokenize,
)
from terridoc.thesaurus import load_thesaurus

TITLE = (
    "Précis d'observation sur les eaux de Barèges et les eaux minérales "
    "de Bigorre et du Béarn"
)
LEGEND = "Théophile de Bourdeu est à l'origine de la mode du thermalisme pyrénéen"


def test_tokenize_tags_and_offsets():
    tokens = tokenize("les eaux de Barèges")
    assert [(t.surface, t.tag, t.start) for t in tokens] == [
        ("les", DET, 0),
        ("eaux", LOW, 4),
        ("de", PREP, 9),
        ("Barèges", CAP, 12),
    ]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_splits_lexicon_elisions():
    tokens = tokenize("d'Ossau")
    assert [(t.surface, t.tag, t.start) for t in tokens] == [
        ("d'", PREP, 0),
        ("Ossau", CAP, 2),
    ]
    # typographic apostrophe behaves the same
    tokens = tokenize("L’Europe")
    assert [t.tag for t in tokens] == [DET, CAP]
    # non-lexicon elisions stay whole
    (token,) = tokenize("aujourd'hui")
    assert token.surface == "aujourd'hui"


def test_tokenize_portmanteau_forms_are_prepositions():
    tokens = tokenize("du vin des Landes")
    assert [t.tag for t in tokens] == [PREP, LOW, PREP, CAP]


def test_tokenize_numbers_punctuation_and_compounds():
    tokens = tokenize("18e siècle, Bagnères-de-Bigorre !")
    assert [(t.surface, t.tag) for t in tokens] == [
        ("18e", NUM),
        ("siècle", LOW),
        (",", PUNCT),
        ("Bagnères-de-Bigorre", CAP),
        ("!", PUNCT),
    ]


def test_tokenize_sentence_boundaries():
    tokens = tokenize("Il dort. Pau est belle.")
    flags = {t.surface: t.sentence_initial for t in tokens if t.tag != PUNCT}
    assert flags == {"Il": True, "dort": False, "Pau": True, "est": False, "belle": False}


def test_tokenize_offsets_strictly_increase():
    text = "Précis d'observation, 18e siècle ! Voilà."
    tokens = tokenize(text)
    starts = [t.start for t in tokens]
    assert starts == sorted(starts) and len(set(starts)) == len(starts)
    for token in tokens:
        assert text[token.start : token.end] == token.surface


def test_match_patterns_title_yields_exactly_three_candidates():
    candidates = match_patterns(tokenize(TITLE), "n1", text=TITLE)
    assert [(c.qualifier_np, c.proper_name, c.pattern_id) for c in candidates] == [
        ("eaux", "Barèges", "P1"),
        ("eaux minérales", "Bigorre", "P1"),
        ("eaux minérales", "Béarn", "P2"),
    ]


def test_match_patterns_legend_bridges_the_person_name():
    candidates = match_patterns(tokenize(LEGEND), "n1", text=LEGEND)
    assert [(c.qualifier_np, c.proper_name, c.pattern_id) for c in candidates] == [
        (None, "Théophile de Bourdeu", "P3")
    ]


def test_match_patterns_no_capitalized_tokens():
    assert match_patterns(tokenize("les eaux thermales du sud"), "n1") == []


def test_match_patterns_spans_slice_the_source():
    for text in (TITLE, LEGEND, "Vue du pic du Midi de Bigorre et des vallées"):
        for candidate in match_patterns(tokenize(text), "n1", text=text):
            start, end = candidate.span
            assert text[start:end] == candidate.proper_name
            assert candidate.proper_name[0].isupper()


def test_match_patterns_sentence_initial_single_cap_is_skipped():
    candidates = match_patterns(tokenize("Précis des usages. Pau."), "n1")
    assert candidates == []


def test_match_patterns_mid_sentence_single_cap_is_kept():
    (candidate,) = match_patterns(tokenize("la ville de nos rêves est Pau"), "n1")
    assert candidate.proper_name == "Pau"
    assert candidate.pattern_id == "P3"


def test_match_patterns_elided_determiner_does_not_shield_names():
    (candidate,) = match_patterns(tokenize("Il visite l'Espagne"), "n1")
    assert candidate.proper_name == "Espagne"


def test_match_patterns_qualifier_keeps_four_rightmost_words():
    text = "les belles grandes vieilles hautes eaux de Gavarnie"
    (candidate,) = match_patterns(tokenize(text), "n1", text=text)
    assert candidate.qualifier_np == "grandes vieilles hautes eaux"
    assert candidate.proper_name == "Gavarnie"


def test_match_patterns_coordination_shares_qualifier():
    text = "les vallées de Campan et d'Aure et du Louron"
    candidates = match_patterns(tokenize(text), "n1", text=text)
    assert [(c.qualifier_np, c.proper_name, c.pattern_id) for c in candidates] == [
        ("vallées", "Campan", "P1"),
        ("vallées", "Aure", "P2"),
        ("vallées", "Louron", "P2"),
    ]


def test_match_patterns_tokens_feed_at_most_one_candidate():
    text = "les eaux de Barèges et du Béarn près de Luz"
    candidates = match_patterns(tokenize(text), "n1", text=text)
    spans = [c.span for c in candidates]
    for i, span_a in enumerate(spans):
        for span_b in spans[i + 1 :]:
            assert span_a[1] <= span_b[0] or span_b[1] <= span_a[0]


def test_match_patterns_multiword_cap_run_with_particles():
    text = "une carte du Pont d'Espagne"
    (candidate,) = match_patterns(tokenize(text), "n1", text=text)
    assert candidate.proper_name == "Pont d'Espagne"
    assert candidate.qualifier_np == "carte"


@given(st.text(max_size=120))
def test_match_patterns_is_total_and_deterministic(text):
    tokens = tokenize(text)
    first = match_patterns(tokens, "n1", text=text)
    second = match_patterns(tokens, "n1", text=text)
    assert first == second
    for candidate in first:
        assert (candidate.qualifier_np is not None) == (candidate.pattern_id in ("P1", "P2"))


def _graph_for_linking():
    thesaurus = load_thesaurus(
        "\n".join(
            [
                '{"id": "em", "pref": "Eau minérale"}',
                '{"id": "vt", "pref": "Vallées"}',
            ]
        )
    )
    return enrich(
        [("Eau minérale", frozenset({"n1"})), ("Vallées", frozenset({"n1"}))], thesaurus
    )


def test_link_qualifiers_exact_then_plural_stripped():
    graph = _graph_for_linking()
    text = "les eaux minérales de Bigorre"
    candidates = match_patterns(tokenize(text), "n1", text=text)
    ((candidate, node_id),) = link_qualifiers(candidates, graph)
    assert candidate.qualifier_np == "eaux minérales"
    assert node_id == "eau_minerale"  # both sides stripped of plural s/x


def test_link_qualifiers_exact_match_wins():
    graph = _graph_for_linking()
    text = "les vallées de Campan"
    ((_, node_id),) = link_qualifiers(match_patterns(tokenize(text), "n1", text=text), graph)
    assert node_id == "vallees"


def test_link_qualifiers_unmatched_and_absent():
    graph = _graph_for_linking()
    text = "les forges de Bielle"
    ((_, node_id),) = link_qualifiers(match_patterns(tokenize(text), "n1", text=text), graph)
    assert node_id is None
    bare = match_patterns(tokenize("la belle Bigorre"), "n1")
    ((candidate, node_id),) = link_qualifiers(bare, graph)
    assert candidate.qualifier_np is None and node_id is None


def test_extract_from_notices_orders_by_notice_then_span():
    content = """<NOTICES>
      <NOTICE id="n2"><TITRE>les eaux de Cauterets</TITRE></NOTICE>
      <NOTICE id="n1">
        <TITRE>les vallées de Campan</TITRE>
        <LEGENDE>Vue des thermes de Luz</LEGENDE>
      </NOTICE>
    </NOTICES>"""
    notices = parse_notices(content)
    candidates = extract_from_notices(notices)
    assert [(c.notice_id, c.proper_name) for c in candidates] == [
        ("n1", "Campan"),
        ("n1", "Luz"),
        ("n2", "Cauterets"),
    ]


def test_default_lexicon_is_loaded_once():
    assert default_lexicon() is default_lexicon()
    assert "d'" in default_lexicon().elidable
