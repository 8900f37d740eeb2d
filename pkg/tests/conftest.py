from __future__ import annotations

from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fig1_dir() -> Path:
    return DATA / "fig1"


@pytest.fixture(scope="session")
def spatial_dir() -> Path:
    return DATA / "spatial"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return DATA / "golden"


@pytest.fixture(scope="session")
def fig1_notices(fig1_dir: Path):
    from terridoc.notices import parse_notices

    return parse_notices((fig1_dir / "notices.xml").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fig1_thesaurus(fig1_dir: Path):
    from terridoc.thesaurus import load_thesaurus

    return load_thesaurus((fig1_dir / "thesaurus.jsonl").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fig1_gazetteer(fig1_dir: Path):
    from terridoc.gazetteer import load_gazetteer

    return load_gazetteer((fig1_dir / "gazetteer.csv").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fig1_graph(fig1_notices, fig1_thesaurus):
    from terridoc.graph import enrich, extract_corpus_terms

    return enrich(extract_corpus_terms(fig1_notices), fig1_thesaurus)


def pytest_runtest_logreport(report):
    # one visible verdict line per acceptance criterion
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1].removeprefix("test_")
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\n[{verdict}] acceptance: {name}", flush=True)
