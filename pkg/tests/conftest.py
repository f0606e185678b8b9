from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from relfix.core import EndoMap, RelatedSet, default_names
from relfix.textio import load_model

sys.path.insert(0, str(Path(__file__).parent))

MODELS = Path(__file__).resolve().parent.parent / "models"

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def related_sets(draw, min_n=0, max_n=4):
    n = draw(st.integers(min_n, max_n))
    rows = tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
    return RelatedSet(default_names(n), rows)


@st.composite
def instances(draw, min_n=0, max_n=4):
    R = draw(related_sets(min_n, max_n))
    f = EndoMap(tuple(draw(st.integers(0, R.n - 1)) for _ in range(R.n)))
    return R, f


@pytest.fixture(scope="session")
def paper_model():
    return load_model(MODELS / "paper.rel")


@pytest.fixture
def swap(paper_model):
    return paper_model.relsets["swap"], paper_model.maps["f"][1]


@pytest.fixture
def diamond(paper_model):
    return paper_model.relsets["diamond"], paper_model.maps["g"][1]


@pytest.fixture
def kleene_fixture(paper_model):
    return paper_model.relsets["kleene"], paper_model.maps["h"][1]


@st.composite
def hyp_instances(draw, rel_atoms=(), map_conds=(), min_n=1, max_n=4):
    """Instances meeting the given hypotheses, drawn from precomputed pools."""
    from relfix.core import related_set_from_code
    from relfix.modelgen import enumerate_endo_maps
    from relfix.search import relation_pool

    n = draw(st.integers(min_n, max_n))
    pool = relation_pool(n, tuple(rel_atoms), False)
    if not pool:
        return draw(st.nothing())
    R = related_set_from_code(n, draw(st.sampled_from(pool)))
    maps = list(enumerate_endo_maps(R, map_conds))
    if not maps:
        return draw(st.nothing())
    return R, draw(st.sampled_from(maps))


# Filled by the acceptance tests; echoed once at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
