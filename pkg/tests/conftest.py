import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pnbcheck.automata import compose_nfa, lts_as_nfa  # noqa: E402
from pnbcheck.net import compose  # noqa: E402
from pnbcheck.oracle import random_pnb  # noqa: E402
from pnbcheck.semantics import StepMode, all_markings, build_two_lts  # noqa: E402

MODELS = Path(__file__).parent.parent / "src" / "pnbcheck" / "models"


@pytest.fixture
def models():
    return MODELS


def composable_pair(seed):
    rng = random.Random(seed)
    k = rng.randint(0, 2)
    m = random_pnb(2 * seed, right=k, name="M")
    n = random_pnb(2 * seed + 1, left=k, name="N")
    return m, n


def isomorphism_mismatches(m, n):
    """Symmetric difference between the composed semantics and the semantics
    of the composed net, under (marking of m, marking of n) -> qualified union."""
    a = lts_as_nfa(build_two_lts(m, all_markings(m), StepMode.FULL))
    b = lts_as_nfa(build_two_lts(n, all_markings(n), StepMode.FULL))
    prod = compose_nfa(a, b)

    def glue(pair):
        mm, nm = pair
        return frozenset("L." + p for p in mm) | frozenset("R." + p for p in nm)

    mapped = {
        (glue(prod.origin[s]), lw, rw, glue(prod.origin[d]))
        for s, lw, rw, d in prod.transitions
    }
    states = {glue(prod.origin[s]) for s in prod.states}
    c = compose(m, n)
    lts = build_two_lts(c, all_markings(c), StepMode.FULL)
    return (mapped ^ set(lts.transitions)) | (states ^ set(lts.states))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
