"""Shared fixtures and instance factories for the test suite."""

import random

import pytest

from triphy import from_rows
from triphy.errors import TriphyError

# Five-cycle obstruction instances reconstructed from the case analysis:
# cycle a0,b0,c0,b1,c1 with one row per cycle edge; the three edges not
# touching a0 carry witness states of character a per case.
CASE_I_ROWS = [(0, 0, 2), (1, 0, 0), (2, 1, 0), (2, 1, 1), (0, 2, 1)]
CASE_II_ROWS = [(0, 0, 2), (2, 0, 0), (1, 1, 0), (2, 1, 1), (0, 2, 1)]
CASE_III_ROWS = [(0, 0, 2), (2, 0, 0), (2, 1, 0), (2, 1, 1), (0, 2, 1)]

# Four characters, all triples chordal, one global chordless four-color
# four-cycle; admits a perfect phylogeny after two F' chords. Found by
# seeded random search and pinned here after oracle confirmation.
CHORDLESS4_ROWS = [(0, 0, 0, 0), (1, 0, 1, 1), (1, 1, 2, 2), (2, 2, 0, 2)]

# more instances from the same search whose full test fires the F' stage
FPRIME_ROWS = [
    CHORDLESS4_ROWS,
    [(0, 0, 0, 0), (1, 1, 1, 1), (1, 0, 2, 2), (2, 2, 1, 0)],
    [(0, 0, 0, 0), (1, 0, 1, 1), (2, 1, 1, 2), (0, 2, 2, 2), (1, 0, 1, 1)],
    [(0, 0, 0, 0), (1, 1, 1, 1), (1, 2, 2, 0), (2, 1, 0, 2)],
    [(0, 0, 0, 0), (1, 0, 1, 1), (2, 1, 2, 0), (2, 2, 1, 2)],
]

FOUR_GAMETES = [(0, 0), (0, 1), (1, 0), (1, 1)]

# Three-state pair whose partition intersection graph is a six-cycle.
SIX_CYCLE_PAIR = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]


def random_matrices(seed, count, n_range=(1, 6), m_range=(1, 5), states=3):
    """Deterministic corpus of random matrices within the given bounds."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        m = rng.randint(*m_range)
        rows = [tuple(rng.randint(0, states - 1) for _ in range(m)) for _ in range(n)]
        try:
            out.append(from_rows(rows))
        except TriphyError:
            continue
    return out


@pytest.fixture(scope="session")
def corpus():
    """The differential-testing corpus: 1000 mixed instances plus 500
    skewed toward larger sizes so incompatible cases are well represented."""
    return random_matrices(20260808, 1000) + random_matrices(
        4242, 500, n_range=(5, 6), m_range=(4, 5)
    )


@pytest.fixture(scope="session")
def verdicts(corpus):
    from triphy import full_test

    return [full_test(m) for m in corpus]
