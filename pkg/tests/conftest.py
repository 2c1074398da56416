"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's own code paths:
dominance is re-derived with explicit loops, and bi-objective
supportedness is re-derived from the lower convex chain, so they can
stand as independent ground truth for the LP-based classifier.
"""

from fractions import Fraction as F

import pytest

from ndsupport.outcomes import validate_instance

# The four-point, three-objective counterexample set used throughout.
COUNTEREXAMPLE_ROWS = [[2, 9, 1], [3, 6, 1], [8, 3, 1], [6, 5, 1]]

# Its two-objective sibling with extra dominated points.
FIGURE_2D_ROWS = [[2, 9], [3, 6], [8, 3], [6, 5], [3, 9], [7, 7]]


@pytest.fixture
def counterexample_set():
    return validate_instance(COUNTEREXAMPLE_ROWS)


@pytest.fixture
def fig2d_set():
    return validate_instance(FIGURE_2D_ROWS)


def random_rows(rng, n, p, lo=0, hi=100):
    return [[rng.randint(lo, hi) for _ in range(p)] for _ in range(n)]


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def oracle_dominates(a, b):
    """Component-wise dominance rewritten from scratch (index loop)."""
    if len(a) != len(b):
        raise AssertionError("oracle misuse: unequal dimensions")
    some_strict = False
    for k in range(len(a)):
        if a[k] > b[k]:
            return False
        if a[k] < b[k]:
            some_strict = True
    return some_strict


def oracle_nondominated(rows):
    """Pairwise brute-force filter returning the surviving rows."""
    rows = [tuple(F(c) if not isinstance(c, F) else c for c in row) for row in rows]
    unique = []
    for row in rows:
        if row not in unique:
            unique.append(row)
    keep = []
    for row in unique:
        dominated = False
        for other in unique:
            if other != row and oracle_dominates(other, row):
                dominated = True
                break
        if not dominated:
            keep.append(row)
    return keep


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_labels_2d(rows):
    """Bi-objective supportedness oracle via the lower convex chain.

    Returns a dict mapping each distinct coordinate pair to one of
    'dominated', 'unsupported', 'supported', 'extreme-supported'.
    Exact arithmetic; completely independent of any LP.
    """
    rows = [tuple(F(c) if not isinstance(c, F) else c for c in row) for row in rows]
    nondom = oracle_nondominated(rows)
    staircase = sorted(nondom)
    chain = []
    for pt in staircase:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) <= 0:
            chain.pop()
        chain.append(pt)
    chain_set = set(chain)
    labels = {}
    for row in set(rows):
        if row not in set(nondom):
            labels[row] = "dominated"
        elif row in chain_set:
            labels[row] = "extreme-supported"
        else:
            on_edge = False
            for a, b in zip(chain, chain[1:]):
                if a[0] <= row[0] <= b[0] and _cross(a, b, row) == 0:
                    on_edge = True
                    break
            labels[row] = "supported" if on_edge else "unsupported"
    return labels
