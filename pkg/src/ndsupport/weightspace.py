"""Weight-space cells and the projected decomposition of the simplex.

For a non-dominated point y, its cell is the set of normalized
nonnegative weights under which y is weighted-sum minimal over the
whole non-dominated set.  Cells are kept as exact half-space lists
(over the full weight space, simplex equality included); for three
objectives the cell is additionally projected to the first two weight
coordinates and its polygon vertices are enumerated exactly.

Vertex enumeration stays deliberately low-tech: intersect boundary
line pairs, keep the feasible intersections, take their exact 2-D
convex hull.  That is robust against redundant half-spaces (which are
retained, not minimized) and returns degenerate cells - segments or
single points, the signature of weakly-supported-only points - rather
than dropping them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classify import WeightVector
from .errors import ValidationError
from .outcomes import OutcomePoint, OutcomeSet, filter_nondominated
from .ratlp import (
    EQUAL,
    GREATER_EQUAL,
    LinearConstraint,
    LinearProgram,
    OPTIMAL,
    lp_feasible,
    lp_solve,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

Point2 = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class WeightCell:
    """H-representation of one cell, with projected vertices for p = 3.

    Projected vertices live in (l1, l2) with l3 = 1 - l1 - l2 and are
    listed counter-clockwise without repetition.  They are present
    exactly when p = 3; the H-representation is always present and may
    contain redundant half-spaces.
    """

    point_id: str
    hrep: tuple[LinearConstraint, ...]
    projected_vertices: Optional[tuple[Point2, ...]]
    is_full_dimensional: bool
    is_empty: bool


def _cell_hrep(y: OutcomePoint, yn: OutcomeSet) -> tuple[LinearConstraint, ...]:
    p = yn.p
    cons = []
    for i in range(p):
        coeffs = [_ZERO] * p
        coeffs[i] = _ONE
        cons.append(LinearConstraint(coeffs, GREATER_EQUAL, _ZERO))
    cons.append(LinearConstraint((_ONE,) * p, EQUAL, _ONE))
    for other in yn:
        if other.id == y.id:
            continue
        diff = tuple(o - a for o, a in zip(other.coords, y.coords))
        cons.append(LinearConstraint(diff, GREATER_EQUAL, _ZERO))
    return tuple(cons)


def _is_full_dimensional(hrep, p: int) -> bool:
    """Can every inequality be satisfied strictly at once (relative to
    the simplex)?  Decided by maximizing a common slack t."""
    cons = []
    for con in hrep:
        coeffs = con.coeffs + (_ZERO,) if con.relation == EQUAL else con.coeffs + (-_ONE,)
        cons.append(LinearConstraint(coeffs, con.relation, con.rhs))
    objective = (_ZERO,) * p + (_ONE,)
    outcome = lp_solve(LinearProgram("max", objective, tuple(cons)))
    return outcome.status == OPTIMAL and outcome.value > 0


def _convex_hull_ccw(points: list[Point2]) -> tuple[Point2, ...]:
    """Exact monotone-chain hull, counter-clockwise, starting at the
    lexicographically smallest vertex.  Collinear interior points are
    dropped; degenerate inputs yield a segment or a single point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point2] = []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list[Point2] = []
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all candidates collinear
        return tuple(sorted(set(hull)))
    return tuple(hull)


def _project_hrep(hrep, p: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Substitute l3 = 1 - l1 - l2: each inequality becomes
    a*l1 + b*l2 >= c.  Only valid for p = 3."""
    assert p == 3
    projected = []
    for con in hrep:
        if con.relation == EQUAL:
            continue  # the simplex equality is implicit after substitution
        c1, c2, c3 = con.coeffs
        projected.append((c1 - c3, c2 - c3, con.rhs - c3))
    return projected


def _projected_vertices(hrep, p: int) -> tuple[Point2, ...]:
    ineqs = _project_hrep(hrep, p)
    for a, b, c in ineqs:
        if a == 0 and b == 0 and c > 0:
            return ()  # unsatisfiable row: empty cell

    def feasible(q: Point2) -> bool:
        return all(a * q[0] + b * q[1] >= c for a, b, c in ineqs)

    candidates: list[Point2] = []
    m = len(ineqs)
    for i in range(m):
        a1, b1, c1 = ineqs[i]
        for j in range(i + 1, m):
            a2, b2, c2 = ineqs[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            q = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)
            if feasible(q):
                candidates.append(q)
    return _convex_hull_ccw(candidates)


def weight_cell(y: OutcomePoint, yn: OutcomeSet) -> WeightCell:
    """The cell of weights under which y is weighted-sum minimal.

    Emptiness is decided by an exact feasibility program; the cell is
    empty exactly when y is unsupported.  Redundant half-spaces are
    retained.
    """
    if y not in yn:
        raise ValidationError(
            f"point {y.id!r} with coords {y.coords} is not in the given set"
        )
    hrep = _cell_hrep(y, yn)
    nonempty, _ = lp_feasible(hrep, yn.p)
    vertices = None
    if yn.p == 3:
        vertices = _projected_vertices(hrep, 3) if nonempty else ()
    return WeightCell(
        point_id=y.id,
        hrep=hrep,
        projected_vertices=vertices,
        is_full_dimensional=_is_full_dimensional(hrep, yn.p) if nonempty else False,
        is_empty=not nonempty,
    )


def decompose(outcome_set: OutcomeSet) -> list[WeightCell]:
    """One cell per weakly supported non-dominated point.

    Cells of distinct points have disjoint interiors relative to the
    simplex, and together the cells cover the whole closed simplex.
    Degenerate (lower-dimensional) cells are included: they belong to
    the weakly-supported-only points.
    """
    yn = filter_nondominated(outcome_set).nondominated
    cells = []
    for y in yn:
        cell = weight_cell(y, yn)
        if not cell.is_empty:
            cells.append(cell)
    return cells


def cell_membership(
    lam: WeightVector, outcome_set: OutcomeSet
) -> tuple[str, tuple[str, ...]]:
    """Minimizing point id under lam, plus the full tie set.

    The tie set ranges over all stored points; the returned winner is
    the lexicographically smallest non-dominated minimizer, so its
    weight cell is guaranteed to contain lam.
    """
    if len(lam) != outcome_set.p:
        raise ValidationError(
            f"weight vector has {len(lam)} components, instance has {outcome_set.p}"
        )
    scores = {pt.id: lam.dot(pt.coords) for pt in outcome_set}
    best = min(scores.values())
    ties = tuple(pt.id for pt in outcome_set if scores[pt.id] == best)
    yn = filter_nondominated(outcome_set).nondominated
    winners = sorted(
        (pt.coords, pt.id) for pt in yn if scores[pt.id] == best
    )
    return winners[0][1], ties


def cell_interval(cell: WeightCell) -> Optional[tuple[Fraction, Fraction]]:
    """For p = 2: the cell as a closed interval in l1 (l2 = 1 - l1).

    Returns None for empty cells.  Intervals of neighbouring cells tile
    [0, 1], overlapping exactly at shared endpoints.
    """
    if cell.is_empty:
        return None
    lo, hi = _ZERO, _ONE
    for con in cell.hrep:
        if con.relation == EQUAL:
            continue
        if len(con.coeffs) != 2:
            raise ValidationError("cell_interval applies to two objectives only")
        a, b = con.coeffs
        slope = a - b  # substitute l2 = 1 - l1 into a*l1 + b*l2 >= rhs
        offset = con.rhs - b
        if slope == 0:
            continue  # vacuous or infeasible rows cannot occur in nonempty cells
        bound = offset / slope
        if slope > 0:
            lo = max(lo, bound)
        else:
            hi = min(hi, bound)
    return lo, hi
