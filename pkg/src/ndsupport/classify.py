"""Supportedness classification of non-dominated points.

Each of the competing notions of supportedness gets its own executable
test, reduced to an exact linear program:

* weighted-sum witness over the closed weight simplex (nonnegative
  weights) or its interior (strictly positive weights),
* membership in the non-dominated frontier of the convex hull,
* membership in the boundary versus interior of the upper image
  (convex hull plus the nonnegative orthant cone),
* vertex test on the upper image.

``classify_all`` combines them into one labelled report and refuses to
return anything if the tests disagree where they provably must agree;
``cross_check`` reports those agreements point by point without
raising.

Strict positivity is decided by a max-min program: maximize t subject
to every weight at least t, weights summing to one, and the candidate
point weighted-sum-minimal.  Over this closed region "optimal t > 0"
is a tolerance-free stand-in for the open condition "some strictly
positive witness exists", and the optimizer at t = 0 necessarily
carries a zero weight, certifying the weakly-supported-only case.

All functions are pure; per-point tests are independent of each other
and safe to evaluate concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConsistencyError, ValidationError
from .outcomes import OutcomePoint, OutcomeSet, filter_nondominated
from .ratlp import (
    EQUAL,
    GREATER_EQUAL,
    LESS_EQUAL,
    LinearConstraint,
    LinearProgram,
    OPTIMAL,
    lp_feasible,
    lp_solve,
    rational,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class WeightVector:
    """A normalized weighting vector: nonnegative entries summing to 1."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(rational(v) for v in self.values))
        if not self.values:
            raise ValidationError("empty weight vector")
        if any(v < 0 for v in self.values):
            raise ValidationError(f"negative weight component in {self.values}")
        if sum(self.values) != 1:
            raise ValidationError(f"weights must sum to 1 exactly, got {self.values}")

    @property
    def strictly_positive(self) -> bool:
        """Membership in the interior of the weight simplex."""
        return all(v > 0 for v in self.values)

    def dot(self, coords) -> Fraction:
        if len(coords) != len(self.values):
            raise ValidationError("weight/point dimension mismatch")
        return sum(l * c for l, c in zip(self.values, coords))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def barycenter(p: int) -> WeightVector:
    return WeightVector((Fraction(1, p),) * p)


class Label(enum.Enum):
    DOMINATED = "dominated"
    UNSUPPORTED = "unsupported"
    WEAKLY_SUPPORTED_ONLY = "weakly-supported-only"
    SUPPORTED = "supported"
    EXTREME_SUPPORTED = "extreme-supported"


@dataclass(frozen=True)
class Classification:
    """Per-point label record with the LP witnesses that justify it.

    The frontier/boundary flags are computed by the geometry tests and
    are meaningful for non-dominated points; dominated rows carry False.
    """

    point_id: str
    label: Label
    weak_witness: Optional[WeightVector]
    strict_witness: Optional[WeightVector]
    frontier: bool
    boundary: bool

    def __post_init__(self):
        label = self.label
        if label == Label.EXTREME_SUPPORTED:
            if self.strict_witness is None or not self.strict_witness.strictly_positive:
                raise ValidationError(
                    f"{self.point_id}: extreme-supported requires a strictly "
                    "positive witness"
                )
        if label in (Label.SUPPORTED, Label.EXTREME_SUPPORTED):
            if not (self.frontier and self.boundary):
                raise ValidationError(
                    f"{self.point_id}: supported labels require frontier and boundary"
                )
        if label == Label.WEAKLY_SUPPORTED_ONLY:
            if (
                self.weak_witness is None
                or all(v > 0 for v in self.weak_witness)
                or not self.boundary
                or self.frontier
            ):
                raise ValidationError(
                    f"{self.point_id}: weakly-supported-only requires a witness "
                    "with a zero component, boundary membership and no frontier"
                )
        if label == Label.UNSUPPORTED:
            if self.boundary or self.frontier or self.weak_witness or self.strict_witness:
                raise ValidationError(
                    f"{self.point_id}: unsupported points admit no witness and "
                    "lie off boundary and frontier"
                )


def _require_member(y: OutcomePoint, yn: OutcomeSet) -> None:
    if y not in yn:
        raise ValidationError(
            f"point {y.id!r} with coords {y.coords} is not in the given set"
        )


def _witness_program(y: OutcomePoint, yn: OutcomeSet) -> LinearProgram:
    """maximize t  s.t.  sum(lambda) = 1,  lambda_i >= t,
    lambda . (y' - y) >= 0 for every other point y'.  All variables
    (including t) are nonnegative, so feasibility alone decides weak
    supportedness and the sign of the optimum decides supportedness."""
    p = yn.p
    cons = [LinearConstraint((_ONE,) * p + (_ZERO,), EQUAL, _ONE)]
    for i in range(p):
        coeffs = [_ZERO] * (p + 1)
        coeffs[i] = _ONE
        coeffs[p] = -_ONE
        cons.append(LinearConstraint(coeffs, GREATER_EQUAL, _ZERO))
    for other in yn:
        if other.id == y.id:
            continue
        diff = tuple(o - a for o, a in zip(other.coords, y.coords)) + (_ZERO,)
        cons.append(LinearConstraint(diff, GREATER_EQUAL, _ZERO))
    objective = (_ZERO,) * p + (_ONE,)
    return LinearProgram("max", objective, tuple(cons))


def _solve_witness(
    y: OutcomePoint, yn: OutcomeSet
) -> Optional[tuple[WeightVector, Fraction]]:
    """Optimizing weight vector and optimal t, or None if no weight in
    the closed simplex makes y weighted-sum minimal."""
    outcome = lp_solve(_witness_program(y, yn))
    if outcome.status != OPTIMAL:
        return None
    lam = WeightVector(outcome.solution[: yn.p])
    _check_weight_certificate(lam, y, yn)
    return lam, outcome.value


def _check_weight_certificate(lam: WeightVector, y: OutcomePoint, yn: OutcomeSet) -> None:
    """Certificates are checked, never trusted: the witness must make y
    a weighted-sum minimizer over the whole set, exactly."""
    score = lam.dot(y.coords)
    for other in yn:
        if lam.dot(other.coords) < score:
            raise ConsistencyError(
                f"witness {tuple(lam)} fails its certificate: "
                f"{other.id} scores below {y.id}"
            )


def weakly_supported_witness(
    y: OutcomePoint, yn: OutcomeSet
) -> Optional[WeightVector]:
    """Some nonnegative normalized weight making y weighted-sum minimal
    over yn, or None (then y is unsupported).  yn must be an antichain
    containing y."""
    _require_member(y, yn)
    solved = _solve_witness(y, yn)
    return None if solved is None else solved[0]


def supported_witness(y: OutcomePoint, yn: OutcomeSet) -> Optional[WeightVector]:
    """A strictly positive witness for y, or None when the best
    attainable minimum weight component is exactly zero (or no witness
    exists at all)."""
    _require_member(y, yn)
    solved = _solve_witness(y, yn)
    if solved is None:
        return None
    lam, t = solved
    return lam if t > 0 else None


def is_on_frontier(y: OutcomePoint, yn: OutcomeSet) -> bool:
    """Is y on the non-dominated frontier of conv(yn)?

    Minimizes the coordinate sum of points of conv(yn) lying
    component-wise at or below y; the minimum equals sum(y) exactly
    when no convex combination other than y itself sits weakly below y.
    """
    _require_member(y, yn)
    pts = yn.points
    n = len(pts)
    objective = tuple(sum(pt.coords) for pt in pts)
    cons = [LinearConstraint((_ONE,) * n, EQUAL, _ONE)]
    for k in range(yn.p):
        cons.append(
            LinearConstraint(
                tuple(pt.coords[k] for pt in pts), LESS_EQUAL, y.coords[k]
            )
        )
    outcome = lp_solve(LinearProgram("min", objective, tuple(cons)))
    if outcome.status != OPTIMAL:
        raise ConsistencyError("frontier program is always feasible and bounded")
    return outcome.value == sum(y.coords)


def is_on_boundary_upper_image(y: OutcomePoint, yn: OutcomeSet) -> bool:
    """Is y on the boundary of conv(yn) + nonnegative orthant?

    Maximizes the radius eps by which a convex combination can sit
    below y in every coordinate simultaneously.  A positive optimum
    exhibits a ball around y inside the upper image (interior); an
    optimum of exactly zero puts y on the boundary.
    """
    _require_member(y, yn)
    pts = yn.points
    n = len(pts)
    cons = [LinearConstraint((_ONE,) * n + (_ZERO,), EQUAL, _ONE)]
    for k in range(yn.p):
        coeffs = tuple(pt.coords[k] for pt in pts) + (_ONE,)
        cons.append(LinearConstraint(coeffs, LESS_EQUAL, y.coords[k]))
    objective = (_ZERO,) * n + (_ONE,)
    outcome = lp_solve(LinearProgram("max", objective, tuple(cons)))
    if outcome.status != OPTIMAL:
        raise ConsistencyError("boundary program is always feasible and bounded")
    return outcome.value == 0


def is_extreme_supported(y: OutcomePoint, yn: OutcomeSet) -> bool:
    """Is y a vertex of the upper image?

    True exactly when y cannot be written as a convex combination of
    the other points pushed down by the nonnegative cone, i.e. the
    system over weights mu on yn minus y is infeasible.
    """
    _require_member(y, yn)
    others = [pt for pt in yn if pt.id != y.id]
    if not others:
        return True
    cons = [LinearConstraint((_ONE,) * len(others), EQUAL, _ONE)]
    for k in range(yn.p):
        cons.append(
            LinearConstraint(
                tuple(pt.coords[k] for pt in others), LESS_EQUAL, y.coords[k]
            )
        )
    feasible, _ = lp_feasible(cons, len(others))
    return not feasible


@dataclass(frozen=True)
class PointCheck:
    """Cross-check row: the two sides of each proven equivalence."""

    point_id: str
    weakly_supported: bool
    on_boundary: bool
    supported: bool
    on_frontier: bool
    boundary_equivalence_ok: bool
    frontier_equivalence_ok: bool
    biobjective_collapse_ok: Optional[bool]  # None unless p == 2

    @property
    def ok(self) -> bool:
        return (
            self.boundary_equivalence_ok
            and self.frontier_equivalence_ok
            and self.biobjective_collapse_ok is not False
        )


@dataclass(frozen=True)
class CrossCheckReport:
    p: int
    checks: tuple[PointCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[PointCheck]:
        return [c for c in self.checks if not c.ok]


def _point_check(
    y: OutcomePoint, yn: OutcomeSet
) -> tuple[PointCheck, Optional[tuple[WeightVector, Fraction]]]:
    solved = _solve_witness(y, yn)
    weak = solved is not None
    strict = weak and solved[1] > 0
    boundary = is_on_boundary_upper_image(y, yn)
    frontier = is_on_frontier(y, yn)
    check = PointCheck(
        point_id=y.id,
        weakly_supported=weak,
        on_boundary=boundary,
        supported=strict,
        on_frontier=frontier,
        boundary_equivalence_ok=(weak == boundary),
        frontier_equivalence_ok=(strict == frontier),
        biobjective_collapse_ok=(weak == strict) if yn.p == 2 else None,
    )
    return check, solved


def cross_check(outcome_set: OutcomeSet) -> CrossCheckReport:
    """Verify, for every non-dominated point, that the witness tests
    agree with the geometry tests: weight in the closed simplex exists
    iff the point is on the boundary of the upper image; a strictly
    positive weight exists iff the point is on the non-dominated
    frontier; and for two objectives the two witness notions coincide.

    Violations are reported, never swallowed: a False verdict means an
    implementation bug, not a property of the instance.
    """
    yn = filter_nondominated(outcome_set).nondominated
    checks = tuple(_point_check(y, yn)[0] for y in yn)
    return CrossCheckReport(p=outcome_set.p, checks=checks)


def classify_all(outcome_set: OutcomeSet) -> list[Classification]:
    """Label every stored point, in input order.

    Dominated points are retained and labelled; each non-dominated
    point runs the decision cascade extreme-supported > supported >
    weakly-supported-only > unsupported.  The independently computed
    frontier/boundary flags must agree with the witness tests; any
    disagreement raises ConsistencyError with a diagnostic dump.
    """
    filtered = filter_nondominated(outcome_set)
    yn = filtered.nondominated
    results: dict[str, Classification] = {}
    for y in yn:
        check, solved = _point_check(y, yn)
        if not check.ok:
            raise ConsistencyError(
                "supportedness tests disagree on a proven equivalence: "
                f"{check!r} for point {y.id} {y.coords} in instance "
                f"{outcome_set.coord_rows()}"
            )
        if solved is None:
            label = Label.UNSUPPORTED
            weak = strict = None
        else:
            lam, t = solved
            if t > 0:
                strict = lam
                weak = lam
                label = (
                    Label.EXTREME_SUPPORTED
                    if is_extreme_supported(y, yn)
                    else Label.SUPPORTED
                )
            else:
                weak, strict = lam, None
                label = Label.WEAKLY_SUPPORTED_ONLY
        results[y.id] = Classification(
            point_id=y.id,
            label=label,
            weak_witness=weak,
            strict_witness=strict,
            frontier=check.on_frontier,
            boundary=check.on_boundary,
        )
    report = []
    for pt in outcome_set:
        if pt.id in results:
            report.append(results[pt.id])
        else:
            report.append(
                Classification(
                    point_id=pt.id,
                    label=Label.DOMINATED,
                    weak_witness=None,
                    strict_witness=None,
                    frontier=False,
                    boundary=False,
                )
            )
    return report
