"""Outcome-space data model, component-wise order and Pareto filtering.

Minimization convention throughout: smaller is better in every
objective.  Outcome sets are validated and deduplicated at
construction; distinct feasible solutions sharing an image collapse
into a single stored point whose multiplicity records the count.
Everything here is immutable and pure, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ValidationError
from .ratlp import rational


@dataclass(frozen=True)
class OutcomePoint:
    """A point in objective space: an opaque id plus exact coordinates."""

    id: str
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(rational(c) for c in self.coords))


@dataclass(frozen=True)
class OutcomeSet:
    """A validated, deduplicated, nonempty finite set of outcome points."""

    p: int
    points: tuple[OutcomePoint, ...]
    multiplicity: Mapping[str, int] = field(default_factory=dict)
    _by_id: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if self.p < 2:
            raise ValidationError("bi-objective minimum violated: need p >= 2")
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValidationError("empty outcome set")
        seen_coords: dict[tuple, str] = {}
        index: dict[str, OutcomePoint] = {}
        for pt in self.points:
            if len(pt.coords) != self.p:
                raise ValidationError(
                    f"dimension mismatch: point {pt.id} has {len(pt.coords)} "
                    f"coordinates, expected {self.p}"
                )
            if pt.id in index:
                raise ValidationError(f"duplicate point id {pt.id!r}")
            if pt.coords in seen_coords:
                raise ValidationError(
                    f"points {seen_coords[pt.coords]!r} and {pt.id!r} share "
                    "coordinates; collapse duplicates via validate_instance"
                )
            seen_coords[pt.coords] = pt.id
            index[pt.id] = pt
        mult = {pt.id: int(self.multiplicity.get(pt.id, 1)) for pt in self.points}
        object.__setattr__(self, "multiplicity", mult)
        object.__setattr__(self, "_by_id", index)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def get(self, point_id: str) -> OutcomePoint:
        try:
            return self._by_id[point_id]
        except KeyError:
            raise ValidationError(f"no point with id {point_id!r}") from None

    def __contains__(self, point: OutcomePoint) -> bool:
        stored = self._by_id.get(point.id)
        return stored is not None and stored.coords == point.coords

    def coord_rows(self) -> list[tuple[Fraction, ...]]:
        return [pt.coords for pt in self.points]


def validate_instance(
    raw_points: Iterable[Sequence], p: Optional[int] = None
) -> OutcomeSet:
    """Build an OutcomeSet from raw coordinate rows.

    Duplicates collapse with their count retained in ``multiplicity``.
    Rejects fewer than two objectives, empty input and ragged rows.
    Coordinates may be ints, Fractions or exact literals like "9/2".
    """
    rows = [tuple(rational(c) for c in row) for row in raw_points]
    if not rows:
        raise ValidationError("empty outcome set")
    if p is None:
        p = len(rows[0])
    if p < 2:
        raise ValidationError(f"bi-objective minimum violated: p = {p}")
    for i, row in enumerate(rows):
        if len(row) != p:
            raise ValidationError(
                f"dimension mismatch: row {i} has {len(row)} coordinates, expected {p}"
            )
    points: list[OutcomePoint] = []
    counts: dict[str, int] = {}
    first_id: dict[tuple, str] = {}
    for row in rows:
        if row in first_id:
            counts[first_id[row]] += 1
            continue
        pid = f"y{len(points) + 1}"
        first_id[row] = pid
        counts[pid] = 1
        points.append(OutcomePoint(pid, row))
    return OutcomeSet(p=p, points=tuple(points), multiplicity=counts)


def dominates(a: OutcomePoint, b: OutcomePoint) -> bool:
    """Component-wise order: a <= b in every objective and a != b."""
    if len(a.coords) != len(b.coords):
        raise ValidationError(
            f"dimension mismatch: {len(a.coords)} vs {len(b.coords)} coordinates"
        )
    strict = False
    for x, y in zip(a.coords, b.coords):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


@dataclass(frozen=True)
class ParetoFilterResult:
    """Non-dominated subset plus, for each removed point, a retained
    dominator as witness."""

    nondominated: OutcomeSet
    dominated_by: Mapping[str, str]

    def is_dominated(self, point_id: str) -> bool:
        return point_id in self.dominated_by


def filter_nondominated(outcome_set: OutcomeSet) -> ParetoFilterResult:
    """Pairwise Pareto filter; idempotent, O(n^2) on purpose.

    Keeps exactly the points not dominated by any other stored point.
    """
    pts = outcome_set.points
    keep: list[OutcomePoint] = []
    removed: list[OutcomePoint] = []
    for pt in pts:
        if any(dominates(other, pt) for other in pts if other is not pt):
            removed.append(pt)
        else:
            keep.append(pt)
    # Finiteness and transitivity guarantee every removed point has a
    # dominator among the retained ones.
    dominated_by: dict[str, str] = {}
    for pt in removed:
        for winner in keep:
            if dominates(winner, pt):
                dominated_by[pt.id] = winner.id
                break
    subset = OutcomeSet(
        p=outcome_set.p,
        points=tuple(keep),
        multiplicity={pt.id: outcome_set.multiplicity[pt.id] for pt in keep},
    )
    return ParetoFilterResult(nondominated=subset, dominated_by=dominated_by)
