"""The octagon Farey map on directions of the regular-octagon translation surface.

The upper half circle of directions, parametrized by the angle theta in
[0, pi] or by the inverse slope u = cot(theta) on the projective line, is cut
into eight sectors of width pi/8.  A dihedral element ``nu_j`` folds sector j
onto sector 0, and the parabolic-type element ``gamma`` opens sector 0 back
up onto the union of sectors 1..7.  The composition F = gamma . fold is the
octagon Farey map; its itineraries are the octagon continued fraction
expansions, and its inverse branches reconstruct a direction from an
expansion prefix as a nested intersection of intervals.

All sector boundaries are exact elements of Q(sqrt(2)) (cot(pi/8) = 1+sqrt2,
cot(pi/4) = 1, cot(3pi/8) = sqrt2-1), so membership, folding and expansion
are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .numerics import INFINITY, Mat2, ProjVal, QuadNum, Vec2

__all__ = [
    "NU",
    "GAMMA",
    "GAMMA_NU",
    "SECTOR_BOUNDS",
    "Direction",
    "TiePolicy",
    "FareyExpansion",
    "RP1Interval",
    "InadmissiblePrefixError",
    "classify",
    "fold",
    "farey_step",
    "expand",
    "reconstruct",
    "dual_expansion",
    "theta_cmp",
]

_H = Fraction(1, 2)
_RH = QuadNum(0, _H)  # 1/sqrt(2)

#: The dihedral elements mapping each closed sector onto sector 0.
NU: tuple[Mat2, ...] = (
    Mat2(1, 0, 0, 1),
    Mat2(_RH, _RH, _RH, -_RH),
    Mat2(_RH, _RH, -_RH, _RH),
    Mat2(0, 1, 1, 0),
    Mat2(0, 1, -1, 0),
    Mat2(-_RH, _RH, _RH, _RH),
    Mat2(-_RH, _RH, -_RH, -_RH),
    Mat2(-1, 0, 0, 1),
)

#: The involution opening sector 0 onto the union of sectors 1..7.
GAMMA = Mat2(-1, QuadNum(2, 2), 0, 1)

#: The Farey branches F_j as matrices gamma * nu_j.
GAMMA_NU: tuple[Mat2, ...] = tuple(GAMMA @ nu for nu in NU)

#: cot(j*pi/8) for j = 1..7; the extreme boundaries are the two horizontal rays.
SECTOR_BOUNDS: tuple[QuadNum, ...] = (
    QuadNum(1, 1),  # cot(pi/8)
    QuadNum(1, 0),  # cot(2pi/8)
    QuadNum(-1, 1),  # cot(3pi/8)
    QuadNum(0, 0),  # cot(4pi/8)
    QuadNum(1, -1),  # cot(5pi/8)
    QuadNum(-1, 0),  # cot(6pi/8)
    QuadNum(-1, -1),  # cot(7pi/8)
)


class TiePolicy(Enum):
    """Which itinerary to record when an iterate sits on a sector boundary."""

    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class Direction:
    """A direction of the flow, i.e. a nonzero vector up to positive scaling.

    Directions live in the closed upper half plane; the two horizontal rays
    (theta = 0 and theta = pi) are kept distinct even though both have
    inverse slope u = infinity.  Vectors handed in with y < 0 are negated.
    """

    vector: Vec2

    def __init__(self, vector: Vec2):
        if vector.is_zero():
            raise ValueError("the zero vector has no direction")
        ys = vector.y.sign()
        if ys < 0:
            vector = -vector
        object.__setattr__(self, "vector", vector)

    @staticmethod
    def from_u(u: ProjVal, side: str = "pos") -> "Direction":
        """Direction with inverse slope ``u``; ``side`` picks theta=0 vs theta=pi at infinity."""
        if u.is_infinite:
            if side == "pos":
                return Direction(Vec2(1, 0))
            if side == "neg":
                return Direction(Vec2(-1, 0))
            raise ValueError("side must be 'pos' or 'neg'")
        return Direction(Vec2(u.value, 1))

    def u(self) -> ProjVal:
        if self.vector.y.is_zero():
            return INFINITY
        return ProjVal(self.vector.x / self.vector.y)

    @property
    def is_theta_zero(self) -> bool:
        return self.vector.y.is_zero() and self.vector.x.sign() > 0

    @property
    def is_theta_pi(self) -> bool:
        return self.vector.y.is_zero() and self.vector.x.sign() < 0

    def ray_eq(self, other: "Direction") -> bool:
        if self.vector.cross(other.vector).sign() != 0:
            return False
        # parallel in the closed upper half plane: distinguish 0 from pi
        return self.vector.dot(other.vector).sign() > 0

    def theta_float(self) -> float:
        """Approximate angle in [0, pi]; diagnostics and widths only."""
        if self.vector.y.is_zero():
            return 0.0 if self.vector.x.sign() > 0 else math.pi
        return math.atan2(1.0, float(self.vector.x / self.vector.y))

    def __str__(self) -> str:
        return f"dir{self.vector}"

    def to_json(self) -> dict:
        return self.vector.to_json()

    @staticmethod
    def from_json(obj: dict) -> "Direction":
        return Direction(Vec2.from_json(obj))


def theta_cmp(d1: Direction, d2: Direction) -> int:
    """Exact three-way comparison of angles in [0, pi]."""
    if d1.is_theta_zero or d2.is_theta_zero:
        if d1.is_theta_zero and d2.is_theta_zero:
            return 0
        return -1 if d1.is_theta_zero else 1
    if d1.is_theta_pi or d2.is_theta_pi:
        if d1.is_theta_pi and d2.is_theta_pi:
            return 0
        return 1 if d1.is_theta_pi else -1
    return -d1.vector.cross(d2.vector).sign()


def classify(d: Direction) -> tuple[int, ...]:
    """All sector indices whose closed sector contains ``d`` (one or two)."""
    if d.is_theta_zero:
        return (0,)
    if d.is_theta_pi:
        return (7,)
    u = d.vector.x / d.vector.y
    sectors = []
    for j in range(8):
        above = j == 7 or u >= SECTOR_BOUNDS[j]  # u >= cot((j+1)pi/8)
        below = j == 0 or u <= SECTOR_BOUNDS[j - 1]  # u <= cot(j pi/8)
        if above and below:
            sectors.append(j)
    return tuple(sectors)


def _choose_sector(d: Direction, step: int, policy: TiePolicy) -> tuple[int, bool]:
    sectors = classify(d)
    tie = len(sectors) > 1
    admissible = [j for j in sectors if j != 0 or step == 0]
    if policy is TiePolicy.LOW:
        return min(admissible), tie
    return max(admissible), tie


def fold(d: Direction, policy: TiePolicy = TiePolicy.LOW) -> tuple[int, Direction]:
    """Fold ``d`` into sector 0 by the dihedral element of its sector."""
    j, _ = _choose_sector(d, 0, policy)
    return j, Direction(NU[j].apply(d.vector))


def farey_step(
    d: Direction, policy: TiePolicy = TiePolicy.LOW, step: int = 0
) -> tuple[int, Direction]:
    """One application of the Farey map; returns the sector entry and the image."""
    j, _ = _choose_sector(d, step, policy)
    return j, Direction(GAMMA_NU[j].apply(d.vector))


_FIXED_RAY_PI8 = Direction(Vec2(QuadNum(1, 1), QuadNum(1)))


@dataclass(frozen=True)
class FareyExpansion:
    """A finite window of an octagon Farey itinerary.

    ``entries[0]`` may be 0; all later entries lie in 1..7.  ``tail`` is set
    (to 1 or 7) when the orbit has provably locked onto one of the two fixed
    rays within the window, in which case all later entries equal ``tail``
    and the underlying direction is terminating.
    """

    entries: tuple[int, ...]
    boundary_hit: bool = False
    terminating: bool = False
    tail: int | None = None

    def __post_init__(self):
        if not self.entries:
            raise ValueError("an expansion needs at least one entry")
        if any(s == 0 for s in self.entries[1:]) or not all(
            0 <= s <= 7 for s in self.entries
        ):
            raise InadmissiblePrefixError(f"inadmissible entries {self.entries}")
        if self.terminating and self.tail not in (1, 7):
            raise ValueError("a terminating expansion must declare its tail")

    def __str__(self) -> str:
        head = str(self.entries[0])
        rest = ",".join(str(s) for s in self.entries[1:])
        tail = f",{self.tail},{self.tail},..." if self.terminating else ""
        return f"[{head};{rest}{tail}]"

    def to_json(self) -> dict:
        record = {
            "entries": list(self.entries),
            "boundary_hit": self.boundary_hit,
            "terminating": self.terminating,
        }
        if self.tail is not None:
            record["tail"] = self.tail
        return record


class InadmissiblePrefixError(ValueError):
    """An entry sequence violating "only the first entry may be 0"."""


def expand(d: Direction, depth: int, policy: TiePolicy = TiePolicy.LOW) -> FareyExpansion:
    """The first ``depth`` itinerary entries of ``d`` under the Farey map."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    entries: list[int] = []
    boundary_hit = False
    tail = None
    cur = d
    for k in range(depth):
        j, tie = _choose_sector(cur, k, policy)
        boundary_hit = boundary_hit or tie
        entries.append(j)
        cur = Direction(GAMMA_NU[j].apply(cur.vector))
        if cur.is_theta_pi:
            tail = 7
        elif cur.ray_eq(_FIXED_RAY_PI8):
            tail = 1
    return FareyExpansion(
        entries=tuple(entries),
        boundary_hit=boundary_hit,
        terminating=tail is not None,
        tail=tail,
    )


def _boundary_direction(j: int) -> Direction:
    """The direction with angle j*pi/8, for j = 0..8."""
    if j == 0:
        return Direction(Vec2(1, 0))
    if j == 8:
        return Direction(Vec2(-1, 0))
    return Direction(Vec2(SECTOR_BOUNDS[j - 1], QuadNum(1)))


@dataclass(frozen=True)
class RP1Interval:
    """A closed interval of directions, endpoints in increasing angle order."""

    lo: Direction
    hi: Direction

    def __post_init__(self):
        if theta_cmp(self.lo, self.hi) > 0:
            raise ValueError("interval endpoints out of order")

    def contains(self, d: Direction) -> bool:
        return theta_cmp(self.lo, d) <= 0 <= theta_cmp(self.hi, d)

    def subset_of(self, other: "RP1Interval") -> bool:
        return theta_cmp(other.lo, self.lo) <= 0 and theta_cmp(self.hi, other.hi) <= 0

    def proper_subset_of(self, other: "RP1Interval") -> bool:
        return self.subset_of(other) and (
            theta_cmp(other.lo, self.lo) < 0 or theta_cmp(self.hi, other.hi) < 0
        )

    def intersects(self, other: "RP1Interval") -> bool:
        return theta_cmp(self.lo, other.hi) <= 0 and theta_cmp(other.lo, self.hi) <= 0

    def hull(self, other: "RP1Interval") -> "RP1Interval":
        lo = self.lo if theta_cmp(self.lo, other.lo) <= 0 else other.lo
        hi = self.hi if theta_cmp(self.hi, other.hi) >= 0 else other.hi
        return RP1Interval(lo, hi)

    def theta_width(self) -> float:
        return self.hi.theta_float() - self.lo.theta_float()

    def to_json(self) -> dict:
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json()}

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def reconstruct(prefix) -> RP1Interval:
    """The exact direction interval of all expansions starting with ``prefix``.

    The interval is the sector of the last entry pulled back through the
    inverse branches of the earlier entries; prefixes of growing length give
    nested intervals shrinking to the coded direction.
    """
    entries = tuple(prefix.entries) if isinstance(prefix, FareyExpansion) else tuple(prefix)
    if not entries:
        raise InadmissiblePrefixError("empty prefix")
    if any(s == 0 for s in entries[1:]) or not all(0 <= s <= 7 for s in entries):
        raise InadmissiblePrefixError(f"inadmissible prefix {entries}")
    last = entries[-1]
    ends = [_boundary_direction(last), _boundary_direction(last + 1)]
    for s in reversed(entries[:-1]):
        inv = GAMMA_NU[s].inverse()
        ends = [Direction(inv.apply(e.vector)) for e in ends]
    if theta_cmp(ends[0], ends[1]) <= 0:
        return RP1Interval(ends[0], ends[1])
    return RP1Interval(ends[1], ends[0])


def dual_expansion(e: FareyExpansion) -> FareyExpansion:
    """The other expansion of a terminating direction.

    Eventually-constant tails of 1 pair across an even last non-tail entry,
    tails of 7 across an odd one; the two horizontal rays (entry sequences
    [0;7,7,...] and [7;7,7,...]) have no partner and map to themselves.
    """
    if not e.terminating or e.tail is None:
        raise ValueError("dual expansions exist only for terminating directions")
    entries = list(e.entries)
    k = len(entries) - 1
    while k >= 0 and entries[k] == e.tail:
        k -= 1
    if k < 0:
        # all shown entries equal the tail
        if e.tail == 1:
            entries[0] = 0
            return FareyExpansion(tuple(entries), e.boundary_hit, True, 1)
        return e  # the ray theta = pi is self-dual
    s = entries[k]
    if e.tail == 1:
        partner = s + 1 if s % 2 == 0 else s - 1
    else:
        partner = s + 1 if s % 2 == 1 else s - 1
    if partner < 0 or (partner == 0 and k != 0):
        return e  # the ray theta = 0 is self-dual
    entries[k] = partner
    return FareyExpansion(tuple(entries), e.boundary_hit, True, e.tail)
