"""Shared test utilities: exact strategies and cone predicates."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from octocf.farey import Direction, expand
from octocf.numerics import QuadNum, Vec2


def fractions(max_num=60, max_den=12):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def quadnums(max_num=60, max_den=12):
    return st.builds(QuadNum, fractions(max_num, max_den), fractions(max_num, max_den))


def nonzero_quadnums():
    return quadnums().filter(lambda q: not q.is_zero())


def interior_directions():
    """Directions with exact rational u, avoiding the sector boundaries."""
    return (
        st.fractions(min_value=-100, max_value=100)
        .map(lambda u: Direction(Vec2(QuadNum(u), QuadNum(1))))
        .filter(lambda d: d.vector.x not in (QuadNum(1), QuadNum(0), QuadNum(-1)))
    )


def random_clean_direction(rng: random.Random, steps: int) -> Direction:
    """A rational-u direction whose orbit avoids boundaries for `steps` steps."""
    while True:
        u = Fraction(rng.randint(-(10**6), 10**6), rng.randint(1, 10**4))
        d = Direction(Vec2(QuadNum(u), QuadNum(1)))
        e = expand(d, steps + 1)
        if not e.boundary_hit and not e.terminating:
            return d


def normalize_cone(a: Vec2, b: Vec2) -> tuple[Vec2, Vec2]:
    """Order two cone rays as (left, right) with a positive opening."""
    return (a, b) if b.cross(a).sign() > 0 else (b, a)


def cone_contains_cone(outer, inner) -> bool:
    outer_l, outer_r = outer
    for v in inner:
        if outer_r.cross(v).sign() < 0 or v.cross(outer_l).sign() < 0:
            return False
    return True


def cones_of(vectors) -> list[tuple[Vec2, Vec2]]:
    return [normalize_cone(vectors[2 * j], vectors[2 * j + 1]) for j in range(len(vectors) // 2)]
