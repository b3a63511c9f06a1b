"""The torus baseline: geometric convergents equal k = 1 diagonal changes.

Run with: python3 demos/02_torus_baseline.py
"""

from octocf.classical import (
    QuadraticIrrational,
    geometric_convergents,
    intermediate_convergents,
)
from octocf.diagch import CombDatum, LabeledQuadrangulation, Side, Wedge
from octocf.farey import Direction
from octocf.numerics import QuadNum, Vec2

SQRT2 = QuadraticIrrational.sqrt_of(2)

# Classical construction: add the newer basis vector to the older one as
# many times as possible without crossing the line of slope 1/sqrt2.
result = geometric_convergents(SQRT2, 6)
print("digits      :", result.digits)
print("convergents :", [f"{p}/{q}" for p, q in result.vectors])
print("intermediates:", [[f"{p}/{q}" for p, q in g] for g in intermediate_convergents(SQRT2, 6)])

# The same stream falls out of diagonal changes on the square torus with the
# reference ray (sqrt2, 1): each staircase move creates one new lattice
# vector, alternating full and intermediate convergents.
state = LabeledQuadrangulation(
    CombDatum(1, (1,), (1,)),
    (Wedge(Vec2(0, 1), Vec2(1, 0)),),
    Direction(Vec2(QuadNum(0, 1), QuadNum(1))),
)
print("\ndiagonal-changes stream:")
for step in range(12):
    move = state.available_moves()[0]
    state = state.apply(move)
    new = state.wedges[0].l if move.side is Side.PI_R else state.wedges[0].r
    side = "left " if move.side is Side.PI_R else "right"
    print(f"  step {step:2d} ({side} update): ({new.x}, {new.y})")

# Rational slopes land on the line and halt.
print("\nalpha = 2 halts:", geometric_convergents(2, 5))
