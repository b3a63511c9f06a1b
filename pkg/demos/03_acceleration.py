"""One Farey step = one staircase word: the acceleration, machine-checked.

Run with: python3 demos/03_acceleration.py
"""

from octocf.farey import GAMMA_NU
from octocf.h2moves import compose_word, has_reduced_word, sector_matrix, sector_raw_word, sector_word
from octocf.octagon import run_expansion, sector_midpoint, verify_sector, verify_theorem
from octocf.farey import Direction
from octocf.numerics import QuadNum, Vec2
from fractions import Fraction

# Each sector's word of staircase moves, its 6x6 matrix, and the exact
# renormalization closure back onto the base quadrangulation.
for i in range(1, 8):
    word = ", ".join(sector_raw_word(i))
    report = verify_sector(i, sector_midpoint(i))
    det = GAMMA_NU[i].det()
    reduced = "reduced word ok" if has_reduced_word(i) and compose_word(sector_word(i))[0] == sector_matrix(i) else "raw word only"
    print(f"sector {i}: [{word}]")
    print(
        f"  matrix == A{i}: {report.matrix_equal}   closes up: {report.closes_up}"
        f"   parity {report.parity} (det of renormalizer = {det})   {reduced}"
    )

print("\nfull verification:", "PASS" if verify_theorem().passed else "FAIL")

# Following an actual direction: every renormalization step executes one
# sector word and lands exactly back on the base quadrangulation.
d = Direction(Vec2(QuadNum(Fraction(7, 3)), QuadNum(1)))
trace = run_expansion(d, 8)
print(f"\nu = 7/3, entries {trace.expansion.entries}")
print("saddle-connection approximants (original frame):")
for v in trace.holonomies()[:8]:
    print("  ", v)
