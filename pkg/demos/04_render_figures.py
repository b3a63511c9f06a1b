"""Render the base quadrangulation and the seven staircase-move sequences.

Writes SVG files into demos/out/.  Run with: python3 demos/04_render_figures.py
"""

from pathlib import Path

from octocf.octagon import qprime, sector_midpoint, sector_move_states
from octocf.render import RenderSpec, render_state, render_states

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

spec = RenderSpec()

base = qprime(sector_midpoint(4))
(out / "base_quadrangulation.svg").write_text(render_state(base, spec))
print("wrote", out / "base_quadrangulation.svg")

for i in range(1, 8):
    states = sector_move_states(i, sector_midpoint(i))
    svg = render_states(states, spec)
    path = out / f"sector_{i}_moves.svg"
    path.write_text(svg)
    print(f"wrote {path} ({len(states)} panels)")
