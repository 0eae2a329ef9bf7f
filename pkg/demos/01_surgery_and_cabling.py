"""Surgery words, their Theta classes, and deciding equivalence by cabling.

The demo presentation has three objects A, B, C.  Hom(A, B) is spanned by
intersection points x, y, z with dz = x + y, so [x] = [y] is the only
nonzero class.

Run:  python3 demos/01_surgery_and_cabling.py [out.svg]
"""

from __future__ import annotations

import sys

from cobcalc.cabling import cabling_equivalent
from cobcalc.demo import demo_presentation
from cobcalc.planar import detect_crossings
from cobcalc.svg import render_svg
from cobcalc.theta import theta
from cobcalc.words import cable, surgery, to_sexpr

p = demo_presentation()

# A surgery word L -> (L #_c L', L') for each marking c.
sx = surgery(p, "A", "B", ["x"])
sy = surgery(p, "A", "B", ["y"])
s0 = surgery(p, "A", "B", [])
for s in (sx, sy, s0):
    print(f"{to_sexpr(s)}: ends={s.ends} shadow={s.shadow()} theta={theta(s, p)}")

# x and y differ by the boundary dz, so the two surgeries are equivalent and
# z is the witness.  The empty marking gives a different class.
for a, b in ((sx, sy), (sx, sx), (sx, s0)):
    cert = cabling_equivalent(a, b, p)
    print(f"{to_sexpr(a)} vs {to_sexpr(b)}: {cert} (verified={cert.verify()})")

# The witness marks the cabling crossing of the two words.
c = cable(sx, sy, ["z"])
print(f"cable has {len(detect_crossings(c.diagram))} crossings, annotations:")
for point, note in c.diagram.annotations:
    print(f"  ({point.x}, {point.y}) {note.kind} {note.order} {note.points}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8") as fh:
        fh.write(render_svg(c.diagram, "cable of x and y surgeries"))
    print(f"wrote {sys.argv[1]}")
