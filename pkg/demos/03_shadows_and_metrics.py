"""Shadows of planar diagrams and the fragmentation distances built on them.

Run:  python3 demos/03_shadows_and_metrics.py
"""

from __future__ import annotations

from fractions import Fraction

from cobcalc.demo import adversarial_presentation, demo_presentation
from cobcalc.metrics import avg_distance, frag_distance, rigidity_scan, theta_noncontraction
from cobcalc.planar import P, CobordismDiagram, PLCurve, shadow

# A horizontal strand through a 2 x 1 loop cuts it into faces of area 3/2
# and 1/2; the shadow is the total bounded area.
rect = PLCurve((P(0, Fraction(-1, 4)), P(2, Fraction(-1, 4)), P(2, Fraction(3, 4)), P(0, Fraction(3, 4))), closed=True)
line = PLCurve((P(-1, 0), P(3, 0)), "left", "right")
print("eye shadow:", shadow(CobordismDiagram.build([(line, "A"), (rect, "B")])))

p = demo_presentation()

# d^F(A, B): cheapest word A -> (F.., B, F..).  With F = {C}, the triangle
# generator of shadow 1/4 becomes admissible.
for F in ([], ["C"]):
    r = frag_distance("A", "B", F, p)
    print(f"d^{{{','.join(F)}}}(A, B): {r.line()}")
print("average of the two:", avg_distance("A", "B", [], ["C"], p)[2])

# Rigidity: every simple word between distinct objects must have shadow at
# least the supplied lower bound.  The adversarial presentation has a
# shadow-0 generator and is flagged.
print(rigidity_scan(p).text(), end="")
adv = rigidity_scan(adversarial_presentation())
print("adversarial:", "PASS" if adv.ok else f"FAIL ({len(adv.violations)} violations)")

# The geometric distance dominates the algebraic one on every pair.
print(theta_noncontraction(p).text(), end="")
