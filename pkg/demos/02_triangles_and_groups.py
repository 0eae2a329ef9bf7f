"""Rotations, distinguished triangles, braiding into iterated cones and
the two Grothendieck-type groups.

Run:  python3 demos/02_triangles_and_groups.py
"""

from __future__ import annotations

from cobcalc.cabling import braid_ends, check_axioms
from cobcalc.demo import demo_presentation, random_presentation
from cobcalc.theta import theta
from cobcalc.words import compose_at_leg, distinguished_triangle, gen, rotate, surgery, to_sexpr

p = demo_presentation()

# Rotating a word moves its source to the bottom negative end; rotating as
# many times as the word has ends gives the word back.
s = surgery(p, "A", "B", ["x"])
r = s
for k in range(s.n_ends):
    print(f"R^{k}: {r.source} -> {r.ends}")
    r = rotate(r, 1)
assert r == s

# The three rotations of a 3-ended word form a triangle whose consecutive
# Theta composites vanish.
u, ru, rru = distinguished_triangle(s)
maps = [theta(w, p) for w in (u, ru, rru)]
print("triangle maps:", ", ".join(str(m) for m in maps))
print("composites zero:", [a.then(b).is_zero() for a, b in zip(maps, maps[1:] + maps[:1])])

# Braiding merges the negative ends from the bottom into one iterated
# surgery object; the result is a simple word onto an object isomorphic to A.
w = compose_at_leg(s, 1, rotate(gen(p, "g2"), 1))
b, L = braid_ends(w, p)
print(f"{to_sexpr(w)}\n  braids to {L.label}; Theta iso: {p.is_iso(theta(b, p))}")

# K0 quotients objects by exact triangles, Omega by null-cobordant tuples.
for name, q in (("k0", p.k0()), ("omega", p.omega())):
    print(f"{name}: dim={q.dim} basis={q.basis} relations={q.relation_labels()}")

# The axiom checks also run on seeded random presentations.
for seed in range(3):
    rep = check_axioms(random_presentation(seed))
    print(f"random presentation {seed}: axioms {'PASS' if rep.ok else 'FAIL'} {rep.counts}")
