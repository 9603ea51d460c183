"""
Haken sums and additivity
=========================

Two normal surfaces whose quadrilaterals agree can be added coordinate by
coordinate.  Euler characteristic, complexity and the boundary trace all
add up under the sum.
"""

import itertools

from normsurf.data import load
from normsurf.normal_system import boundary_trace, compatible, matching_equations
from normsurf.cone_enum import hilbert_basis
from normsurf.surface_geom import haken_sum, surface_report

tri = load("two-tet-two-gluings")
sys = matching_equations(tri)
basis = list(hilbert_basis(sys))

# first compatible pair of distinct fundamentals
u, v = next((a, b) for a, b in itertools.combinations(basis, 2) if compatible(a, b))
w = haken_sum(tri, sys, u, v)

for label, x in (("u", u), ("v", v), ("u + v", w)):
    rep = surface_report(tri, x)
    print(f"{label:>6}: euler={rep.euler:>2} complexity={rep.complexity} circles={rep.boundary_circles}")

# the boundary trace is additive face by face
tu, tv, tw = (boundary_trace(tri, x) for x in (u, v, w))
for face in sorted(tw):
    print(f"face {face[0]}.{face[1]}: {tu[face]} + {tv[face]} = {tw[face]}")
