"""
Thinning a boundary curve by subdivision
========================================

A normal curve on the boundary may cross a face many times.  Barycentric
subdivision spreads the arcs out until each boundary face carries at most
one, and the result becomes a boundary pattern for the restricted system.
"""

from normsurf.boundary import all_patterns, curve_from_edge_weights
from normsurf.cone_enum import hilbert_basis
from normsurf.data import load
from normsurf.normal_system import boundary_restrictions
from normsurf.seifert import classify
from normsurf.subdivision import reduce_curve

tri = load("one-tet")

# weights on the six edges of the tetrahedron; boundary edges only
curve = curve_from_edge_weights(tri, [0, 2, 2, 2, 2, 0])
print("arcs per face at the start:", curve.max_arcs())

for step, (t, c) in enumerate(reduce_curve(tri, curve)):
    print(f"after {step} subdivision(s): {t.tet_count} tetrahedra, at most {c.max_arcs()} arc(s) per face")

pattern = c.to_pattern(t)
sys = boundary_restrictions(t, pattern)
print(f"pattern uses {sum(a is not None for a in pattern.arcs.values())} of {len(pattern.arcs)} boundary faces")
print(f"restricted system: {sys.num_vars - len(sys.forced_zero)} free coordinates")

# the restricted system on the original triangulation is small enough to enumerate
small = load("two-tet-three-gluings")
pat = all_patterns(small)[1]
groups = classify(small, pat, hilbert_basis(boundary_restrictions(small, pat)))
print(f"\ntwo-tet-three-gluings, one pattern: {len(groups.seifert_like)} one-circle, "
      f"{len(groups.bounded_other)} other bounded, {len(groups.closed)} closed fundamentals")
