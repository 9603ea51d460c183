"""
Fundamental solutions of a layered solid torus
==============================================

Build the matching system of the one-tetrahedron solid torus, list its
fundamental solutions and look at the surface each one describes.
"""

from normsurf.cone_enum import decompose, enumerate_solutions, hilbert_basis
from normsurf.data import load
from normsurf.normal_system import matching_equations
from normsurf.surface_geom import surface_report

tri = load("lst1")
sys = matching_equations(tri)
print(f"{tri.tet_count} tetrahedron, {len(sys.equations)} matching equations")

# every admissible solution is a sum of these
basis = hilbert_basis(sys)
for v in basis:
    rep = surface_report(tri, v)
    kind = "orientable" if rep.orientable else "non-orientable"
    print(" ".join(map(str, v)), f"  euler={rep.euler} circles={rep.boundary_circles} {kind}")

# pick a bigger solution and write it over the basis
v = max(enumerate_solutions(sys, 3), key=sum)
print("\nlargest solution with coordinates up to 3:", " ".join(map(str, v)))
for u, k in decompose(sys, basis, v, tri):
    print(f"  {k} x", " ".join(map(str, u)))
