"""Normal surfaces in triangulated 3-manifolds with boundary.

Build matching systems, enumerate their fundamental solutions, compute the
topology of normal surfaces and carry boundary curves through barycentric
subdivision.
"""
from .boundary import BoundaryCurve, BoundaryPattern, all_patterns
from .cone_enum import decompose, enumerate_solutions, hilbert_basis
from .formats import parse_triangulation, read
from .normal_system import NormalVector, boundary_restrictions, matching_equations
from .seifert import classify, theorem_check
from .subdivision import reduce_to_pattern, subdivide
from .surface_geom import haken_sum, surface_report
from .triangulation import Triangulation, skeleton

__version__ = "0.1.0"

__all__ = [
    "BoundaryCurve", "BoundaryPattern", "NormalVector", "Triangulation",
    "all_patterns", "boundary_restrictions", "classify", "decompose", "enumerate_solutions",
    "haken_sum", "hilbert_basis", "matching_equations", "parse_triangulation", "read",
    "reduce_to_pattern", "skeleton", "subdivide", "surface_report", "theorem_check",
]
