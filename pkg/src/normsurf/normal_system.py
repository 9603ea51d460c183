"""Normal coordinates and the matching equations.

Every tetrahedron contributes seven coordinates in the order
``(t0, t1, t2, t3, q1, q2, q3)``: ``t_v`` counts normal triangles cutting
off vertex ``v`` and ``q_j`` counts quadrilaterals separating edge
``{0, j}`` from the opposite edge.

In face ``f`` of a tetrahedron (opposite the apex ``f``) the triangle at
``v`` and the quadrilateral separating ``{f, v}`` each leave an arc cutting
off ``v``; the apex triangle leaves no arc in that face.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryPattern, check_pattern
from .errors import DimensionError, IncompatibleError, NotASolutionError, TriangulationError
from .triangulation import FACE_VERTICES, TET_EDGES, check_valid, skeleton

COORDS_PER_TET = 7
DISK_NAMES = ("t0", "t1", "t2", "t3", "q1", "q2", "q3")


def quad_separating(a, b):
    """Quadrilateral type (0, 1 or 2, i.e. q1..q3) separating edge {a, b} from its opposite."""
    other = b if a == 0 else a if b == 0 else ({1, 2, 3} - {a, b}).pop()
    return other - 1


def quad_pairs(q):
    """The two opposite edges separated by quadrilateral type ``q`` (0-based)."""
    j = q + 1
    near = (0, j)
    far = tuple(v for v in (1, 2, 3) if v != j)
    return near, far


def arc_disks(face, cutoff):
    """Local disk indices (0..6) leaving an arc cutting off ``cutoff`` in ``face``."""
    return cutoff, 4 + quad_separating(face, cutoff)


def disk_faces(disk):
    """Faces of the tetrahedron met by a disk type."""
    if disk < 4:
        return tuple(f for f in range(4) if f != disk)
    return (0, 1, 2, 3)


def crossing_disks(a, b):
    """Local disk indices meeting tetrahedron edge {a, b}."""
    q = quad_separating(a, b)
    return (a, b) + tuple(4 + k for k in range(3) if k != q)


class NormalVector(tuple):
    """A non-negative integer vector of length ``7 * tet_count``.

    Behaves as a tuple of Python ints; ``+`` is componentwise addition and
    ``k * v`` scales.
    """

    def __new__(cls, coords):
        coords = tuple(int(x) for x in coords)
        if len(coords) % COORDS_PER_TET:
            raise DimensionError(f"vector length {len(coords)} is not a multiple of 7")
        if any(x < 0 for x in coords):
            raise ValueError("normal coordinates must be non-negative")
        return super().__new__(cls, coords)

    @classmethod
    def zero(cls, tet_count):
        return cls((0,) * (COORDS_PER_TET * tet_count))

    @classmethod
    def unit(cls, tet_count, tet, disk):
        v = [0] * (COORDS_PER_TET * tet_count)
        v[COORDS_PER_TET * tet + disk] = 1
        return cls(v)

    @property
    def tet_count(self):
        return len(self) // COORDS_PER_TET

    def tet(self, i):
        return tuple.__getitem__(self, slice(7 * i, 7 * i + 7))

    def quad_type(self, i):
        """Index (0..2) of the quad type used in tetrahedron ``i``, None if none; raises if two."""
        used = [q for q in range(3) if self[7 * i + 4 + q]]
        if len(used) > 1:
            raise IncompatibleError(f"tetrahedron {i} uses quad types {[DISK_NAMES[4 + q] for q in used]}", i)
        return used[0] if used else None

    def __add__(self, other):
        if len(other) != len(self):
            raise DimensionError(f"cannot add vectors of length {len(self)} and {len(other)}")
        return NormalVector(x + y for x, y in zip(self, other))

    def __sub__(self, other):
        return NormalVector(x - y for x, y in zip(self, other))

    def __mul__(self, k):
        return NormalVector(k * x for x in self)

    __rmul__ = __mul__

    def below(self, other):
        """Componentwise ``self <= other``."""
        return all(x <= y for x, y in zip(self, other))

    def total(self):
        return sum(self)

    def max(self):
        return max(self, default=0)

    def __repr__(self):
        return f"NormalVector({tuple(self)})"


@dataclass(frozen=True)
class LinearSystem:
    """Matching equations plus forced zeros.

    ``equations`` holds index quadruples ``(i, j, k, l)`` meaning
    ``x_i + x_j - x_k - x_l = 0``.  Forced-zero coordinates stay in the
    vector so that indices agree across restricted and unrestricted systems.
    """

    tet_count: int
    equations: tuple
    forced_zero: frozenset = frozenset()

    def __post_init__(self):
        n = self.num_vars
        for eq in self.equations:
            if len(eq) != 4 or not all(0 <= i < n for i in eq):
                raise ValueError(f"malformed equation {eq}")
        if not all(0 <= i < n for i in self.forced_zero):
            raise ValueError("forced-zero index out of range")
        object.__setattr__(self, "equations", tuple(tuple(int(i) for i in eq) for eq in self.equations))
        object.__setattr__(self, "forced_zero", frozenset(int(i) for i in self.forced_zero))

    @property
    def num_vars(self):
        return COORDS_PER_TET * self.tet_count

    @property
    def quad_groups(self):
        return tuple((7 * t + 4, 7 * t + 5, 7 * t + 6) for t in range(self.tet_count))

    def matrix(self):
        """Dense integer matrix ``A`` with one row per equation (``A x = 0``)."""
        a = np.zeros((len(self.equations), self.num_vars), dtype=np.int64)
        for r, (i, j, k, l) in enumerate(self.equations):
            a[r, i] += 1
            a[r, j] += 1
            a[r, k] -= 1
            a[r, l] -= 1
        return a

    def restricted(self, forced_zero):
        return LinearSystem(self.tet_count, self.equations, self.forced_zero | frozenset(forced_zero))

    def canonical_text(self):
        lines = [f"vars {self.num_vars}"]
        lines += [" ".join(map(str, eq)) for eq in self.equations]
        lines.append("zero " + " ".join(map(str, sorted(self.forced_zero))))
        return "\n".join(lines) + "\n"

    def digest(self):
        """Short stable hash naming this system in exported files."""
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]

    def export(self):
        """Plain integer matrix plus the sorted forced-zero list, for external solvers."""
        return self.matrix().tolist(), sorted(self.forced_zero)


def matching_equations(tri):
    """One equation per glued face and arc type."""
    check_valid(tri)
    eqs = []
    for (t, f), (t2, f2, perm) in tri.internal_pairs():
        for v in FACE_VERTICES[f]:
            d1, q1 = arc_disks(f, v)
            d2, q2 = arc_disks(f2, perm[v])
            eqs.append((7 * t + d1, 7 * t + q1, 7 * t2 + d2, 7 * t2 + q2))
    return LinearSystem(tri.tet_count, tuple(eqs))


def pattern_forced_zeros(tri, pattern):
    zeros = set()
    for t, f in tri.boundary_faces():
        allowed = pattern.arc(t, f)
        for v in FACE_VERTICES[f]:
            if v != allowed:
                zeros.update(7 * t + d for d in arc_disks(f, v))
    return zeros


def boundary_restrictions(tri, pattern):
    """The matching system with the pattern's forced zeros.

    A boundary face without an allowed arc kills every disk meeting it; a
    face whose allowed arc cuts off ``v`` kills the disks leaving any other
    arc there.  The apex triangle of a boundary face is never restricted.
    """
    if not isinstance(pattern, BoundaryPattern):
        raise TypeError("pattern must be a BoundaryPattern")
    base = matching_equations(tri)
    bad = [tf for tf in pattern.arcs if tri.glued(*tf)]
    if bad:
        raise TriangulationError(f"pattern references glued face {bad[0][0]}.{bad[0][1]}")
    check_pattern(tri, pattern)
    return base.restricted(pattern_forced_zeros(tri, pattern))


def _check_dims(sys, v):
    if len(v) != sys.num_vars:
        raise DimensionError(f"vector has {len(v)} coordinates, system has {sys.num_vars}")


def is_solution(sys, v):
    _check_dims(sys, v)
    if any(v[i] for i in sys.forced_zero):
        return False
    return all(v[i] + v[j] == v[k] + v[l] for i, j, k, l in sys.equations)


def quad_conflict(v):
    """First tetrahedron using two quad types, or None."""
    for t in range(len(v) // 7):
        if sum(1 for q in range(3) if v[7 * t + 4 + q]) > 1:
            return t
    return None


def is_admissible(sys, v):
    return is_solution(sys, v) and quad_conflict(v) is None


def compatible(u, v):
    """True when u and v never use different quad types in one tetrahedron."""
    return quad_conflict([max(x, y) for x, y in zip(u, v)]) is None


def boundary_trace(tri, v):
    """Arc counts each boundary face receives from ``v``.

    Returns ``{(tet, face): (c0, c1, c2, c3)}`` indexed by cut-off vertex.
    """
    trace = {}
    for t, f in tri.boundary_faces():
        c = [0, 0, 0, 0]
        for w in FACE_VERTICES[f]:
            d, q = arc_disks(f, w)
            c[w] = v[7 * t + d] + v[7 * t + q]
        trace[(t, f)] = tuple(c)
    return trace


def edge_weights(v, tet_count=None):
    """Intersection count of ``v`` with every tetrahedron edge, keyed ``(tet, a, b)``."""
    tet_count = tet_count or len(v) // 7
    return {(t, a, b): sum(v[7 * t + d] for d in crossing_disks(a, b))
            for t in range(tet_count) for a, b in TET_EDGES}


def edge_class_weights(tri, v, skel=None):
    """Weight of each skeleton edge class; raises if the tetrahedron edges disagree."""
    skel = skel or skeleton(tri)
    w = edge_weights(v, tri.tet_count)
    out = []
    for i, members in enumerate(skel.edge_classes):
        vals = {w[(t, a, b)] for t, (a, b) in members}
        if len(vals) != 1:
            raise NotASolutionError(f"edge class {i} carries inconsistent weights {sorted(vals)}")
        out.append(vals.pop())
    return out


def complexity(tri, v, skel=None):
    """Number of points where the surface meets the 1-skeleton."""
    return sum(edge_class_weights(tri, v, skel))
