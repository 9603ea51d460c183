"""Curve-aware barycentric subdivision.

Every tetrahedron is split into 24 tetrahedra, one per flag
``vertex < edge < face`` of the original.  New tetrahedron vertices are
labelled 0 = original vertex, 1 = edge barycentre, 2 = face barycentre,
3 = tetrahedron barycentre, so face 3 of a new tetrahedron lies in an
original face and all new gluings are label preserving.

A normal curve on the boundary is carried along in an exact rational
straight-segment model: each boundary face is an affine triangle, arc
endpoints sit at fixed rational positions on the edges, and arcs are
straight segments.  Barycentres of crowded edges and faces are placed
between the median arcs, which is what makes the arc count per face drop.
"""
from __future__ import annotations

from fractions import Fraction

from .boundary import BoundaryCurve, check_curve
from .errors import TriangulationError
from .triangulation import FACE_VERTICES, IDENTITY, Triangulation, boundary_edge_sides, face_edges, skeleton

FLAGS = tuple((v, e, f) for f in range(4) for e in face_edges(f) for v in e)
FLAG_INDEX = {flag: i for i, flag in enumerate(FLAGS)}
PER_TET = len(FLAGS)  # 24


def _other_edge_at(v, e, f):
    return next(g for g in face_edges(f) if v in g and g != e)


def _other_face_on(e, f):
    return next(g for g in range(4) if g not in e and g != f)


def subdivide_triangulation(tri):
    """First barycentric subdivision of ``tri`` (24 tetrahedra per tetrahedron)."""
    gluings = {}
    for t in range(tri.tet_count):
        for (v, e, f), k in FLAG_INDEX.items():
            new = PER_TET * t + k
            w = e[0] if e[1] == v else e[1]
            gluings[(new, 0)] = (PER_TET * t + FLAG_INDEX[(w, e, f)], 0, IDENTITY)
            gluings[(new, 1)] = (PER_TET * t + FLAG_INDEX[(v, _other_edge_at(v, e, f), f)], 1, IDENTITY)
            gluings[(new, 2)] = (PER_TET * t + FLAG_INDEX[(v, e, _other_face_on(e, f))], 2, IDENTITY)
            target = tri.glued(t, f)
            if target is not None:
                t2, f2, perm = target
                e2 = tuple(sorted((perm[e[0]], perm[e[1]])))
                gluings[(new, 3)] = (PER_TET * t2 + FLAG_INDEX[(perm[v], e2, f2)], 3, IDENTITY)
    return Triangulation(PER_TET * tri.tet_count, gluings)


# --------------------------------------------------------------------------
# planar geometry in one boundary face


def crossing_params(k):
    """Positions of ``k`` arc endpoints along an edge, measured from its reference end."""
    if k == 1:
        return [Fraction(1, 3)]
    return [Fraction(i, k + 1) for i in range(1, k + 1)]


def edge_midpoint_param(k):
    """Edge barycentre: between the two median crossings, else the true midpoint."""
    if k >= 2:
        s = crossing_params(k)
        h = k // 2
        return (s[h - 1] + s[h]) / 2
    return Fraction(1, 2)


def _lerp(p, q, s):
    return (p[0] + (q[0] - p[0]) * s, p[1] + (q[1] - p[1]) * s)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _side_of(seg, p):
    c = _cross(seg[0], seg[1], p)
    return (c > 0) - (c < 0)


def _clip(poly, seg, keep):
    """Part of convex ``poly`` on side ``keep`` (+1/-1) of the line through ``seg``."""
    out = []
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        sp, sq = _side_of(seg, p) * keep, _side_of(seg, q) * keep
        if sp >= 0:
            out.append(p)
        if sp * sq < 0:
            cp, cq = _cross(seg[0], seg[1], p), _cross(seg[0], seg[1], q)
            out.append(_lerp(p, q, cp / (cp - cq)))
    return out


def _centroid(points):
    n = len(points)
    return (sum(p[0] for p in points) / n, sum(p[1] for p in points) / n)


class FaceModel:
    """Straight-segment picture of the arcs in one boundary face.

    ``counts[v]`` is the number of arcs cutting off face vertex ``v`` and
    ``starts[(a, b)]`` the reference end of edge ``(a, b)`` (crossings are
    numbered from it, shared with the neighbouring face).
    """

    def __init__(self, face, counts, starts):
        self.face = face
        self.verts = FACE_VERTICES[face]
        x, y, z = self.verts
        one, zero = Fraction(1), Fraction(0)
        self.pos = {x: (zero, zero), y: (one, zero), z: (zero, one)}
        self.counts = {v: counts[v] for v in self.verts}
        self.starts = starts
        self.k = {}
        for a, b in face_edges(face):
            self.k[(a, b)] = self.counts[a] + self.counts[b]
        self.arcs = {v: [self._arc(v, j) for j in range(1, self.counts[v] + 1)] for v in self.verts}
        self.mid = {e: self._edge_point(e, edge_midpoint_param(self.k[e])) for e in self.k}
        self.centre = self._place_centre()

    def _edge_point(self, e, s):
        start = self.starts[e]
        end = e[0] if start == e[1] else e[1]
        return _lerp(self.pos[start], self.pos[end], s)

    def _crossing(self, v, w, j):
        """j-th crossing (1-based) from ``v`` on edge {v, w}."""
        e = (min(v, w), max(v, w))
        k = self.k[e]
        i = j if self.starts[e] == v else k - j + 1
        return self._edge_point(e, crossing_params(k)[i - 1])

    def _arc(self, v, j):
        w1, w2 = (w for w in self.verts if w != v)
        return (self._crossing(v, w1, j), self._crossing(v, w2, j))

    def all_arcs(self):
        return [(v, seg) for v in self.verts for seg in self.arcs[v]]

    def _central_region(self):
        poly = [self.pos[v] for v in self.verts]
        for v in self.verts:
            if self.counts[v]:
                seg = self.arcs[v][-1]
                poly = _clip(poly, seg, -_side_of(seg, self.pos[v]))
        return poly

    def _place_centre(self):
        n = self.counts
        top = max(n.values())
        if top >= 2:
            v = next(u for u in self.verts if n[u] == top)
            h = top // 2
            inner, outer = self.arcs[v][h - 1], self.arcs[v][h]
            return _centroid([inner[0], inner[1], outer[1], outer[0]])
        if sum(n.values()) >= 2:
            return _centroid(self._central_region())
        bary = _centroid([self.pos[v] for v in self.verts])
        if any(_side_of(seg, bary) == 0 for _, seg in self.all_arcs()):
            return _centroid(self._central_region())
        return bary

    def sub_counts(self):
        """Arc counts in each of the six small triangles ``(v, edge)``.

        Keys are ``(v, e)``; values are 3-tuples indexed by the small
        triangle's labels (0 = v, 1 = edge barycentre, 2 = face barycentre).
        """
        out = {}
        for e in face_edges(self.face):
            for v in e:
                tri_pts = (self.pos[v], self.mid[e], self.centre)
                c = [0, 0, 0]
                for _, seg in self.all_arcs():
                    sides = [_side_of(seg, p) for p in tri_pts]
                    if 0 in sides:
                        raise TriangulationError("degenerate curve position during subdivision")
                    if sides[0] == sides[1] == sides[2]:
                        continue
                    lone = next(i for i in range(3) if sides.count(sides[i]) == 1)
                    c[lone] += 1
                out[(v, e)] = tuple(c)
        return out


def subdivide(tri, curve):
    """Subdivide ``tri`` and carry the boundary curve into the new triangulation.

    Returns ``(new_triangulation, new_curve)``.  The curve must be normal
    on the boundary (matching arc endpoints across boundary edges).
    """
    if not isinstance(curve, BoundaryCurve):
        curve = BoundaryCurve(curve)
    skel = skeleton(tri)
    check_curve(tri, curve, skel)
    sides = boundary_edge_sides(tri, skel)
    if skel.degenerate_edges & set(sides):
        raise TriangulationError("a boundary edge is identified with its own reverse")

    starts = {}
    for s in (s for pair in sides.values() for s in pair):
        sign = skel.edge_sign[(s.tet, s.a, s.b)]
        starts[(s.tet, s.face, s.a, s.b)] = s.a if sign > 0 else s.b

    new_tri = subdivide_triangulation(tri)
    counts = {}
    for t, f in skel.boundary_faces:
        arcs = curve.arcs(t, f)
        if not any(arcs):
            continue
        model = FaceModel(f, arcs, {e: starts[(t, f) + e] for e in face_edges(f)})
        for (v, e), c in model.sub_counts().items():
            if any(c):
                counts[(PER_TET * t + FLAG_INDEX[(v, e, f)], 3)] = c + (0,)
    return new_tri, BoundaryCurve(counts)


def reduce_curve(tri, curve, max_iterations=64):
    """Yield ``(triangulation, curve)`` after 0, 1, 2, ... subdivisions until at most one arc per face."""
    if not isinstance(curve, BoundaryCurve):
        curve = BoundaryCurve(curve)
    check_curve(tri, curve)
    yield tri, curve
    steps = 0
    while curve.max_arcs() > 1:
        if steps >= max_iterations:
            raise TriangulationError(f"curve still crowded after {max_iterations} subdivisions")
        tri, curve = subdivide(tri, curve)
        steps += 1
        yield tri, curve


def reduce_to_pattern(tri, curve, max_iterations=64):
    """Subdivide until the curve meets every boundary face in at most one arc.

    Returns ``(triangulation, pattern)``.
    """
    for tri, curve in reduce_curve(tri, curve, max_iterations):
        pass
    return tri, curve.to_pattern(tri)
