"""Normal curves on the boundary surface of a triangulation.

A normal arc in a boundary face is named by the face vertex it cuts off.
:class:`BoundaryCurve` records how many arcs of each type every boundary
face carries; :class:`BoundaryPattern` is the special case of at most one
arc per face, which is what the restricted matching system consumes.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import TriangulationError
from .triangulation import FACE_VERTICES, Issue, boundary_edge_sides, skeleton


def _freeze(mapping):
    return MappingProxyType(dict(sorted(mapping.items())))


@dataclass(frozen=True)
class BoundaryCurve:
    """Arc counts per boundary face.

    ``counts[(tet, face)]`` is a 4-tuple indexed by tetrahedron vertex; the
    entry for ``face`` itself is always zero.  Faces without arcs are
    omitted, so two curves compare equal exactly when they carry the same
    arcs.
    """

    counts: Mapping[tuple[int, int], tuple[int, int, int, int]]

    def __post_init__(self):
        clean = {}
        for (t, f), c in self.counts.items():
            c = tuple(int(x) for x in c)
            if len(c) != 4 or c[f] != 0 or min(c) < 0:
                raise TriangulationError(f"bad arc counts {c} for face {t}.{f}")
            if any(c):
                clean[(int(t), int(f))] = c
        object.__setattr__(self, "counts", _freeze(clean))

    def __hash__(self):
        return hash(tuple(self.counts.items()))

    def arcs(self, tet, face):
        return self.counts.get((tet, face), (0, 0, 0, 0))

    def max_arcs(self):
        return max((sum(c) for c in self.counts.values()), default=0)

    def __add__(self, other):
        keys = set(self.counts) | set(other.counts)
        return BoundaryCurve({k: tuple(x + y for x, y in zip(self.arcs(*k), other.arcs(*k)))
                              for k in keys})

    def scaled(self, k):
        return BoundaryCurve({key: tuple(k * x for x in c) for key, c in self.counts.items()})

    def to_pattern(self, tri):
        """The pattern of a curve with at most one arc per face."""
        arcs = {}
        for t, f in tri.boundary_faces():
            c = self.arcs(t, f)
            if sum(c) > 1:
                raise TriangulationError(f"face {t}.{f} carries {sum(c)} arcs; a pattern allows one")
            arcs[(t, f)] = c.index(1) if sum(c) else None
        return BoundaryPattern(arcs)


@dataclass(frozen=True)
class BoundaryPattern:
    """At most one allowed normal arc per boundary face.

    ``arcs[(tet, face)]`` is the cut-off vertex of the allowed arc or
    ``None``.  Boundary faces missing from the mapping behave as ``None``.
    """

    arcs: Mapping[tuple[int, int], Optional[int]]

    def __post_init__(self):
        clean = {(int(t), int(f)): (None if v is None else int(v)) for (t, f), v in self.arcs.items()}
        object.__setattr__(self, "arcs", _freeze(clean))

    def __hash__(self):
        return hash(tuple(self.arcs.items()))

    @classmethod
    def empty(cls, tri):
        return cls({tf: None for tf in tri.boundary_faces()})

    def arc(self, tet, face):
        return self.arcs.get((tet, face))

    def as_curve(self):
        counts = {}
        for (t, f), v in self.arcs.items():
            if v is not None:
                c = [0, 0, 0, 0]
                c[v] = 1
                counts[(t, f)] = tuple(c)
        return BoundaryCurve(counts)

    def is_empty(self):
        return all(v is None for v in self.arcs.values())


def curve_issues(tri, curve, skel=None):
    """Normality violations of ``curve``: unmatched arc endpoints across boundary edges."""
    skel = skel or skeleton(tri)
    boundary = set(skel.boundary_faces)
    issues = []
    for (t, f) in curve.counts:
        if (t, f) not in boundary:
            issues.append(Issue("not-boundary", t, f, "curve has arcs in a glued face"))
    if issues:
        return issues
    for cls, (s1, s2) in sorted(boundary_edge_sides(tri, skel).items()):
        n1 = _endpoints(curve, s1)
        n2 = _endpoints(curve, s2)
        if n1 != n2:
            issues.append(Issue("unmatched-endpoints", s1.tet, s1.face,
                                f"edge class {cls}: {n1} arc endpoints on {s1.tet}.{s1.face}, "
                                f"{n2} on {s2.tet}.{s2.face}"))
    return issues


def _endpoints(curve, side):
    c = curve.arcs(side.tet, side.face)
    return c[side.a] + c[side.b]


def check_curve(tri, curve, skel=None):
    issues = curve_issues(tri, curve, skel)
    if issues:
        raise TriangulationError("boundary curve is not normal: " + "; ".join(map(str, issues)), issues)


def pattern_issues(tri, pattern, skel=None):
    skel = skel or skeleton(tri)
    boundary = set(skel.boundary_faces)
    issues = []
    for (t, f), v in pattern.arcs.items():
        if (t, f) not in boundary:
            issues.append(Issue("glued-face", t, f, "pattern references a glued face"))
        elif v is not None and v not in FACE_VERTICES[f]:
            issues.append(Issue("bad-arc", t, f, f"vertex {v} is not a vertex of face {f}"))
    if issues:
        return issues
    return curve_issues(tri, pattern.as_curve(), skel)


def check_pattern(tri, pattern, skel=None):
    issues = pattern_issues(tri, pattern, skel)
    if issues:
        raise TriangulationError("invalid boundary pattern: " + "; ".join(map(str, issues)), issues)


def pattern_cycles(tri, pattern, skel=None):
    """Split the pattern's arcs into closed curves.

    Returns a list of cycles, each a list of boundary faces in traversal
    order.  Raises :class:`TriangulationError` on an invalid pattern.
    """
    skel = skel or skeleton(tri)
    check_pattern(tri, pattern, skel)
    sides = boundary_edge_sides(tri, skel)
    # neighbour across each boundary-face edge
    across = {}
    for s1, s2 in sides.values():
        across[(s1.tet, s1.face, s1.a, s1.b)] = (s2.tet, s2.face, s2.a, s2.b)
        across[(s2.tet, s2.face, s2.a, s2.b)] = (s1.tet, s1.face, s1.a, s1.b)

    def arc_edges(t, f):
        v = pattern.arc(t, f)
        return [(min(v, w), max(v, w)) for w in FACE_VERTICES[f] if w != v]

    arc_faces = [tf for tf, v in pattern.arcs.items() if v is not None]
    seen = set()
    cycles = []
    for start in arc_faces:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        cur, leave = start, arc_edges(*start)[0]
        while True:
            t2, f2, a2, b2 = across[(cur[0], cur[1]) + leave]
            nxt = (t2, f2)
            if nxt == start:
                break
            if nxt in seen:
                raise TriangulationError(f"pattern arcs branch at face {t2}.{f2}")
            seen.add(nxt)
            cycle.append(nxt)
            entered = (a2, b2)
            leave = next(e for e in arc_edges(*nxt) if e != entered)
            cur = nxt
        cycles.append(cycle)
    return cycles


def curve_from_edge_weights(tri, weights, skel=None):
    """The normal curve crossing boundary edge class ``c`` exactly ``weights[c]`` times.

    Returns None when the weights admit no normal curve (a face violates the
    triangle inequality or has odd perimeter).
    """
    skel = skel or skeleton(tri)
    counts = {}
    for t, f in skel.boundary_faces:
        x, y, z = FACE_VERTICES[f]
        w = {e: weights[skel.edge_of[(t,) + e]] for e in ((x, y), (x, z), (y, z))}
        c = [0, 0, 0, 0]
        for v, (e1, e2, opp) in ((x, ((x, y), (x, z), (y, z))),
                                 (y, ((x, y), (y, z), (x, z))),
                                 (z, ((x, z), (y, z), (x, y)))):
            twice = w[e1] + w[e2] - w[opp]
            if twice < 0 or twice % 2:
                return None
            c[v] = twice // 2
        counts[(t, f)] = tuple(c)
    return BoundaryCurve(counts)


def all_patterns(tri, skel=None):
    """Every valid boundary pattern of ``tri``, the empty one first.

    Order: product order over boundary faces, each face trying ``None``
    and then its vertices in increasing order.  Edge constraints are
    checked as soon as both sides of a boundary edge are assigned.
    """
    skel = skel or skeleton(tri)
    faces = list(skel.boundary_faces)
    pos = {tf: i for i, tf in enumerate(faces)}
    checks = [[] for _ in faces]
    for s1, s2 in boundary_edge_sides(tri, skel).values():
        last = max(pos[(s1.tet, s1.face)], pos[(s2.tet, s2.face)])
        checks[last].append((s1, s2))
    choices = [(None,) + FACE_VERTICES[f] for _, f in faces]
    chosen = {}

    def ends(side):
        v = chosen[(side.tet, side.face)]
        return int(v in (side.a, side.b))

    def rec(i):
        if i == len(faces):
            yield BoundaryPattern(dict(chosen))
            return
        for v in choices[i]:
            chosen[faces[i]] = v
            if all(ends(s1) == ends(s2) for s1, s2 in checks[i]):
                yield from rec(i + 1)
        del chosen[faces[i]]

    return list(rec(0))
