"""Triangulated compact 3-manifolds and their skeleta.

A triangulation is a number of tetrahedra together with a partial gluing
map on their faces.  Vertices of every tetrahedron are labelled 0..3 and
face ``f`` is the face opposite vertex ``f``.  A gluing sends
``(tet, face)`` to ``(tet', face', perm)`` where ``perm`` is a permutation
of ``(0, 1, 2, 3)`` taking the vertices of ``face`` onto the vertices of
``face'`` (and ``face`` itself onto ``face'``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from types import MappingProxyType
from typing import Mapping

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import TriangulationError

FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))
TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
IDENTITY = (0, 1, 2, 3)

Face = tuple[int, int]
Perm = tuple[int, int, int, int]


def inverse(perm):
    inv = [0] * 4
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def face_edges(face):
    """The three tetrahedron edges (sorted vertex pairs) lying in ``face``."""
    a, b, c = FACE_VERTICES[face]
    return ((a, b), (a, c), (b, c))


def opposite_edge(a, b):
    return tuple(v for v in range(4) if v not in (a, b))


def extend_face_map(face, other_face, images):
    """Full permutation sending the sorted vertices of ``face`` to ``images``."""
    perm = [0] * 4
    perm[face] = other_face
    for v, w in zip(FACE_VERTICES[face], images):
        perm[v] = w
    return tuple(perm)


@dataclass(frozen=True, eq=True)
class Triangulation:
    """Tetrahedra with face gluings.

    ``gluings`` maps ``(tet, face)`` to ``(tet', face', perm)``.  The
    constructor stores the map as given; use :meth:`from_pairs` to build a
    triangulation from one record per glued pair, or :func:`validate` to
    check the involution invariants of a hand-built map.
    """

    tet_count: int
    gluings: Mapping[Face, tuple[int, int, Perm]] = field(default_factory=dict)

    def __post_init__(self):
        if self.tet_count < 1:
            raise TriangulationError("a triangulation needs at least one tetrahedron")
        clean = {}
        for (t, f), (t2, f2, perm) in self.gluings.items():
            clean[(int(t), int(f))] = (int(t2), int(f2), tuple(int(p) for p in perm))
        object.__setattr__(self, "gluings", MappingProxyType(dict(sorted(clean.items()))))

    def __hash__(self):
        return hash((self.tet_count, tuple(self.gluings.items())))

    @classmethod
    def from_pairs(cls, tet_count, pairs):
        """Build from records ``(t, f, t2, f2, perm)``, adding the inverse of each.

        ``perm`` is either a full permutation of 0..3 or the three images of
        the sorted vertices of face ``f``.
        """
        gluings = {}
        for t, f, t2, f2, perm in pairs:
            if len(perm) == 3:
                perm = extend_face_map(f, f2, perm)
            perm = tuple(perm)
            for key in ((t, f), (t2, f2)):
                if key in gluings:
                    raise TriangulationError(f"face {key[0]}.{key[1]} glued twice")
            gluings[(t, f)] = (t2, f2, perm)
            gluings[(t2, f2)] = (t, f, inverse(perm))
        return cls(tet_count, gluings)

    def glued(self, tet, face):
        return self.gluings.get((tet, face))

    def faces(self):
        return [(t, f) for t in range(self.tet_count) for f in range(4)]

    def boundary_faces(self):
        return [tf for tf in self.faces() if tf not in self.gluings]

    def internal_pairs(self):
        """Each glued pair once, as ``((t, f), (t2, f2, perm))`` with ``(t, f)`` the smaller side."""
        return [(k, v) for k, v in self.gluings.items() if k < (v[0], v[1])]

    def relabel(self, tet_perm):
        """Renumber tetrahedra: tetrahedron ``i`` becomes ``tet_perm[i]``."""
        return Triangulation(
            self.tet_count,
            {(tet_perm[t], f): (tet_perm[t2], f2, p) for (t, f), (t2, f2, p) in self.gluings.items()},
        )


@dataclass(frozen=True)
class Issue:
    kind: str
    tet: int
    face: int
    message: str

    def __str__(self):
        return f"{self.kind} at {self.tet}.{self.face}: {self.message}"


def validate(tri):
    """Check the gluing invariants; returns a list of :class:`Issue` (empty when valid)."""
    issues = []
    targets = {}
    for (t, f), (t2, f2, perm) in tri.gluings.items():
        if not (0 <= t < tri.tet_count and 0 <= f < 4):
            issues.append(Issue("out-of-range", t, f, "source face does not exist"))
            continue
        if not (0 <= t2 < tri.tet_count and 0 <= f2 < 4):
            issues.append(Issue("out-of-range", t, f, f"target {t2}.{f2} does not exist"))
            continue
        if sorted(perm) != [0, 1, 2, 3] or perm[f] != f2:
            issues.append(Issue("bad-permutation", t, f, f"{perm} does not map face {f} onto face {f2}"))
            continue
        if (t, f) == (t2, f2):
            issues.append(Issue("self-gluing", t, f, "face glued to itself"))
            continue
        if (t2, f2) in targets:
            other = targets[(t2, f2)]
            issues.append(Issue("duplicate-gluing", t, f,
                                f"{t2}.{f2} is also the image of {other[0]}.{other[1]}"))
        targets[(t2, f2)] = (t, f)
        back = tri.gluings.get((t2, f2))
        if back is None or back[:2] != (t, f) or tuple(back[2]) != inverse(perm):
            issues.append(Issue("non-involutive", t, f,
                                f"{t2}.{f2} does not glue back to {t}.{f} by the inverse map"))
    return issues


def check_valid(tri):
    issues = validate(tri)
    if issues:
        raise TriangulationError("invalid triangulation: " + "; ".join(map(str, issues)), issues)


@dataclass(frozen=True)
class Skeleton:
    """Identified edges and vertices of a triangulation.

    ``edge_classes[i]`` lists the tetrahedron edges ``(tet, (a, b))`` with
    ``a < b`` that are identified to edge ``i``.  ``edge_sign[(tet, a, b)]``
    is +1 when the edge ``a -> b`` runs along the class's reference
    direction and -1 otherwise.  ``degenerate_edges`` are classes identified
    with their own reverse.
    """

    edge_classes: tuple
    vertex_classes: tuple
    boundary_faces: tuple
    edge_of: Mapping
    vertex_of: Mapping
    edge_sign: Mapping
    degenerate_edges: frozenset

    @property
    def num_edges(self):
        return len(self.edge_classes)

    @property
    def num_vertices(self):
        return len(self.vertex_classes)

    def edge_class(self, tet, a, b):
        return self.edge_of[(tet, min(a, b), max(a, b))]

    def boundary_edge_classes(self):
        found = set()
        for t, f in self.boundary_faces:
            for a, b in face_edges(f):
                found.add(self.edge_of[(t, a, b)])
        return sorted(found)


_ORDERED = tuple((a, b) for a in range(4) for b in range(4) if a != b)
_ORDERED_INDEX = {p: i for i, p in enumerate(_ORDERED)}
_ORDERED_TABLE = np.full((4, 4), -1)
for (_a, _b), _i in _ORDERED_INDEX.items():
    _ORDERED_TABLE[_a, _b] = _i
_FWD = np.array([_ORDERED_INDEX[e] for e in TET_EDGES])
_BWD = np.array([_ORDERED_INDEX[(b, a)] for a, b in TET_EDGES])


def _components(size, pairs):
    """Component label of each node, labels numbered by first appearance."""
    src, dst = pairs[:, 0], pairs[:, 1]
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(graph, directed=False)
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(labels[np.sort(first)])] = np.arange(len(first))
    return rank[labels]


def _grouped(ids, members):
    order = np.argsort(ids, kind="stable")
    bounds = np.flatnonzero(np.diff(ids[order])) + 1
    return tuple(tuple(members[i] for i in chunk) for chunk in np.split(order, bounds))


@lru_cache(maxsize=64)
def skeleton(tri):
    """Connected components of the edge and vertex identifications.

    Cached per triangulation; the result is immutable.
    """
    check_valid(tri)
    n = tri.tet_count
    rows = np.array([(t, f, t2) + perm for (t, f), (t2, _, perm) in tri.gluings.items()],
                    dtype=np.int64).reshape(-1, 7)
    t, f, t2, perm = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3:]
    edge_pairs, vert_pairs = [], []
    for v in range(4):
        on = f != v
        vert_pairs.append(np.stack([4 * t[on] + v, 4 * t2[on] + perm[on, v]], axis=1))
    for a, b in _ORDERED:
        on = (f != a) & (f != b)
        image = _ORDERED_TABLE[perm[on, a], perm[on, b]]
        edge_pairs.append(np.stack([12 * t[on] + _ORDERED_INDEX[(a, b)], 12 * t2[on] + image], axis=1))
    edge_pairs, vert_pairs = np.concatenate(edge_pairs), np.concatenate(vert_pairs)

    oriented = _components(12 * n, edge_pairs)
    base = 12 * np.arange(n)[:, None]
    fwd, bwd = oriented[base + _FWD].ravel(), oriented[base + _BWD].ravel()
    lo, hi = np.minimum(fwd, bwd), np.maximum(fwd, bwd)
    _, first, inverse = np.unique(lo * (12 * n) + hi, return_index=True, return_inverse=True)
    inverse = inverse.ravel()
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    edge_ids = rank[inverse]
    ref = np.empty(len(first), dtype=np.int64)
    ref[rank] = fwd[first]
    signs = np.where(fwd == ref[edge_ids], 1, -1)

    keys = [(t, a, b) for t in range(n) for a, b in TET_EDGES]
    members = [(t, e) for t in range(n) for e in TET_EDGES]
    classes = _grouped(edge_ids, members)
    degenerate = frozenset(np.unique(edge_ids[fwd == bwd]).tolist())

    vert_ids = _components(4 * n, vert_pairs)
    vkeys = [(t, v) for t in range(n) for v in range(4)]

    return Skeleton(
        edge_classes=classes,
        vertex_classes=_grouped(vert_ids, vkeys),
        boundary_faces=tuple(tri.boundary_faces()),
        edge_of=MappingProxyType(dict(zip(keys, edge_ids.tolist()))),
        vertex_of=MappingProxyType(dict(zip(vkeys, vert_ids.tolist()))),
        edge_sign=MappingProxyType(dict(zip(keys, signs.tolist()))),
        degenerate_edges=degenerate,
    )


@dataclass(frozen=True)
class BoundaryEdge:
    """One side of a boundary edge: edge ``(a, b)`` of boundary face ``(tet, face)``."""

    tet: int
    face: int
    a: int
    b: int


def boundary_edge_sides(tri, skel=None):
    """Map each boundary edge class to the boundary-face edges lying on it.

    In a triangulated 3-manifold every boundary edge has exactly two sides;
    anything else is reported as a :class:`TriangulationError`.
    """
    skel = skel or skeleton(tri)
    sides = {}
    for t, f in skel.boundary_faces:
        for a, b in face_edges(f):
            sides.setdefault(skel.edge_of[(t, a, b)], []).append(BoundaryEdge(t, f, a, b))
    bad = [(c, len(s)) for c, s in sides.items() if len(s) != 2]
    if bad:
        c, n = bad[0]
        raise TriangulationError(f"boundary edge class {c} has {n} boundary sides (expected 2)")
    return sides


def boundary_euler_characteristic(tri, skel=None):
    skel = skel or skeleton(tri)
    faces = skel.boundary_faces
    edges = {skel.edge_of[(t, a, b)] for t, f in faces for a, b in face_edges(f)}
    verts = {skel.vertex_of[(t, v)] for t, f in faces for v in FACE_VERTICES[f]}
    return len(verts) - len(edges) + len(faces)


def all_face_maps(face, other_face):
    """All six vertex bijections between two faces, as full permutations."""
    return [extend_face_map(face, other_face, images)
            for images in permutations(FACE_VERTICES[other_face])]
