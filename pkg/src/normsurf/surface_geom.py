"""Build the normal surface of an admissible vector and read off its topology.

Parallel disks are stacked canonically: triangles at a vertex are numbered
outward from the vertex, quadrilaterals of type ``q`` outward from the edge
``{0, q+1}``.  Along a tetrahedron edge the intersection points therefore
run: triangles at one end, quadrilaterals, triangles at the other end.
Across a glued face the k-th arc of a type (counted from its cut-off
vertex) is glued to the k-th arc of the matching type on the other side,
which is the regular resolution of every Haken-sum switch.
"""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from .errors import IncompatibleError, NotASolutionError, PreconditionError
from .normal_system import (
    NormalVector,
    arc_disks,
    complexity,
    is_admissible,
    is_solution,
    matching_equations,
    quad_conflict,
    quad_pairs,
    quad_separating,
)
from .triangulation import FACE_VERTICES, skeleton


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def disk_corners(disk):
    """Tetrahedron edges met by a disk type, in cyclic order around the disk."""
    if disk < 4:
        return [_pair(disk, w) for w in range(4) if w != disk]
    (a, b), (c, d) = quad_pairs(disk - 4)
    return [_pair(a, c), _pair(b, c), _pair(b, d), _pair(a, d)]


def _side(disk, face):
    """Corners of the disk's side in ``face``, ordered along the disk's cyclic orientation."""
    cyc = disk_corners(disk)
    k = len(cyc)
    for i in range(k):
        e1, e2 = cyc[i], cyc[(i + 1) % k]
        if face not in e1 and face not in e2:
            return e1, e2
    raise ValueError(f"disk type {disk} has no side in face {face}")


@dataclass
class SurfaceComplex:
    """Cell structure of a reconstructed normal surface.

    ``disks[i] = (tet, disk_type, copy)``.  ``glued`` holds
    ``(disk_a, face_a, disk_b, face_b, flip)`` for every pair of disk sides
    identified across an internal face, where ``flip`` is 1 when the two
    disks' cyclic orientations disagree along the shared side.  ``free``
    holds the ``(disk, face)`` sides lying in boundary faces.  Disk corners
    are ``(disk, edge)``; ``corner_links`` records their identifications.
    """

    tri: object
    vector: NormalVector
    disks: list = field(default_factory=list)
    glued: list = field(default_factory=list)
    free: list = field(default_factory=list)
    corner_links: list = field(default_factory=list)

    def corners(self):
        return [(i, e) for i, (_, d, _) in enumerate(self.disks) for e in disk_corners(d)]


def _arc_stack(v, tet, face, cutoff, index):
    """Disk ids of the arcs cutting off ``cutoff`` in ``face``, nearest the vertex first."""
    tri_disk, quad_disk = arc_disks(face, cutoff)
    base = 7 * tet
    out = [index[(tet, tri_disk, k)] for k in range(v[base + tri_disk])]
    nq = v[base + quad_disk]
    near_first = 0 in (face, cutoff)
    copies = range(nq) if near_first else range(nq - 1, -1, -1)
    out += [index[(tet, quad_disk, k)] for k in copies]
    return out


def reconstruct(tri, v):
    """Glue the disks of ``v`` into a :class:`SurfaceComplex`."""
    v = NormalVector(v)
    if len(v) != 7 * tri.tet_count:
        raise PreconditionError(f"vector length {len(v)} does not match {tri.tet_count} tetrahedra")
    bad = quad_conflict(v)
    if bad is not None:
        raise IncompatibleError(f"tetrahedron {bad} holds two quadrilateral types; "
                                "no embedded surface exists", bad)
    if not is_solution(matching_equations(tri), v):
        raise NotASolutionError("vector does not satisfy the matching equations")

    cx = SurfaceComplex(tri, v)
    index = {}
    for t in range(tri.tet_count):
        for d in range(7):
            for k in range(v[7 * t + d]):
                index[(t, d, k)] = len(cx.disks)
                cx.disks.append((t, d, k))

    for (t, f), (t2, f2, perm) in tri.internal_pairs():
        for w in FACE_VERTICES[f]:
            mine = _arc_stack(v, t, f, w, index)
            theirs = _arc_stack(v, t2, f2, perm[w], index)
            for a, b in zip(mine, theirs):
                e1, e2 = _side(cx.disks[a][1], f)
                g1, g2 = _side(cx.disks[b][1], f2)
                m1 = _pair(perm[e1[0]], perm[e1[1]])
                m2 = _pair(perm[e2[0]], perm[e2[1]])
                flip = 1 if (m1, m2) == (g1, g2) else 0
                cx.glued.append((a, f, b, f2, flip))
                cx.corner_links.append(((a, e1), (b, m1)))
                cx.corner_links.append(((a, e2), (b, m2)))

    for t, f in tri.boundary_faces():
        for w in FACE_VERTICES[f]:
            for a in _arc_stack(v, t, f, w, index):
                cx.free.append((a, f))
    return cx


@dataclass(frozen=True)
class ComponentReport:
    disks: int
    euler: int
    orientable: bool
    boundary_circles: int
    genus: int


@dataclass(frozen=True)
class SurfaceReport:
    """Topology of a normal surface.

    ``genus_per_component`` holds the orientable genus of orientable
    components and the number of cross-caps of non-orientable ones.
    ``vertices`` is the number of corner classes of the cell complex, which
    always equals ``complexity``; the two are computed independently.
    """

    components: int
    euler: int
    complexity: int
    orientable: bool
    boundary_circles: int
    genus_per_component: tuple
    vertices: int
    edges: int
    faces: int
    parts: tuple = ()

    def as_record(self):
        rec = asdict(self)
        rec["genus_per_component"] = list(self.genus_per_component)
        rec["parts"] = [asdict(p) for p in self.parts]
        return rec

    def as_text(self):
        keys = ("components", "euler", "complexity", "orientable", "boundary_circles", "genus_per_component")
        lines = []
        for k in keys:
            val = getattr(self, k)
            if isinstance(val, tuple):
                val = " ".join(map(str, val)) or "-"
            elif isinstance(val, bool):
                val = "yes" if val else "no"
            lines.append(f"{k}: {val}")
        return "\n".join(lines) + "\n"


def _genus(euler, orientable, circles):
    if orientable:
        return (2 - euler - circles) // 2
    return 2 - euler - circles


def report(tri, cx, skel=None):
    """Components, Euler characteristic, orientability, boundary and genus of ``cx``."""
    n = len(cx.disks)
    comp = DisjointSet(range(n))
    adj = [[] for _ in range(n)]
    for a, _, b, _, flip in cx.glued:
        comp.merge(a, b)
        adj[a].append((b, flip))
        adj[b].append((a, flip))

    corners = DisjointSet(cx.corners())
    for c1, c2 in cx.corner_links:
        corners.merge(c1, c2)

    roots = sorted({comp[i] for i in range(n)})
    slot = {r: k for k, r in enumerate(roots)}
    m = len(roots)
    faces = [0] * m
    edges = [0] * m
    for i in range(n):
        faces[slot[comp[i]]] += 1
    for a, *_ in cx.glued:
        edges[slot[comp[a]]] += 1
    for a, _ in cx.free:
        edges[slot[comp[a]]] += 1
    verts = [0] * m
    for cls in corners.subsets():
        disk = next(iter(cls))[0]
        verts[slot[comp[disk]]] += 1

    orient = [True] * m
    sign = [None] * n
    for start in range(n):
        if sign[start] is not None:
            continue
        sign[start] = 0
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b, flip in adj[a]:
                want = sign[a] ^ flip
                if sign[b] is None:
                    sign[b] = want
                    queue.append(b)
                elif sign[b] != want:
                    orient[slot[comp[a]]] = False

    # boundary circles: free sides chained through shared corner classes
    bd = DisjointSet()
    for a, f in cx.free:
        e1, e2 = _side(cx.disks[a][1], f)
        r1, r2 = corners[(a, e1)], corners[(a, e2)]
        bd.add(r1)
        bd.add(r2)
        bd.merge(r1, r2)
    circles = [0] * m
    for cls in bd.subsets():
        disk = next(iter(cls))[0]
        circles[slot[comp[disk]]] += 1

    parts = []
    for k in range(m):
        chi = verts[k] - edges[k] + faces[k]
        parts.append(ComponentReport(faces[k], chi, orient[k], circles[k], _genus(chi, orient[k], circles[k])))
    parts.sort(key=lambda p: (p.euler, p.boundary_circles, p.disks, p.orientable))
    return SurfaceReport(
        components=m,
        euler=sum(verts) - sum(edges) + sum(faces),
        complexity=complexity(tri, cx.vector, skel),
        orientable=all(orient),
        boundary_circles=sum(circles),
        genus_per_component=tuple(p.genus for p in parts),
        vertices=sum(verts),
        edges=sum(edges),
        faces=sum(faces),
        parts=tuple(parts),
    )


def surface_report(tri, v, skel=None):
    return report(tri, reconstruct(tri, v), skel)


def haken_sum(tri, sys, u, v):
    """Coordinate sum of two compatible admissible solutions."""
    u, v = NormalVector(u), NormalVector(v)
    for name, w in (("first", u), ("second", v)):
        if not is_admissible(sys, w):
            raise PreconditionError(f"{name} summand is not an admissible solution")
    for t in range(tri.tet_count):
        qu, qv = u.quad_type(t), v.quad_type(t)
        if qu is not None and qv is not None and qu != qv:
            raise IncompatibleError(
                f"summands use different quadrilateral types in tetrahedron {t} "
                f"(q{qu + 1} and q{qv + 1})", t)
    return u + v


def surface_complexity(tri, v, skel=None):
    """Intersection count with the 1-skeleton (edge-weight computation)."""
    return complexity(tri, v, skel or skeleton(tri))


__all__ = [
    "SurfaceComplex", "SurfaceReport", "ComponentReport", "reconstruct", "report",
    "surface_report", "haken_sum", "surface_complexity", "disk_corners", "quad_separating",
]
