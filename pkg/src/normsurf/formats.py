"""Plain-text file formats.

Triangulation (``.tri``)::

    # comment
    tetrahedra 2
    0.3 -> 1.3 [0 1 2]

One record per glued pair; ``[p0 p1 p2]`` are the images of the vertices
of the source face in increasing order.  The reverse gluing is implied.

Boundary pattern (``.pat``): ``tet.face : vertex`` or ``tet.face : none``.

Boundary curve (``.crv``): ``tet.face : n0 n1 n2``, the arc counts cutting
off the face's vertices in increasing order.  Faces without arcs may be
omitted.

Normal vector (``.vec``): whitespace separated integers, seven per
tetrahedron in the order ``t0 t1 t2 t3 q1 q2 q3``.

Fundamental set (``.fs``): a ``# system <digest>`` header followed by one
vector per line.
"""
from __future__ import annotations

import re
from pathlib import Path

from .boundary import BoundaryCurve, BoundaryPattern
from .errors import ParseError, TriangulationError
from .normal_system import NormalVector
from .triangulation import FACE_VERTICES, Triangulation

_FACE = r"(\d+)\.(\d+)"
_GLUING = re.compile(rf"^\s*{_FACE}\s*->\s*{_FACE}\s*\[\s*(\d+)\s+(\d+)\s+(\d+)\s*\]\s*$")
_HEADER = re.compile(r"^\s*tetrahedra\s+(\d+)\s*$")
_FACE_RECORD = re.compile(rf"^\s*{_FACE}\s*:\s*(.*?)\s*$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, raw, body


def _col(raw, body):
    stripped = body.lstrip()
    return len(raw) - len(raw.lstrip()) + 1 if stripped else 1


def _int_columns(raw):
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", raw.split("#", 1)[0])]


def parse_triangulation(text, source=None):
    count = None
    pairs = []
    used = {}
    for no, raw, body in _lines(text):
        if count is None:
            m = _HEADER.match(body)
            if not m:
                raise ParseError("expected 'tetrahedra N'", no, _col(raw, body), source)
            count = int(m.group(1))
            if count < 1:
                raise ParseError("need at least one tetrahedron", no, m.start(1) + 1, source)
            continue
        m = _GLUING.match(body)
        if not m:
            raise ParseError("expected 'tet.face -> tet.face [p0 p1 p2]'", no, _col(raw, body), source)
        t, f, t2, f2, *images = (int(g) for g in m.groups())
        for grp, val, limit in ((1, t, count), (2, f, 4), (3, t2, count), (4, f2, 4)):
            if val >= limit:
                raise ParseError(f"index {val} out of range", no, m.start(grp) + 1, source)
        if sorted(images) != list(FACE_VERTICES[f2]):
            raise ParseError(f"[{' '.join(map(str, images))}] is not a bijection onto face {f2}",
                             no, m.start(5) + 1, source)
        for key, grp in (((t, f), 1), ((t2, f2), 3)):
            if key in used:
                raise ParseError(f"face {key[0]}.{key[1]} already glued on line {used[key]}",
                                 no, m.start(grp) + 1, source)
            used[key] = no
        pairs.append((t, f, t2, f2, tuple(images)))
    if count is None:
        raise ParseError("empty triangulation file", 1, 1, source)
    try:
        return Triangulation.from_pairs(count, pairs)
    except TriangulationError as exc:
        raise ParseError(str(exc), source=source) from exc


def format_triangulation(tri):
    lines = [f"tetrahedra {tri.tet_count}"]
    for (t, f), (t2, f2, perm) in tri.internal_pairs():
        images = " ".join(str(perm[v]) for v in FACE_VERTICES[f])
        lines.append(f"{t}.{f} -> {t2}.{f2} [{images}]")
    return "\n".join(lines) + "\n"


def _face_records(text, source):
    seen = {}
    for no, raw, body in _lines(text):
        m = _FACE_RECORD.match(body)
        if not m:
            raise ParseError("expected 'tet.face : ...'", no, _col(raw, body), source)
        key = (int(m.group(1)), int(m.group(2)))
        if key[1] > 3:
            raise ParseError(f"face index {key[1]} out of range", no, m.start(2) + 1, source)
        if key in seen:
            raise ParseError(f"face {key[0]}.{key[1]} repeated (first on line {seen[key]})",
                             no, m.start(1) + 1, source)
        seen[key] = no
        yield no, m, key


def parse_pattern(text, source=None):
    arcs = {}
    for no, m, (t, f) in _face_records(text, source):
        val = m.group(3)
        if val == "none":
            arcs[(t, f)] = None
        elif val.isdigit() and int(val) in FACE_VERTICES[f]:
            arcs[(t, f)] = int(val)
        else:
            raise ParseError(f"expected a vertex of face {f} or 'none', got {val!r}", no, m.start(3) + 1, source)
    return BoundaryPattern(arcs)


def format_pattern(pattern):
    return "".join(f"{t}.{f} : {'none' if v is None else v}\n" for (t, f), v in pattern.arcs.items())


def parse_curve(text, source=None):
    counts = {}
    for no, m, (t, f) in _face_records(text, source):
        vals = m.group(3).split()
        if len(vals) != 3 or not all(x.isdigit() for x in vals):
            raise ParseError("expected three non-negative arc counts", no, m.start(3) + 1, source)
        c = [0, 0, 0, 0]
        for v, x in zip(FACE_VERTICES[f], vals):
            c[v] = int(x)
        counts[(t, f)] = tuple(c)
    return BoundaryCurve(counts)


def format_curve(curve):
    out = []
    for (t, f), c in curve.counts.items():
        out.append(f"{t}.{f} : " + " ".join(str(c[v]) for v in FACE_VERTICES[f]) + "\n")
    return "".join(out)


def parse_vector(text, source=None, tet_count=None):
    values = []
    for no, raw, body in _lines(text):
        for col, tok in _int_columns(raw):
            if not tok.isdigit():
                raise ParseError(f"expected a non-negative integer, got {tok!r}", no, col, source)
            values.append(int(tok))
    if not values or len(values) % 7:
        raise ParseError(f"vector has {len(values)} entries; need a positive multiple of 7", source=source)
    if tet_count is not None and len(values) != 7 * tet_count:
        raise ParseError(f"vector has {len(values)} entries; the triangulation needs {7 * tet_count}",
                         source=source)
    return NormalVector(values)


def format_vector(v):
    v = list(v)
    return "".join(" ".join(map(str, v[i:i + 7])) + "\n" for i in range(0, len(v), 7))


def format_fundamental_set(fs):
    lines = [f"# system {fs.system.digest()}", f"# {len(fs.basis)} fundamental solutions"]
    lines += [" ".join(map(str, v)) for v in fs.basis]
    return "\n".join(lines) + "\n"


def parse_fundamental_set(text, source=None):
    """Returns ``(digest, [NormalVector, ...])``."""
    digest = None
    vectors = []
    for no, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("# system "):
            digest = raw.split()[2]
            continue
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        toks = body.split()
        if not all(t.isdigit() for t in toks) or len(toks) % 7:
            raise ParseError("expected a row of 7t non-negative integers", no, 1, source)
        vectors.append(NormalVector(int(t) for t in toks))
    return digest, vectors


_READERS = {
    "triangulation": parse_triangulation,
    "pattern": parse_pattern,
    "curve": parse_curve,
    "vector": parse_vector,
}


def read(kind, path, **kw):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", source=str(path)) from exc
    return _READERS[kind](text, source=str(path), **kw)
