import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normsurf.boundary import all_patterns, pattern_cycles
from normsurf.cone_enum import enumerate_solutions, hilbert_basis
from normsurf.errors import IncompatibleError, NotASolutionError, PreconditionError
from normsurf.normal_system import (
    NormalVector,
    boundary_restrictions,
    boundary_trace,
    compatible,
    complexity,
    matching_equations,
)
from normsurf.surface_geom import haken_sum, reconstruct, report, surface_report
from normsurf.triangulation import FACE_VERTICES

from conftest import CORPUS, triangulations


def linear_euler(tri, v):
    """Vertices from edge weights, edges from arc counts, faces from disk counts."""
    arcs = 0
    faces = list(tri.internal_pairs()) + [((t, f), None) for t, f in tri.boundary_faces()]
    for (t, f), _ in faces:
        for w in FACE_VERTICES[f]:
            arcs += v[7 * t + w] + v[7 * t + 4 + _quad(f, w)]
    return complexity(tri, v) - arcs + sum(v)


def _quad(f, w):
    from normsurf.normal_system import quad_separating
    return quad_separating(f, w)


def single(disk):
    return NormalVector.unit(1, 0, disk)


def test_unit_triangle():
    tri = CORPUS["one-tet"]
    cx = reconstruct(tri, single(0))
    assert len(cx.disks) == 1 and len(cx.free) == 3 and not cx.glued
    rep = report(tri, cx)
    assert (rep.components, rep.euler, rep.complexity, rep.orientable, rep.boundary_circles) == (1, 1, 3, True, 1)
    assert rep.genus_per_component == (0,)


def test_unit_quad():
    tri = CORPUS["one-tet"]
    cx = reconstruct(tri, single(5))
    assert len(cx.disks) == 1 and len(cx.free) == 4
    rep = report(tri, cx)
    assert (rep.euler, rep.complexity, rep.boundary_circles) == (1, 4, 1)


def test_parallel_triangles_stay_apart():
    tri = CORPUS["one-tet"]
    cx = reconstruct(tri, 2 * single(1))
    assert len(cx.disks) == 2 and not cx.glued
    assert report(tri, cx).components == 2


def test_vertex_linking_collection():
    rep = surface_report(CORPUS["one-tet"], NormalVector([1, 1, 1, 1, 0, 0, 0]))
    assert (rep.components, rep.euler, rep.faces) == (4, 4, 4)


def test_lst1_fundamentals():
    tri = CORPUS["lst1"]
    got = [(tuple(v), r.euler, r.boundary_circles, r.orientable, r.genus_per_component)
           for v in hilbert_basis(matching_equations(tri)) for r in [surface_report(tri, v)]]
    assert got == [
        ((0, 0, 0, 0, 0, 1, 0), 0, 1, False, (1,)),   # Moebius band
        ((1, 0, 0, 1, 1, 0, 0), 1, 1, True, (0,)),    # disk
        ((0, 1, 1, 0, 0, 0, 1), 0, 2, True, (0,)),    # annulus
        ((1, 1, 1, 1, 0, 0, 0), 1, 1, True, (0,)),    # disk (vertex link)
    ]


def test_interior_vertex_link_is_a_sphere():
    tri = CORPUS["two-tet-three-gluings"]
    rep = surface_report(tri, NormalVector([0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]))
    assert (rep.components, rep.euler, rep.boundary_circles, rep.orientable) == (1, 2, 0, True)


def test_refuses_bad_vectors():
    tri = CORPUS["two-tet-one-gluing"]
    with pytest.raises(IncompatibleError) as info:
        reconstruct(CORPUS["one-tet"], NormalVector([0, 0, 0, 0, 1, 1, 0]))
    assert info.value.tet == 0
    with pytest.raises(NotASolutionError):
        reconstruct(tri, NormalVector.unit(2, 0, 0))
    with pytest.raises(PreconditionError):
        reconstruct(tri, single(0))


def test_haken_sum_refusals():
    tri = CORPUS["one-tet"]
    sys = matching_equations(tri)
    assert haken_sum(tri, sys, single(0), NormalVector.zero(1)) == single(0)
    with pytest.raises(IncompatibleError) as info:
        haken_sum(tri, sys, single(4), single(6))
    assert info.value.tet == 0 and "tetrahedron 0" in str(info.value)
    with pytest.raises(PreconditionError):
        haken_sum(tri, sys, NormalVector([0, 0, 0, 0, 1, 1, 0]), single(0))


def test_doubling_doubles_complexity():
    tri = CORPUS["lst3"]
    for v in hilbert_basis(matching_equations(tri)):
        assert complexity(tri, 2 * v) == 2 * complexity(tri, v)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_report_invariants(name):
    tri = CORPUS[name]
    sols = [v for v in enumerate_solutions(matching_equations(tri), 2) if any(v)]
    for v in random.Random(name).sample(sols, min(300, len(sols))):
        rep = surface_report(tri, v)
        assert rep.vertices == rep.complexity == complexity(tri, v)
        assert rep.euler == linear_euler(tri, v)
        assert rep.euler == rep.vertices - rep.edges + rep.faces
        assert sum(p.euler for p in rep.parts) == rep.euler
        for p in rep.parts:
            if p.orientable:
                assert p.euler == 2 - 2 * p.genus - p.boundary_circles
            else:
                assert p.euler == 2 - p.genus - p.boundary_circles and p.genus >= 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_pattern_boundaries_are_parallel_copies(name):
    tri = CORPUS[name]
    for pattern in all_patterns(tri):
        cycles = pattern_cycles(tri, pattern)
        sys = boundary_restrictions(tri, pattern)
        for v in enumerate_solutions(sys, 2):
            trace = boundary_trace(tri, v)
            mult = []
            for cycle in cycles:
                counts = {sum(trace[tf]) for tf in cycle}
                assert len(counts) == 1
                mult.append(counts.pop())
            assert surface_report(tri, v).boundary_circles == sum(mult)


@settings(max_examples=25, deadline=None)
@given(triangulations(max_tets=2), st.integers(0, 10**6))
def test_relabelling_invariance(tri, seed):
    rng = random.Random(seed)
    sys = matching_equations(tri)
    basis = hilbert_basis(sys)
    v = NormalVector.zero(tri.tet_count)
    for b in basis:
        if compatible(v, b) and rng.random() < 0.5:
            v = v + rng.randrange(1, 3) * b
    perm = list(range(tri.tet_count))
    rng.shuffle(perm)
    moved = [0] * len(v)
    for t in range(tri.tet_count):
        moved[7 * perm[t]:7 * perm[t] + 7] = v.tet(t)
    a, b = surface_report(tri, v), surface_report(tri.relabel(perm), moved)
    assert (a.components, a.euler, a.complexity, a.orientable, a.boundary_circles, a.parts) == \
           (b.components, b.euler, b.complexity, b.orientable, b.boundary_circles, b.parts)


def test_report_text_and_record():
    rep = surface_report(CORPUS["lst1"], NormalVector([0, 0, 0, 0, 0, 1, 0]))
    assert rep.as_text() == ("components: 1\neuler: 0\ncomplexity: 2\norientable: no\n"
                             "boundary_circles: 1\ngenus_per_component: 1\n")
    rec = rep.as_record()
    assert rec["genus_per_component"] == [1] and rec["parts"][0]["orientable"] is False
