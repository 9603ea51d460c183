import itertools
import random
from fractions import Fraction

import pytest

from normsurf.boundary import BoundaryCurve, curve_from_edge_weights, curve_issues
from normsurf.errors import TriangulationError
from normsurf.subdivision import (
    FLAG_INDEX,
    PER_TET,
    FaceModel,
    crossing_params,
    edge_midpoint_param,
    reduce_curve,
    reduce_to_pattern,
    subdivide,
    subdivide_triangulation,
)
from normsurf.triangulation import (
    FACE_VERTICES,
    boundary_euler_characteristic,
    face_edges,
    skeleton,
    validate,
)

from conftest import CORPUS


def random_curve(tri, rng, k, skel=None, tries=400):
    skel = skel or skeleton(tri)
    classes = skel.boundary_edge_classes()
    for _ in range(tries):
        w = [0] * skel.num_edges
        for c in classes:
            w[c] = rng.randint(0, k + 1)
        curve = curve_from_edge_weights(tri, w, skel)
        if curve is not None and curve.max_arcs() == k:
            return curve
    return None


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_subdivision_counts(name):
    tri = CORPUS[name]
    new = subdivide_triangulation(tri)
    skel, new_skel = skeleton(tri), skeleton(new)
    assert new.tet_count == 24 * tri.tet_count
    assert len(new.boundary_faces()) == 6 * len(tri.boundary_faces())
    assert not validate(new)
    face_classes = len(tri.internal_pairs()) + len(tri.boundary_faces())
    assert new_skel.num_vertices == skel.num_vertices + skel.num_edges + face_classes + tri.tet_count
    assert boundary_euler_characteristic(new, new_skel) == boundary_euler_characteristic(tri, skel)


def test_parameters():
    assert crossing_params(1) == [Fraction(1, 3)]
    assert crossing_params(3) == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert edge_midpoint_param(1) == Fraction(1, 2)
    assert edge_midpoint_param(4) == Fraction(1, 2)
    assert edge_midpoint_param(3) == Fraction(3, 8)


def test_face_model_strictly_thins_every_face():
    """Every small triangle carries fewer arcs than a face with two or more."""
    face = 3
    edges = face_edges(face)
    for counts in itertools.product(range(7), repeat=3):
        total = sum(counts)
        if total < 2 or total > 8:
            continue
        full = [0, 0, 0, 0]
        for v, c in zip(FACE_VERTICES[face], counts):
            full[v] = c
        for ends in itertools.product(*edges):
            model = FaceModel(face, full, dict(zip(edges, ends)))
            for small in model.sub_counts().values():
                assert sum(small) < total


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_subdivided_curve_is_normal_and_splits_edges(name):
    tri = CORPUS[name]
    rng = random.Random(name)
    for k in (1, 2, 3):
        curve = random_curve(tri, rng, k)
        if curve is None:
            continue
        new_tri, new_curve = subdivide(tri, curve)
        assert not curve_issues(new_tri, new_curve)
        # the two halves of every boundary-face edge carry all of its crossings
        for t, f in tri.boundary_faces():
            c = curve.arcs(t, f)
            for e in face_edges(f):
                halves = 0
                for v in e:
                    sub = new_curve.arcs(PER_TET * t + FLAG_INDEX[(v, e, f)], 3)
                    halves += sub[0] + sub[1]
                assert halves == c[e[0]] + c[e[1]]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_reduction_terminates_quickly(name):
    tri = CORPUS[name]
    rng = random.Random(name)
    for k in (2, 3):
        curve = random_curve(tri, rng, k)
        if curve is None:
            continue
        stages = list(reduce_curve(tri, curve))
        arcs = [c.max_arcs() for _, c in stages]
        assert arcs[-1] <= 1 and len(stages) - 1 < k
        assert all(a > b for a, b in zip(arcs, arcs[1:]))
        new_tri, pattern = reduce_to_pattern(tri, curve)
        assert new_tri.tet_count == tri.tet_count * PER_TET ** (len(stages) - 1)


def test_already_thin_curve_is_left_alone():
    tri = CORPUS["one-tet"]
    curve = BoundaryCurve({(0, 1): (1, 0, 0, 0), (0, 2): (1, 0, 0, 0), (0, 3): (1, 0, 0, 0)})
    new_tri, pattern = reduce_to_pattern(tri, curve)
    assert new_tri == tri and pattern.arc(0, 2) == 0


def test_non_normal_curve_rejected():
    with pytest.raises(TriangulationError):
        subdivide(CORPUS["one-tet"], BoundaryCurve({(0, 3): (2, 0, 0, 0)}))


def test_iteration_cap():
    tri = CORPUS["one-tet"]
    curve = random_curve(tri, random.Random(0), 3)
    with pytest.raises(TriangulationError):
        list(reduce_curve(tri, curve, max_iterations=1))
