import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from normsurf.errors import TriangulationError
from normsurf.subdivision import subdivide_triangulation
from normsurf.triangulation import (
    FACE_VERTICES,
    TET_EDGES,
    Triangulation,
    boundary_edge_sides,
    boundary_euler_characteristic,
    check_valid,
    extend_face_map,
    inverse,
    skeleton,
    validate,
)

from conftest import CORPUS, triangulations


def networkx_edge_classes(tri):
    """Edge classes by graph components on oriented tetrahedron edges."""
    g = nx.Graph()
    g.add_nodes_from((t, a, b) for t in range(tri.tet_count) for a in range(4) for b in range(4) if a != b)
    for (t, f), (t2, _, perm) in tri.gluings.items():
        for a, b in itertools.permutations(FACE_VERTICES[f], 2):
            g.add_edge((t, a, b), (t2, perm[a], perm[b]))
    comp = {node: i for i, c in enumerate(nx.connected_components(g)) for node in c}
    groups = {}
    for t in range(tri.tet_count):
        for a, b in TET_EDGES:
            groups.setdefault(frozenset((comp[(t, a, b)], comp[(t, b, a)])), []).append((t, (a, b)))
    return sorted(groups.values()), comp


def networkx_vertex_classes(tri):
    g = nx.Graph()
    g.add_nodes_from((t, v) for t in range(tri.tet_count) for v in range(4))
    for (t, f), (t2, _, perm) in tri.gluings.items():
        for v in FACE_VERTICES[f]:
            g.add_edge((t, v), (t2, perm[v]))
    return sorted(sorted(c) for c in nx.connected_components(g))


def test_single_tet_counts():
    skel = skeleton(Triangulation(1, {}))
    assert (skel.num_edges, skel.num_vertices, len(skel.boundary_faces)) == (6, 4, 4)


def test_two_tets_one_face():
    tri = CORPUS["two-tet-one-gluing"]
    skel = skeleton(tri)
    assert skel.num_edges == 9
    assert skel.num_vertices == 5
    assert len(skel.boundary_faces) == 6


@pytest.mark.parametrize("name, edges, vertices, boundary_faces, boundary_chi", [
    ("one-tet", 6, 4, 4, 2),
    ("two-tet-one-gluing", 9, 5, 6, 2),
    ("two-tet-two-gluings", 7, 4, 4, 2),
    ("two-tet-three-gluings", 6, 4, 2, 2),
    ("lst1", 3, 1, 2, 0),
    ("lst2", 4, 1, 2, 0),
    ("lst3", 5, 1, 2, 0),
])
def test_corpus_skeletons(name, edges, vertices, boundary_faces, boundary_chi):
    tri = CORPUS[name]
    skel = skeleton(tri)
    assert (skel.num_edges, skel.num_vertices, len(skel.boundary_faces)) == (edges, vertices, boundary_faces)
    assert boundary_euler_characteristic(tri, skel) == boundary_chi
    assert not skel.degenerate_edges


def test_from_pairs_adds_inverse():
    tri = Triangulation.from_pairs(2, [(0, 3, 1, 2, (0, 1, 3))])
    t2, f2, perm = tri.glued(1, 2)
    assert (t2, f2) == (0, 3)
    assert perm == inverse(tri.glued(0, 3)[2])


def test_face_glued_twice_rejected():
    with pytest.raises(TriangulationError):
        Triangulation.from_pairs(2, [(0, 3, 1, 3, (0, 1, 2)), (0, 3, 1, 2, (0, 1, 3))])


@pytest.mark.parametrize("gluings, kind", [
    ({(0, 3): (1, 3, (0, 1, 2, 3))}, "non-involutive"),
    ({(0, 3): (0, 3, (0, 1, 2, 3))}, "self-gluing"),
    ({(0, 3): (5, 3, (0, 1, 2, 3)), (5, 3): (0, 3, (0, 1, 2, 3))}, "out-of-range"),
    ({(0, 3): (1, 3, (0, 1, 3, 2)), (1, 3): (0, 3, (0, 1, 3, 2))}, "bad-permutation"),
])
def test_validate_reports_kind(gluings, kind):
    tri = Triangulation(2, gluings)
    assert kind in {i.kind for i in validate(tri)}
    with pytest.raises(TriangulationError) as info:
        check_valid(tri)
    assert info.value.issues


def test_extend_face_map_sends_apex_to_apex():
    perm = extend_face_map(3, 1, (0, 2, 3))
    assert perm == (0, 2, 3, 1)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_skeleton_matches_graph_oracle(name):
    for tri in (CORPUS[name], subdivide_triangulation(CORPUS[name])):
        skel = skeleton(tri)
        classes, comp = networkx_edge_classes(tri)
        assert [list(c) for c in skel.edge_classes] == classes
        assert [sorted(c) for c in skel.vertex_classes] == networkx_vertex_classes(tri)
        for i, members in enumerate(skel.edge_classes):
            t0, (a0, b0) = members[0]
            for t, (a, b) in members:
                want = 1 if comp[(t, a, b)] == comp[(t0, a0, b0)] else -1
                assert skel.edge_sign[(t, a, b)] == want
            assert (i in skel.degenerate_edges) == (comp[(t0, a0, b0)] == comp[(t0, b0, a0)])


@settings(max_examples=60, deadline=None)
@given(triangulations())
def test_skeleton_property_oracle(tri):
    skel = skeleton(tri)
    classes, _ = networkx_edge_classes(tri)
    assert [list(c) for c in skel.edge_classes] == classes
    assert [sorted(c) for c in skel.vertex_classes] == networkx_vertex_classes(tri)


@settings(max_examples=40, deadline=None)
@given(triangulations())
def test_relabel_preserves_skeleton_counts(tri):
    perm = list(range(tri.tet_count))
    random.Random(tri.tet_count).shuffle(perm)
    other = tri.relabel(perm)
    a, b = skeleton(tri), skeleton(other)
    assert (a.num_edges, a.num_vertices, len(a.boundary_faces)) == (b.num_edges, b.num_vertices, len(b.boundary_faces))
    assert sorted(map(len, a.edge_classes)) == sorted(map(len, b.edge_classes))


def test_boundary_edges_have_two_sides():
    for name, tri in CORPUS.items():
        sides = boundary_edge_sides(tri)
        assert all(len(s) == 2 for s in sides.values()), name
