"""Frozen reference values for the shipped triangulations (brute-force oracle derived)."""
import pytest

from normsurf.boundary import all_patterns
from normsurf.cone_enum import brute_force_fundamentals, enumerate_solutions, hilbert_basis
from normsurf.data import corpus_names, corpus_path, load
from normsurf.formats import format_triangulation, parse_triangulation
from normsurf.normal_system import matching_equations
from normsurf.triangulation import skeleton, validate

# name: edges, vertices, boundary faces, equations, patterns, fundamentals,
#       max coordinate, solutions up to 3, digest
REFERENCE = {
    "one-tet": (6, 4, 4, 0, 8, 7, 1, 2559, "8b3984a7b245d5d8"),
    "two-tet-one-gluing": (9, 5, 6, 3, 16, 14, 1, 45567, "e70036b1f42fbee8"),
    "two-tet-two-gluings": (7, 4, 4, 6, 8, 9, 1, 3711, "8e0a4d3c2d7255ef"),
    "two-tet-three-gluings": (6, 4, 2, 9, 4, 7, 1, 2559, "97f0892a57451856"),
    "lst1": (3, 1, 2, 3, 4, 4, 1, 27, "4034c9540a4f8f30"),
    "lst2": (4, 1, 2, 9, 4, 5, 2, 26, "7abcf7b7dca691a3"),
    "lst3": (5, 1, 2, 15, 4, 8, 3, 36, "da5c1a8362bb4433"),
}


def test_corpus_listing():
    assert sorted(corpus_names()) == sorted(REFERENCE)
    assert all(corpus_path(n).is_file() for n in REFERENCE)


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_reference_values(name):
    edges, verts, bfaces, eqs, patterns, size, top, sols, digest = REFERENCE[name]
    tri = load(name)
    assert not validate(tri)
    skel = skeleton(tri)
    assert (skel.num_edges, skel.num_vertices, len(skel.boundary_faces)) == (edges, verts, bfaces)
    sys = matching_equations(tri)
    assert len(sys.equations) == eqs and sys.digest() == digest
    assert len(all_patterns(tri)) == patterns
    fs = hilbert_basis(sys)
    assert len(fs) == size and max(max(v) for v in fs) == top
    assert set(map(tuple, fs)) == brute_force_fundamentals(sys, top).as_set()
    assert sum(1 for v in enumerate_solutions(sys, 3) if any(v)) == sols


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_round_trip(name):
    tri = load(name)
    assert parse_triangulation(format_triangulation(tri)) == tri
