import random

import pytest
from hypothesis import strategies as st

from normsurf.data import load_all
from normsurf.triangulation import FACE_VERTICES, Triangulation, validate

CORPUS = load_all()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def random_triangulation(rng, tet_count, gluings):
    """Glue ``gluings`` random face pairs of ``tet_count`` tetrahedra with random maps."""
    faces = [(t, f) for t in range(tet_count) for f in range(4)]
    rng.shuffle(faces)
    pairs = []
    for i in range(gluings):
        (t, f), (t2, f2) = faces[2 * i], faces[2 * i + 1]
        images = list(FACE_VERTICES[f2])
        rng.shuffle(images)
        pairs.append((t, f, t2, f2, tuple(images)))
    return Triangulation.from_pairs(tet_count, pairs)


@st.composite
def triangulations(draw, max_tets=3):
    n = draw(st.integers(1, max_tets))
    k = draw(st.integers(0, 2 * n))
    seed = draw(st.integers(0, 2**32 - 1))
    tri = random_triangulation(random.Random(seed), n, k)
    assert not validate(tri)
    return tri
