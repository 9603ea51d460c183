import dataclasses

import pytest

from normsurf import seifert
from normsurf.boundary import BoundaryPattern, all_patterns
from normsurf.cone_enum import hilbert_basis
from normsurf.errors import PreconditionError, VerificationError
from normsurf.normal_system import NormalVector, boundary_restrictions, boundary_trace, compatible
from normsurf.seifert import TORUS_NOTE, classify, theorem_check

from conftest import CORPUS

BALL = CORPUS["two-tet-three-gluings"]
PATTERN = BoundaryPattern({(0, 3): 1, (1, 3): 1})
SPHERE = NormalVector([0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0])


def basis_for(tri, pattern):
    return hilbert_basis(boundary_restrictions(tri, pattern))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_partition_is_exhaustive_and_disjoint(name):
    tri = CORPUS[name]
    for pattern in all_patterns(tri):
        basis = basis_for(tri, pattern)
        cb = classify(tri, pattern, basis)
        parts = [e.vector for group in (cb.seifert_like, cb.bounded_other, cb.closed) for e in group]
        assert sorted(parts) == sorted(basis.basis)
        assert len(cb) == len(basis)
        for e in cb.closed:
            assert not any(map(any, boundary_trace(tri, e.vector).values()))
        for e in cb.seifert_like + cb.bounded_other:
            for (t, f), counts in boundary_trace(tri, e.vector).items():
                assert all(c == 0 for w, c in enumerate(counts) if w != pattern.arc(t, f))


def test_empty_pattern_gives_only_closed():
    cb = classify(BALL, BoundaryPattern.empty(BALL), basis_for(BALL, BoundaryPattern.empty(BALL)))
    assert not cb.seifert_like and not cb.bounded_other
    assert [e.vector for e in cb.closed] == [SPHERE]


def test_ball_classification():
    cb = classify(BALL, PATTERN, basis_for(BALL, PATTERN))
    assert len(cb.seifert_like) == 2 and len(cb.closed) == 1
    assert all(e.report.euler == 1 for e in cb.seifert_like)
    assert cb.closed[0].report.euler == 2 and not cb.flagged_tori()
    assert cb.as_record()["scope"] == seifert.SCOPE_NOTE


def test_torus_note():
    part = type("Part", (), {"euler": 0, "orientable": True, "boundary_circles": 0})()
    rep = type("Rep", (), {"boundary_circles": 0, "parts": (part,)})()
    assert seifert._note(rep) == TORUS_NOTE


def test_fundamental_passes_alone():
    cb = classify(BALL, PATTERN, basis_for(BALL, PATTERN))
    s = cb.seifert_like[0].vector
    verdict = theorem_check(BALL, PATTERN, s)
    assert verdict.passed
    assert [(e.vector, k) for e, k in verdict.summands] == [(s, 1)]


def test_bounded_plus_closed_is_recovered():
    basis = basis_for(BALL, PATTERN)
    cb = classify(BALL, PATTERN, basis)
    for s in cb.seifert_like:
        for q in cb.closed:
            if not compatible(s.vector, q.vector):
                continue
            verdict = theorem_check(BALL, PATTERN, s.vector + q.vector, basis=basis)
            roles = sorted((e.role, k) for e, k in verdict.summands)
            assert roles == [("closed", 1), ("seifert-like", 1)]
            assert all(c.passed for c in verdict.clauses)


def test_two_circles_rejected():
    tri = CORPUS["lst1"]
    pattern = BoundaryPattern({(0, 1): 2, (0, 2): 1})
    with pytest.raises(PreconditionError):
        theorem_check(tri, pattern, NormalVector([0, 1, 1, 0, 0, 0, 1]))
    with pytest.raises(PreconditionError):
        theorem_check(BALL, PATTERN, NormalVector.unit(2, 0, 0))


def test_failed_clause_raises_with_verdict(monkeypatch):
    real = seifert.surface_report
    target = SPHERE + classify(BALL, PATTERN, basis_for(BALL, PATTERN)).seifert_like[0].vector

    def skewed(tri, v, skel=None):
        rep = real(tri, v, skel)
        return rep if tuple(v) == tuple(target) else dataclasses.replace(rep, euler=rep.euler + 1)

    monkeypatch.setattr(seifert, "surface_report", skewed)
    with pytest.raises(VerificationError) as info:
        theorem_check(BALL, PATTERN, target)
    verdict = info.value.verdict
    assert [c.passed for c in verdict.clauses] == [True, True, False]
    assert not theorem_check(BALL, PATTERN, target, strict=False).passed
    assert "clause c: FAIL" in verdict.as_text()
