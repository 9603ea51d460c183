"""Pattern-restricted systems: sorting fundamentals by boundary and checking decompositions.

A solution of the system restricted by a one-arc-per-face boundary
pattern is either closed or bounded by parallel copies of the pattern
curve.  Here "seifert-like" means exactly one boundary circle; whether a
surface is incompressible or of minimal genus is never decided, and
closed tori are only flagged, not tested for boundary parallelism.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cone_enum import decompose, hilbert_basis
from .errors import PreconditionError, VerificationError
from .normal_system import NormalVector, boundary_restrictions, is_admissible
from .surface_geom import surface_report
from .triangulation import skeleton

TORUS_NOTE = "torus: boundary parallelism undetermined"
SCOPE_NOTE = "incompressibility and genus minimality are not checked"


def _note(rep):
    if rep.boundary_circles == 0 and any(p.euler == 0 and p.orientable and p.boundary_circles == 0
                                         for p in rep.parts):
        return TORUS_NOTE
    return ""


@dataclass(frozen=True)
class ClassifiedElement:
    vector: NormalVector
    report: object
    note: str = ""

    @property
    def role(self):
        n = self.report.boundary_circles
        return "closed" if n == 0 else "seifert-like" if n == 1 else "bounded"

    def as_record(self):
        return {"vector": list(self.vector), "role": self.role, "euler": self.report.euler,
                "complexity": self.report.complexity, "boundary_circles": self.report.boundary_circles,
                "genus_per_component": list(self.report.genus_per_component),
                "orientable": self.report.orientable, "note": self.note}


@dataclass(frozen=True)
class ClassifiedBasis:
    """A fundamental set split by boundary-circle count; the three parts partition it."""

    seifert_like: tuple
    bounded_other: tuple
    closed: tuple

    def __len__(self):
        return len(self.seifert_like) + len(self.bounded_other) + len(self.closed)

    def flagged_tori(self):
        return [e for e in self.closed if e.note == TORUS_NOTE]

    def as_record(self):
        return {"seifert_like": [e.as_record() for e in self.seifert_like],
                "bounded_other": [e.as_record() for e in self.bounded_other],
                "closed": [e.as_record() for e in self.closed],
                "scope": SCOPE_NOTE}


def classify(tri, pattern, basis):
    """Sort the fundamentals of a pattern-restricted system by number of boundary circles."""
    skel = skeleton(tri)
    groups = {"seifert-like": [], "bounded": [], "closed": []}
    for v in basis:
        rep = surface_report(tri, v, skel)
        elem = ClassifiedElement(NormalVector(v), rep, _note(rep))
        groups[elem.role].append(elem)
    return ClassifiedBasis(tuple(groups["seifert-like"]), tuple(groups["bounded"]), tuple(groups["closed"]))


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`theorem_check`: the decomposition, per-summand reports and clause results."""

    vector: NormalVector
    report: object
    summands: tuple  # (ClassifiedElement, multiplicity)
    clauses: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.clauses)

    def as_record(self):
        return {
            "vector": list(self.vector),
            "euler": self.report.euler,
            "complexity": self.report.complexity,
            "summands": [dict(e.as_record(), multiplicity=k) for e, k in self.summands],
            "clauses": {c.name: {"passed": c.passed, "detail": c.detail} for c in self.clauses},
            "passed": self.passed,
            "scope": SCOPE_NOTE,
        }

    def as_text(self):
        lines = [f"vector: {' '.join(map(str, self.vector))}",
                 f"euler: {self.report.euler}", f"complexity: {self.report.complexity}"]
        for e, k in self.summands:
            extra = f" ({e.note})" if e.note else ""
            lines.append(f"summand: {k} x [{' '.join(map(str, e.vector))}] {e.role} "
                         f"euler={e.report.euler} complexity={e.report.complexity}{extra}")
        for c in self.clauses:
            lines.append(f"clause {c.name}: {'pass' if c.passed else 'FAIL'} ({c.detail})")
        lines.append(f"verdict: {'pass' if self.passed else 'FAIL'}")
        lines.append(f"note: {SCOPE_NOTE}")
        return "\n".join(lines) + "\n"


def theorem_check(tri, pattern, v, basis=None, strict=True):
    """Decompose a one-circle solution and check how its boundary is shared among the summands.

    Clauses: (a) boundary circles add up, so exactly one summand carries
    boundary and it has multiplicity 1; (b) that summand has a single
    boundary circle; (c) Euler characteristic and complexity are additive
    over the decomposition.  With ``strict`` a failed clause raises
    :class:`VerificationError` carrying the verdict.
    """
    sys = boundary_restrictions(tri, pattern)
    v = NormalVector(v)
    if len(v) != sys.num_vars or not is_admissible(sys, v):
        raise PreconditionError("vector is not an admissible solution of the pattern-restricted system")
    skel = skeleton(tri)
    rep = surface_report(tri, v, skel)
    if rep.boundary_circles != 1:
        raise PreconditionError(f"expected exactly one boundary circle, found {rep.boundary_circles}")
    if basis is None:
        basis = hilbert_basis(sys)
    dec = decompose(sys, basis, v, tri)

    summands = []
    for vec, k in dec:
        r = surface_report(tri, vec, skel)
        summands.append((ClassifiedElement(vec, r, _note(r)), k))

    circle_sum = sum(e.report.boundary_circles * k for e, k in summands)
    bounded = [(e, k) for e, k in summands if e.report.boundary_circles]
    ok_a = circle_sum == 1 and len(bounded) == 1 and bounded[0][1] == 1
    clause_a = Clause("a", ok_a, f"sum of boundary circles x multiplicity = {circle_sum}; "
                                 f"{len(bounded)} bounded summand(s) with multiplicities {[k for _, k in bounded]}")
    ok_b = len(bounded) == 1 and bounded[0][0].report.boundary_circles == 1
    clause_b = Clause("b", ok_b, "bounded summand has "
                      + (f"{bounded[0][0].report.boundary_circles} boundary circle(s)" if bounded
                         else "no boundary circles"))
    chi = sum(e.report.euler * k for e, k in summands)
    gamma = sum(e.report.complexity * k for e, k in summands)
    ok_c = chi == rep.euler and gamma == rep.complexity
    clause_c = Clause("c", ok_c, f"euler {rep.euler} vs {chi}; complexity {rep.complexity} vs {gamma}")

    verdict = Verdict(v, rep, tuple(summands), (clause_a, clause_b, clause_c))
    if strict and not verdict.passed:
        failed = ", ".join(c.name for c in verdict.clauses if not c.passed)
        raise VerificationError(f"decomposition check failed on clause(s) {failed}", verdict)
    return verdict
