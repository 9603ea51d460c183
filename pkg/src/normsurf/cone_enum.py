"""Fundamental solutions of a matching system.

:func:`hilbert_basis` runs a Contejean-Devie completion over every quad
orthant (a choice of at most one quadrilateral type per tetrahedron).  Each
orthant's cone splits into independent blocks of variables that share no
equation; blocks are solved once and shared between orthants.

:func:`brute_force_fundamentals` is the independent oracle: a bounded
backtracking enumeration of all admissible solutions followed by a
componentwise-minimality sieve.  It shares nothing with the completion
code except the :class:`LinearSystem` it reads.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExceeded, DecompositionError, PreconditionError
from .normal_system import NormalVector, complexity, is_admissible

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000
DEFAULT_MAX_NODES = 20_000_000


def graded_key(v):
    """Graded lexicographic order: smaller total first, then earlier coordinates larger."""
    return (sum(v), tuple(-x for x in v))


@dataclass(frozen=True)
class FundamentalSet:
    basis: tuple
    system: object

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __contains__(self, v):
        return tuple(v) in {tuple(b) for b in self.basis}

    def bounded(self, bound):
        """Elements whose largest coordinate is at most ``bound``."""
        return [b for b in self.basis if max(b, default=0) <= bound]

    def as_set(self):
        return {tuple(b) for b in self.basis}


@dataclass(frozen=True)
class Decomposition:
    """Multiset of basis elements with multiplicities, in basis order."""

    summands: tuple

    def total_multiplicity(self):
        return sum(k for _, k in self.summands)

    def weighted_sum(self, num_vars):
        out = [0] * num_vars
        for vec, k in self.summands:
            for i, x in enumerate(vec):
                out[i] += k * x
        return NormalVector(out)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)


# --------------------------------------------------------------------------
# completion over one block


def _forced_by_sign(a, live):
    """Drop variables pinned to zero by rows whose live coefficients share one sign."""
    live = list(live)
    changed = True
    while changed and live:
        changed = False
        sub = a[:, live]
        for row in sub:
            nz = row != 0
            if nz.any() and ((row[nz] > 0).all() or (row[nz] < 0).all()):
                dead = {live[j] for j in np.flatnonzero(nz)}
                live = [v for v in live if v not in dead]
                changed = True
                break
    return live


def _blocks(a, live):
    """Connected groups of live variables linked by shared equations."""
    if not live:
        return []
    sub = a[:, live]
    rows = sub[(sub != 0).any(axis=1)]
    n = len(live)
    if rows.shape[0] == 0:
        return [(v,) for v in live]
    inc = (rows != 0).astype(np.int8)
    adj = csr_matrix(inc.T @ inc)
    ncomp, labels = connected_components(adj, directed=False)
    groups = [[] for _ in range(ncomp)]
    for j in range(n):
        groups[labels[j]].append(live[j])
    return [tuple(g) for g in groups]


def _dominated(cand, basis):
    mask = np.zeros(len(cand), dtype=bool)
    for b in basis:
        mask |= (cand >= b).all(axis=1)
    return mask


def _unique_rows(m):
    if m.dtype != object:
        return np.unique(m, axis=0)
    rows = sorted({tuple(r) for r in m.tolist()})
    return np.array(rows, dtype=object).reshape(len(rows), m.shape[1])


def completion_basis(a, budget=DEFAULT_BUDGET):
    """Minimal non-zero solutions of ``a @ x = 0, x >= 0`` (Contejean-Devie).

    Candidates grow one unit at a time; from a candidate with defect ``d``
    only unit steps ``e_j`` with ``d . a e_j < 0`` are taken, and candidates
    dominating a known solution are discarded.  ``budget`` caps the total
    number of candidates generated.

    Works in int64 unless ``a`` is an object array (Python integers), which
    callers pass when the int64 range could be approached.
    """
    a = np.asarray(a)
    dtype = object if a.dtype == object else np.int64
    a = a.astype(dtype)
    a = a[(a != 0).any(axis=1)]
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=dtype)
    basis = np.zeros((0, n), dtype=dtype)
    frontier = np.eye(n, dtype=dtype)
    generated = n
    while len(frontier):
        defect = frontier @ a.T
        solved = ~defect.any(axis=1)
        if solved.any():
            basis = np.vstack([basis, frontier[solved]])
        rest, defect = frontier[~solved], defect[~solved]
        if not len(rest):
            break
        steps = defect @ a
        rows, cols = np.nonzero(steps < 0)
        cand = rest[rows]
        cand[np.arange(len(rows)), cols] += 1
        cand = _unique_rows(cand)
        if len(basis):
            cand = cand[~_dominated(cand, basis)]
        generated += len(cand)
        if generated > budget:
            raise BudgetExceeded(f"completion generated more than {budget} candidates")
        frontier = cand
    return basis


def _solve_block(args):
    a_block, budget = args
    return completion_basis(a_block, budget)


def eliminate(a):
    """Substitute away variables that a row writes as a non-negative combination of others.

    A row ``x_i = sum b_j x_j`` with ``b_j >= 0`` lets ``x_i`` be dropped.
    Returns ``(reduced, lift)`` with ``x = lift @ y`` for solutions ``y`` of
    ``reduced @ y = 0, y >= 0``.  ``lift`` is non-negative and contains an
    identity row for each kept variable, so the map is an order isomorphism
    and minimal solutions correspond exactly.
    """
    a = np.array(a, dtype=object)
    lift = np.eye(a.shape[1], dtype=object)
    while True:
        a = a[(a != 0).any(axis=1)]
        hit = None
        for row in a:
            nz = np.flatnonzero(row)
            for i in nz:
                if abs(row[i]) == 1 and all(row[j] * row[i] < 0 for j in nz if j != i):
                    hit = (row, i)
                    break
            if hit:
                break
        if hit is None:
            dead = [j for row in a if _one_signed(row) for j in np.flatnonzero(row)]
            if not dead:
                return a, lift
            keep = [j for j in range(a.shape[1]) if j not in set(dead)]
            a, lift = a[:, keep], lift[:, keep]
            continue
        row, i = hit
        b = -row * row[i]
        b[i] = 0
        a = a + np.outer(a[:, i], b)
        lift = lift + np.outer(lift[:, i], b)
        a = np.delete(a, i, axis=1)
        lift = np.delete(lift, i, axis=1)


def _one_signed(row):
    nz = [x for x in row if x]
    return bool(nz) and (all(x > 0 for x in nz) or all(x < 0 for x in nz))


def _fits_int64(a, budget):
    # completion coordinates stay below the number of rounds, itself below the budget
    return not a.size or int(np.abs(a).max()) * a.shape[1] * budget < 2 ** 62


def orthants(sys):
    """Distinct admissible variable supports, one per maximal quad orthant.

    The "no quadrilateral" choice in a tetrahedron is a face of every
    single-quad choice, so only maximal orthants are listed; their fundamental
    solutions include those of every sub-orthant.
    """
    per_tet = []
    for group in sys.quad_groups:
        allowed = [q for q in group if q not in sys.forced_zero]
        per_tet.append([(q,) for q in allowed] or [()])
    base = [i for i in range(sys.num_vars) if i not in sys.forced_zero and (i % 7) < 4]
    seen = []
    for choice in itertools.product(*per_tet):
        support = tuple(sorted(base + [q for c in choice for q in c]))
        seen.append(support)
    return sorted(set(seen))


def _orthant_pieces(a, support):
    """Independent reduced sub-problems of one orthant, as ``(matrix, lift rows, columns)``."""
    live = _forced_by_sign(a, support)
    if not live:
        return []
    reduced, lift = eliminate(a[:, live])
    pieces = []
    if reduced.shape[0] == 0:
        groups = [(j,) for j in range(lift.shape[1])]
    else:
        groups = _blocks(reduced, range(reduced.shape[1]))
    for g in groups:
        cols = list(g)
        sub = reduced[:, cols]
        sub = sub[(sub != 0).any(axis=1)]
        block_lift = lift[:, cols]
        used = (block_lift != 0).any(axis=1)
        pieces.append((sub, tuple(live[i] for i in np.flatnonzero(used)), block_lift[used]))
    return pieces


def hilbert_basis(sys, budget=DEFAULT_BUDGET, parallelism=1):
    """All admissible fundamental solutions of ``sys``.

    Each maximal quad orthant is reduced by :func:`eliminate`, split into
    independent blocks, and each distinct block is solved once by
    completion.  Raises :class:`BudgetExceeded` if any block needs more than
    ``budget`` completion candidates; nothing is returned in that case.
    """
    a = sys.matrix()
    pieces = []
    for support in orthants(sys):
        pieces.extend(_orthant_pieces(a, support))
    jobs = {}
    for sub, _, _ in pieces:
        key = (sub.shape, tuple(sub.ravel().tolist()))
        jobs.setdefault(key, sub)
    keys = sorted(jobs)
    log.debug("%d pieces, %d distinct blocks", len(pieces), len(keys))
    args = []
    for k in keys:
        sub = jobs[k]
        dtype = np.int64 if _fits_int64(sub, budget) else object
        args.append((np.asarray(sub, dtype=dtype).reshape(sub.shape), budget))
    if parallelism > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            solved = list(pool.map(_solve_block, args))
    else:
        solved = [_solve_block(x) for x in args]
    bases = dict(zip(keys, solved))

    found = set()
    for sub, vars_, lift in pieces:
        key = (sub.shape, tuple(sub.ravel().tolist()))
        for y in bases[key]:
            x = lift.dot(np.asarray(y, dtype=object))
            v = [0] * sys.num_vars
            for var, val in zip(vars_, x):
                v[var] = int(val)
            found.add(tuple(v))
    basis = _minimal(found)
    return FundamentalSet(tuple(NormalVector(v) for v in sorted(basis, key=graded_key)), sys)


def _minimal(vectors):
    """Drop vectors that dominate another vector of the collection."""
    vecs = sorted(set(vectors), key=sum)
    keep = []
    for v in vecs:
        if not any(all(x <= y for x, y in zip(k, v)) for k in keep):
            keep.append(v)
    return keep


# --------------------------------------------------------------------------
# brute-force oracle


def _sparse_rows(sys):
    rows = []
    for i, j, k, l in sys.equations:
        coef = {}
        for var, s in ((i, 1), (j, 1), (k, -1), (l, -1)):
            coef[var] = coef.get(var, 0) + s
        coef = {v: c for v, c in coef.items() if c}
        if coef:
            rows.append(coef)
    return rows


def enumerate_solutions(sys, bound, max_nodes=DEFAULT_MAX_NODES):
    """Yield every admissible solution with ``x_i <= bound_i`` (bound may be an int).

    Backtracking over a static variable order; when a variable is the last
    unassigned one of an equation its value is solved for rather than
    searched.  Quadrilateral restriction and forced zeros are enforced while
    assigning.
    """
    n = sys.num_vars
    ub = [bound] * n if isinstance(bound, int) else list(bound)
    if len(ub) != n:
        raise ValueError("bound vector has the wrong length")
    for i in sys.forced_zero:
        ub[i] = 0
    rows = _sparse_rows(sys)

    order = []
    remaining = [set(r) for r in rows]
    candidates = set(range(n))
    while candidates:
        def score(v):
            sizes = [len(rem) for rem in remaining if v in rem]
            return (ub[v] != 0, min(sizes, default=n + 1), v)
        v = min(candidates, key=score)
        candidates.remove(v)
        order.append(v)
        for rem in remaining:
            rem.discard(v)
    closing = {v: [] for v in order}
    for r, coef in enumerate(rows):
        last = max(coef, key=order.index)
        closing[last].append(r)

    quad_tet = {q: q // 7 for grp in sys.quad_groups for q in grp}
    value = [0] * n
    partial = [0] * len(rows)
    row_of = [[(r, c) for r, coef in enumerate(rows) for var, c in coef.items() if var == v] for v in range(n)]
    quad_used = {}
    nodes = 0

    def assign(v, x):
        value[v] = x
        for r, c in row_of[v]:
            partial[r] += c * x

    def unassign(v):
        x = value[v]
        for r, c in row_of[v]:
            partial[r] -= c * x
        value[v] = 0

    def choices(v):
        close = closing[v]
        if close:
            r0 = close[0]
            c = rows[r0][v]
            num = -partial[r0]
            if num % c:
                return ()
            x = num // c
            if not 0 <= x <= ub[v]:
                return ()
            for r in close[1:]:
                if partial[r] + rows[r][v] * x:
                    return ()
            return (x,)
        return range(ub[v] + 1)

    def rec(pos):
        nonlocal nodes
        if pos == n:
            yield NormalVector(value)
            return
        v = order[pos]
        for x in choices(v):
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded(f"brute-force search exceeded {max_nodes} nodes")
            t = quad_tet.get(v)
            if x and t is not None:
                if quad_used.get(t, v) != v:
                    continue
                quad_used[t] = v
            assign(v, x)
            yield from rec(pos + 1)
            unassign(v)
            if x and t is not None:
                del quad_used[t]

    yield from rec(0)


def brute_force_fundamentals(sys, bound, max_nodes=DEFAULT_MAX_NODES):
    """Componentwise-minimal non-zero admissible solutions with all coordinates <= bound."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    sols = [s for s in enumerate_solutions(sys, bound, max_nodes) if any(s)]
    sols.sort(key=sum)
    mins = np.zeros((0, sys.num_vars), dtype=np.int64)
    keep = []
    for _, level in itertools.groupby(sols, key=sum):
        level = list(level)
        arr = np.array(level, dtype=np.int64)
        new = ~_dominated(arr, mins) if len(mins) else np.ones(len(arr), dtype=bool)
        chosen = arr[new]
        mins = np.vstack([mins, chosen])
        keep.extend(v for v, ok in zip(level, new) if ok)
    return FundamentalSet(tuple(sorted(keep, key=graded_key)), sys)


def verify_fundamental(sys, v):
    """True iff ``v`` is non-zero and not a sum of two non-zero solutions."""
    v = NormalVector(v)
    if not any(v):
        return False
    for u in enumerate_solutions(sys, list(v)):
        if any(u) and u != v:
            return False
    return True


# --------------------------------------------------------------------------
# decomposition


def decompose(sys, basis, v, tri=None):
    """Write ``v`` as a non-negative combination of basis elements.

    Returns the decomposition with the smallest total multiplicity; among
    those, the one whose summand index sequence (sorted, with repeats) is
    lexicographically first, i.e. earlier basis elements are preferred.
    Only elements lying below ``v`` (hence in its quad orthant) are tried.
    The search depth is capped by ``complexity(v)`` when ``tri`` is given
    (every non-zero surface meets the 1-skeleton, and complexity is
    additive) and by the coordinate total otherwise.
    """
    v = NormalVector(v)
    if not is_admissible(sys, v):
        raise PreconditionError("decompose needs an admissible solution of the system")
    if not any(v):
        return Decomposition(())
    elems = [NormalVector(b) for b in basis if any(b) and all(x <= y for x, y in zip(b, v))]
    cap = sum(v)
    if tri is not None:
        cap = min(cap, complexity(tri, v))
    totals = [sum(b) for b in elems]
    nz = [tuple(i for i, x in enumerate(b) if x) for b in elems]
    target_total = sum(v)

    @lru_cache(maxsize=None)
    def search(rem, start, depth):
        if depth == 0:
            return () if not any(rem) else None
        rem_total = sum(rem)
        tail = totals[start:]
        if not tail or rem_total < depth * min(tail) or rem_total > depth * max(tail):
            return None
        for i in range(start, len(elems)):
            b = elems[i]
            if all(rem[j] >= b[j] for j in nz[i]):
                nxt = tuple(r - x for r, x in zip(rem, b))
                found = search(nxt, i, depth - 1)
                if found is not None:
                    return (i,) + found
        return None

    for depth in range(1, cap + 1):
        if depth * min(totals, default=target_total + 1) > target_total:
            break
        found = search(tuple(v), 0, depth)
        if found is not None:
            counts = {}
            for i in found:
                counts[i] = counts.get(i, 0) + 1
            return Decomposition(tuple((elems[i], k) for i, k in sorted(counts.items())))
    raise DecompositionError(f"no decomposition of {tuple(v)} over {len(elems)} basis elements")
