"""H-representation polyhedral sets.

A set is stored as the pair (A, b) describing {x : A x <= b}.  The
operations here are the small geometric kernel the rest of the package
leans on: membership, support functions, boundedness, and brute-force
vertex enumeration for the low-dimensional sets this toolkit targets.

Values are immutable after construction (the arrays are marked
read-only), so sets can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import lp

# membership slack accepted by default; vertex deduplication distance
MEMBERSHIP_TOL = 1e-7
VERTEX_DEDUP_TOL = 1e-9


class EmptySetError(Exception):
    """The polyhedron has no points (detected by LP phase 1)."""


class UnboundedSetError(Exception):
    """The polyhedron is unbounded in a queried direction."""


@dataclass
class PolyhedralSet:
    """{x in R^n : A x <= b} with A of shape (q, n) and b of length q."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2:
            raise ValueError("A must be a 2-d array")
        q, n = A.shape
        if q < 1 or n < 1:
            raise ValueError("A must have at least one row and one column")
        if np.any(np.max(np.abs(A), axis=1) == 0.0):
            raise ValueError("A contains an all-zero row")
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if b.size != q:
            raise ValueError("b has length %d, expected %d" % (b.size, q))
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("A and b must be finite")
        A = A.copy()
        b = b.copy()
        A.setflags(write=False)
        b.setflags(write=False)
        self.A = A
        self.b = b

    @property
    def dim(self):
        return self.A.shape[1]

    @property
    def nrows(self):
        return self.A.shape[0]


def box(lo, hi) -> PolyhedralSet:
    """Axis-aligned box {x : lo <= x <= hi} as 2n inequality rows."""
    lo = np.asarray(lo, dtype=float).reshape(-1)
    hi = np.asarray(hi, dtype=float).reshape(-1)
    if lo.size != hi.size:
        raise ValueError("lo and hi have different lengths")
    if np.any(lo > hi):
        i = int(np.argmax(lo > hi))
        raise ValueError("lo[%d]=%g exceeds hi[%d]=%g" % (i, lo[i], i, hi[i]))
    n = lo.size
    A = np.zeros((2 * n, n))
    b = np.zeros(2 * n)
    for i in range(n):
        A[2 * i, i] = 1.0
        b[2 * i] = hi[i]
        A[2 * i + 1, i] = -1.0
        b[2 * i + 1] = -lo[i]
    return PolyhedralSet(A, b)


def contains_point(P: PolyhedralSet, x, tol=MEMBERSHIP_TOL) -> bool:
    """True iff every row satisfies A x <= b + tol."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != P.dim:
        raise ValueError("point has dimension %d, set has %d" % (x.size, P.dim))
    return bool(np.all(P.A @ x <= P.b + tol))


def support_lp(P: PolyhedralSet, a) -> lp.LpSolution:
    """Raw LP solution of max a.x over P (all variables free).

    The inequality duals of an optimal solution are the nonnegative
    row multipliers g with g'A = a and g'b equal to the support value;
    callers extracting containment certificates read them directly.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.size != P.dim:
        raise ValueError("direction has dimension %d, set has %d" % (a.size, P.dim))
    problem = lp.LpProblem(c=a, A_in=P.A, b_in=P.b,
                           free=np.ones(P.dim, dtype=bool), sense=lp.MAXIMIZE)
    return lp.solve(problem)


def support_max(P: PolyhedralSet, a) -> float:
    """Support value max a.x over P; errors are raised, never encoded."""
    sol = support_lp(P, a)
    if sol.status == lp.INFEASIBLE:
        raise EmptySetError("set is empty")
    if sol.status == lp.UNBOUNDED:
        raise UnboundedSetError("unbounded in the queried direction")
    return float(sol.objective)


def is_bounded(P: PolyhedralSet) -> bool:
    """Support along every +-e_i is finite.  Empty sets raise."""
    for i in range(P.dim):
        e = np.zeros(P.dim)
        for s in (1.0, -1.0):
            e[i] = s
            try:
                support_max(P, e)
            except UnboundedSetError:
                return False
        e[i] = 0.0
    return True


def vertices(P: PolyhedralSet, max_dim=6, max_subsets=500000):
    """All vertices of a bounded nonempty P, by brute force.

    Every subset of ``dim`` rows whose normals are independent is
    solved; solutions feasible in all rows are kept and deduplicated at
    1e-9 in the infinity norm.  Intended for low dimensions only; the
    caps guard against combinatorial blow-up.
    """
    n = P.dim
    q = P.nrows
    if n > max_dim:
        raise ValueError("dimension %d above the enumeration cap %d" % (n, max_dim))
    if q < n:
        raise UnboundedSetError("fewer rows than dimensions")
    if comb(q, n) > max_subsets:
        raise ValueError("row subsets %d exceed the cap %d" % (comb(q, n), max_subsets))
    if not is_bounded(P):  # raises EmptySetError on an empty set
        raise UnboundedSetError("vertex enumeration needs a bounded set")

    found = []
    for rows in combinations(range(q), n):
        M = P.A[list(rows)]
        rhs = P.b[list(rows)]
        try:
            x = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError:
            continue
        # reject ill-conditioned active sets via the residual
        if np.max(np.abs(M @ x - rhs)) > 1e-9 * (1.0 + np.max(np.abs(x))):
            continue
        if np.all(P.A @ x <= P.b + VERTEX_DEDUP_TOL):
            if not any(np.max(np.abs(x - v)) < VERTEX_DEDUP_TOL for v in found):
                found.append(x)
    return found
