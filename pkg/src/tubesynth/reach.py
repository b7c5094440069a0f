"""One-step reachability certificates for polytopic difference inclusions.

The model is x(k+1) = A(k)x(k) + B(k)u(k) (+ D v(k)), with [A(k) B(k)]
ranging over the convex hull of finitely many vertex pairs [A_i B_i]
and output feedback u = F C x.  Containment of the one-step reachable
set of one polyhedron in another is decided primal-side: for each
vertex matrix and each target row, a support LP gives the tightest
bound the image attains; the verdict compares those bounds against the
target offsets.  When containment holds, the LP duals stacked row by
row form nonnegative certificate matrices G_i with

    G_i >= 0,   G_i A_src = A_tgt (A_i + B_i F C),   G_i b_src <= b_tgt,

which any third party can recheck by matrix arithmetic alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import lp
from .polytope import EmptySetError, PolyhedralSet

DEFAULT_TOL = 1e-7


class CertificateError(Exception):
    """A certificate LP failed for numerical reasons (e.g. a shape set
    without interior); the condition is reported, never guessed around."""


@dataclass
class PolytopicModel:
    """Vertex matrices of the inclusion plus the fixed output map.

    vertices : list of (A_i, B_i) pairs, A_i n-by-n and B_i n-by-m
    C        : r-by-n output map
    D        : optional n-by-p disturbance map
    """

    vertices: List[Tuple[np.ndarray, np.ndarray]]
    C: np.ndarray
    D: Optional[np.ndarray] = None

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise ValueError("model needs at least one vertex pair")
        pairs = []
        n = None
        m = None
        for A, B in self.vertices:
            A = np.asarray(A, dtype=float)
            B = np.asarray(B, dtype=float)
            if A.ndim != 2 or A.shape[0] != A.shape[1]:
                raise ValueError("A_i must be square")
            if n is None:
                n, m = A.shape[0], B.shape[1]
            if A.shape != (n, n) or B.shape != (n, m):
                raise ValueError("vertex matrices have inconsistent shapes")
            pairs.append((A, B))
        self.vertices = pairs
        self.C = np.asarray(self.C, dtype=float)
        if self.C.ndim != 2 or self.C.shape[1] != n:
            raise ValueError("C must have %d columns" % n)
        if self.D is not None:
            self.D = np.asarray(self.D, dtype=float)
            if self.D.ndim != 2 or self.D.shape[0] != n:
                raise ValueError("D must have %d rows" % n)

    @property
    def n(self):
        return self.vertices[0][0].shape[0]

    @property
    def m(self):
        return self.vertices[0][1].shape[1]

    @property
    def r(self):
        return self.C.shape[0]

    @property
    def s(self):
        return len(self.vertices)

    @property
    def p(self):
        return 0 if self.D is None else self.D.shape[1]

    def closed_loop(self, F) -> List[np.ndarray]:
        """A_i + B_i F C for every vertex."""
        F = np.asarray(F, dtype=float).reshape(self.m, self.r)
        return [A + B @ F @ self.C for A, B in self.vertices]


@dataclass
class ContainmentReport:
    contained: bool
    certificates: Optional[List[np.ndarray]]
    worst_violation: float


def _row_supports(source: PolyhedralSet, directions):
    """Support value and dual row for each direction; None dual when
    the support is unbounded (encoded as +inf)."""
    values = []
    duals = []
    for a in directions:
        sol = lp.solve(lp.LpProblem(c=a, A_in=source.A, b_in=source.b,
                                    free=np.ones(source.dim, dtype=bool),
                                    sense=lp.MAXIMIZE))
        if sol.status == lp.INFEASIBLE:
            raise EmptySetError("source set is empty")
        if sol.status == lp.UNBOUNDED:
            values.append(np.inf)
            duals.append(None)
        else:
            values.append(float(sol.objective))
            duals.append(sol.duals_in)
    return values, duals


def check_containment(model: PolytopicModel, F, source: PolyhedralSet,
                      target: PolyhedralSet, tol=DEFAULT_TOL) -> ContainmentReport:
    """Does every admissible one-step image of ``source`` lie in ``target``?

    It suffices to check the vertex matrices: the reachable set is the
    convex hull of the per-vertex images and the target is convex.  An
    unbounded support in any row makes containment in the (finite)
    target impossible and is reported as worst_violation = +inf.
    """
    if source.dim != model.n or target.dim != model.n:
        raise ValueError("set dimensions do not match the model")
    return _containment_over_rows(model.closed_loop(F), source, target, tol)


def _containment_over_rows(maps, source, target, tol):
    """Shared row-LP sweep.  An unbounded support short-circuits: no
    finite target offset can hold it."""
    worst = -np.inf
    certs = []
    for A_map in maps:
        directions = target.A @ A_map
        G = np.zeros((target.nrows, source.nrows))
        for j in range(target.nrows):
            sol = lp.solve(lp.LpProblem(c=directions[j], A_in=source.A,
                                        b_in=source.b,
                                        free=np.ones(source.dim, dtype=bool),
                                        sense=lp.MAXIMIZE))
            if sol.status == lp.INFEASIBLE:
                raise EmptySetError("source set is empty")
            if sol.status == lp.UNBOUNDED:
                return ContainmentReport(contained=False, certificates=None,
                                         worst_violation=np.inf)
            worst = max(worst, float(sol.objective) - target.b[j])
            G[j] = sol.duals_in
        certs.append(G)
    contained = bool(worst <= tol)
    return ContainmentReport(contained=contained,
                             certificates=certs if contained else None,
                             worst_violation=float(worst))


def check_containment_disturbance(model: PolytopicModel, F, source: PolyhedralSet,
                                  v_set: PolyhedralSet, target: PolyhedralSet,
                                  tol=DEFAULT_TOL) -> ContainmentReport:
    """Containment for the disturbed step x+ = (A + B F C) x + D v.

    The check runs over the stacked vector (x, v) constrained by the
    block-diagonal system [A_src 0; 0 A_v], so the certificates are
    wider matrices covering both blocks:

        G_i [A_src 0; 0 A_v] = A_tgt [A_i + B_i F C  D],
        G_i [b_src; b_v] <= b_tgt,  G_i >= 0.
    """
    if model.D is None:
        raise ValueError("model has no disturbance map D")
    if v_set.dim != model.p:
        raise ValueError("disturbance set dimension %d, D has %d columns"
                         % (v_set.dim, model.p))
    if source.dim != model.n or target.dim != model.n:
        raise ValueError("set dimensions do not match the model")
    n, p = model.n, model.p
    stacked_A = np.zeros((source.nrows + v_set.nrows, n + p))
    stacked_A[:source.nrows, :n] = source.A
    stacked_A[source.nrows:, n:] = v_set.A
    stacked_b = np.concatenate([source.b, v_set.b])
    stacked = PolyhedralSet(stacked_A, stacked_b)
    maps = [np.hstack([A_cl, model.D]) for A_cl in model.closed_loop(F)]
    return _containment_over_rows(maps, stacked, target, tol)


def contractivity_factor(A, shape_set: PolyhedralSet) -> float:
    """Smallest factor eta such that A maps shape_set into eta*shape_set.

    ``shape_set`` must be given with unit offsets, P(W, 1); a factor
    below one certifies contraction of the autonomous step x+ = A x.
    Row-wise, eta is the largest support of the image directions, and
    stacking the support duals yields G >= 0 with G W = W A and
    G 1 <= eta 1.
    """
    if not np.all(shape_set.b == 1.0):
        raise ValueError("shape set must have all offsets equal to one")
    A = np.asarray(A, dtype=float)
    if A.shape != (shape_set.dim, shape_set.dim):
        raise ValueError("A must be %d-by-%d" % (shape_set.dim, shape_set.dim))
    try:
        values, _ = _row_supports(shape_set, shape_set.A @ A)
    except EmptySetError as exc:
        raise CertificateError("shape set is empty") from exc
    eta = max(values)
    if not np.isfinite(eta):
        raise CertificateError("shape set is unbounded along an image direction")
    return float(max(eta, 0.0))


def check_robust_invariant(model: PolytopicModel, F_static, S: PolyhedralSet,
                           V: PolyhedralSet, tol=DEFAULT_TOL) -> ContainmentReport:
    """Is S invariant for x+ = (A(k) + B(k) F C) x + D v, v in V?

    Plain containment check with source and target both equal to S
    under the static gain.
    """
    return check_containment_disturbance(model, F_static, S, V, S, tol=tol)
