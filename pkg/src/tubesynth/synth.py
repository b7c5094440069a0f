"""Backward-in-time synthesis of a time-varying output feedback.

Starting from the terminal set, each step k = K-1, ..., 0 solves two
linear programs:

* the first searches jointly over a feedback gain F(k) and nonnegative
  row-multiplier blocks G_i(k) (one per model vertex) for the choice
  that brings the one-step image of the full tube section H(k) as
  close as possible to the next traversed set, measured by a
  nonnegative defect vector that is minimised;
* when the defect is not zero, the second keeps the gain and the
  multipliers and instead shrinks the section offsets, maximising
  their sum subject to the multiplier bound, so the traversed set
  X(k) = {Q(k) x <= psi(k)} is as large a subset of H(k) as that gain
  certifies.

A zero defect means the whole section maps inside the next set, so the
section is kept unchanged ("TubeExact"); otherwise the shrunken
offsets are recorded ("Shrunk").  Every accepted step is re-certified
after the fact with an independent containment check, and the reports
ship with the result.

Optional extensions follow the same pattern: a bounded additive
disturbance widens the multiplier blocks over the stacked (state,
disturbance) constraints, and polytopic control constraints add rows
U(k) F(k) C h <= theta(k) for every vertex h of the tube section.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import lp
from .polytope import PolyhedralSet, vertices
from .reach import ContainmentReport, PolytopicModel, check_containment, \
    check_containment_disturbance
from .tube import TargetTube

TUBE_EXACT = "TubeExact"
SHRUNK = "Shrunk"

# infinity-norm threshold under which the defect counts as exactly zero
EPS_ZERO_TOL = 1e-7


class SynthesisError(Exception):
    """Synthesis aborted; carries the step index where it failed."""

    def __init__(self, k, stage, message):
        super().__init__("step k=%d (%s): %s" % (k, stage, message))
        self.k = k
        self.stage = stage


@dataclass
class SynthesisProblem:
    """Inputs of the backward recursion.

    disturbance        : per-step (W, gamma) pairs, k = 0..K-1, bounding
                         the additive disturbance via W v <= gamma; needs
                         model.D.  A zero-column D with empty (W, gamma)
                         degenerates to the nominal problem.
    control_constraints: per-step (U, theta) pairs restricting the
                         control to U u <= theta, enforced over the
                         vertices of each tube section.
    nonneg_bounds      : keep the shrunken offsets nonnegative; for a
                         nominal problem over a bounded tube with the
                         origin interior this makes the recursion always
                         succeed (the zero offsets are always feasible).
    disturbance_floor  : additionally force each traversed set to cover
                         the disturbance image D V(k) (applied at steps
                         k <= K-2; the terminal step is covered by the
                         input requirement D V(k) inside H(k+1), which
                         is validated up front).

    With a disturbance the second stage can still come up empty: the
    first stage fixes one optimal multiplier split between the state
    and disturbance blocks, and a split that spends a row's whole
    budget on the disturbance part leaves no room for positive
    offsets.  The recursion then aborts with the failing step rather
    than substituting a different relaxation.
    """

    model: PolytopicModel
    tube: TargetTube
    disturbance: Optional[List[Tuple[np.ndarray, np.ndarray]]] = None
    control_constraints: Optional[List[Tuple[np.ndarray, np.ndarray]]] = None
    nonneg_bounds: bool = True
    disturbance_floor: bool = False

    def __post_init__(self):
        if self.tube.dim != self.model.n:
            raise ValueError("tube dimension %d, model dimension %d"
                             % (self.tube.dim, self.model.n))
        K = self.tube.horizon
        if K < 1:
            raise ValueError("horizon must be at least 1")
        if self.disturbance is not None:
            if self.model.D is None:
                raise ValueError("disturbance bounds given but model has no D")
            if len(self.disturbance) != K:
                raise ValueError("need one disturbance set per step (%d)" % K)
            checked = []
            for W, gamma in self.disturbance:
                W = np.asarray(W, dtype=float)
                gamma = np.asarray(gamma, dtype=float).reshape(-1)
                if W.ndim != 2 or W.shape[1] != self.model.p:
                    raise ValueError("disturbance rows must have %d columns"
                                     % self.model.p)
                if gamma.size != W.shape[0]:
                    raise ValueError("disturbance bound length mismatch")
                checked.append((W, gamma))
            self.disturbance = checked
        if self.control_constraints is not None:
            if len(self.control_constraints) != K:
                raise ValueError("need one control set per step (%d)" % K)
            checked = []
            for U, theta in self.control_constraints:
                U = np.asarray(U, dtype=float)
                theta = np.asarray(theta, dtype=float).reshape(-1)
                if U.ndim != 2 or U.shape[1] != self.model.m:
                    raise ValueError("control rows must have %d columns"
                                     % self.model.m)
                if theta.size != U.shape[0]:
                    raise ValueError("control bound length mismatch")
                checked.append((U, theta))
            self.control_constraints = checked
        if self.disturbance_floor and self.disturbance is None:
            raise ValueError("disturbance_floor needs disturbance bounds")

    @property
    def horizon(self):
        return self.tube.horizon


@dataclass
class SynthesisResult:
    """Gains, traversed sets, per-step defects and certification."""

    gains: List[np.ndarray]                       # F(k), k = 0..K-1
    sets: List[PolyhedralSet]                     # X(k), k = 0..K
    residuals: List[np.ndarray]                   # defect vectors, k = 0..K-1
    provenance: List[str]                         # TUBE_EXACT or SHRUNK per k
    step_reports: List[ContainmentReport]         # X(k) -> X(k+1) under F(k)
    tube_step_reports: List[Optional[ContainmentReport]]  # from full H(k) when exact

    @property
    def horizon(self):
        return len(self.gains)

    @property
    def bounds(self):
        """Offset vectors of the traversed sets."""
        return [s.b for s in self.sets]

    @property
    def certified(self):
        return all(r.contained for r in self.step_reports)


def build_lp1(model: PolytopicModel, Q_now, bound_now, Q_next, bound_next,
              disturbance=None, control_rows=None) -> lp.LpProblem:
    """First-stage LP of one backward step.

    Variables, in order: defect vector (one entry per next-set row,
    nonnegative), gain entries (row-major, free), then one multiplier
    block per model vertex (row-major, nonnegative).  Equality rows tie
    each multiplier block to the gain through

        G_i [Q_now 0; 0 W] = Q_next [A_i + B_i F C  D]

    (nominal problems drop the disturbance columns), and inequality
    rows bound G_i [bound_now; gamma] <= bound_next + defect.

    ``disturbance`` is the (W, gamma) pair for this step;
    ``control_rows`` is (U, theta, tube_vertices) enforcing
    U F C h <= theta at every tube-section vertex h.
    """
    Q_now = np.asarray(Q_now, dtype=float)
    Q_next = np.asarray(Q_next, dtype=float)
    bound_now = np.asarray(bound_now, dtype=float).reshape(-1)
    bound_next = np.asarray(bound_next, dtype=float).reshape(-1)
    n, m, r, s = model.n, model.m, model.r, model.s
    q0 = Q_now.shape[0]
    q1 = Q_next.shape[0]
    if Q_now.shape[1] != n or Q_next.shape[1] != n:
        raise ValueError("section matrices must have %d columns" % n)
    if bound_now.size != q0 or bound_next.size != q1:
        raise ValueError("section bound lengths do not match their matrices")

    if disturbance is not None and model.D is not None and model.p > 0:
        W, gamma = disturbance
        W = np.asarray(W, dtype=float)
        gamma = np.asarray(gamma, dtype=float).reshape(-1)
        p = model.p
        qv = W.shape[0]
        D = model.D
    else:
        p, qv = 0, 0
        W = np.zeros((0, 0))
        gamma = np.zeros(0)
        D = np.zeros((n, 0))

    q0t = q0 + qv            # columns of each multiplier block
    nF = m * r
    nG = q1 * q0t
    nvars = q1 + nF + s * nG

    # block-diagonal section matrix and the extended data maps
    Q_ext = np.zeros((q0t, n + p))
    Q_ext[:q0, :n] = Q_now
    if qv:
        Q_ext[q0:, n:] = W
    C_ext = np.hstack([model.C, np.zeros((r, p))])
    bound_ext = np.concatenate([bound_now, gamma])

    eq_rows = []
    eq_rhs = []
    in_rows = []
    in_rhs = []
    g_cols = np.kron(np.eye(q1), Q_ext.T)        # (q1*(n+p)) x nG
    for i, (A_i, B_i) in enumerate(model.vertices):
        block = np.zeros((q1 * (n + p), nvars))
        block[:, q1:q1 + nF] = -np.kron(Q_next @ B_i, C_ext.T)
        block[:, q1 + nF + i * nG:q1 + nF + (i + 1) * nG] = g_cols
        eq_rows.append(block)
        eq_rhs.append((Q_next @ np.hstack([A_i, D])).reshape(-1))

        bound_block = np.zeros((q1, nvars))
        bound_block[:, :q1] = -np.eye(q1)
        bound_block[:, q1 + nF + i * nG:q1 + nF + (i + 1) * nG] = \
            np.kron(np.eye(q1), bound_ext[None, :])
        in_rows.append(bound_block)
        in_rhs.append(bound_next)

    if control_rows is not None:
        U, theta, section_vertices = control_rows
        U = np.asarray(U, dtype=float)
        theta = np.asarray(theta, dtype=float).reshape(-1)
        for h in section_vertices:
            y = model.C @ np.asarray(h, dtype=float)
            block = np.zeros((U.shape[0], nvars))
            block[:, q1:q1 + nF] = np.kron(U, y[None, :])
            in_rows.append(block)
            in_rhs.append(theta)

    c = np.zeros(nvars)
    c[:q1] = 1.0
    free = np.zeros(nvars, dtype=bool)
    free[q1:q1 + nF] = True
    return lp.LpProblem(c=c, A_eq=np.vstack(eq_rows), b_eq=np.concatenate(eq_rhs),
                        A_in=np.vstack(in_rows), b_in=np.concatenate(in_rhs),
                        free=free, sense=lp.MINIMIZE)


def split_lp1_solution(x, q0, q1, s, m, r, qv=0):
    """Unpack an LP1 primal vector into (defect, gain, multiplier blocks)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    q0t = q0 + qv
    nF = m * r
    nG = q1 * q0t
    eps = x[:q1].copy()
    F = x[q1:q1 + nF].reshape(m, r).copy()
    blocks = [x[q1 + nF + i * nG:q1 + nF + (i + 1) * nG].reshape(q1, q0t).copy()
              for i in range(s)]
    return eps, F, blocks


def build_lp2(multiplier_blocks, bound_now, bound_next, gamma=None,
              nonneg=False, floor_values=None) -> lp.LpProblem:
    """Second-stage LP: maximise the offset sum of the traversed set.

    Constraints: each multiplier block maps the new offsets below the
    next-set offsets (minus the fixed disturbance contribution when
    ``gamma`` is present), and the offsets stay below the tube section.
    ``nonneg`` pins the offsets at or above zero; ``floor_values`` adds
    per-row lower bounds (one vector per disturbance-image vertex).
    """
    bound_now = np.asarray(bound_now, dtype=float).reshape(-1)
    bound_next = np.asarray(bound_next, dtype=float).reshape(-1)
    q0 = bound_now.size
    in_rows = [np.eye(q0)]
    in_rhs = [bound_now]
    for G in multiplier_blocks:
        G = np.asarray(G, dtype=float)
        if gamma is not None and gamma.size:
            rhs = bound_next - G[:, q0:] @ gamma
            in_rows.append(G[:, :q0])
        else:
            if G.shape[1] != q0:
                raise ValueError("multiplier block has %d columns, expected %d"
                                 % (G.shape[1], q0))
            rhs = bound_next
            in_rows.append(G)
        in_rhs.append(rhs)
    if floor_values is not None:
        for v in floor_values:
            v = np.asarray(v, dtype=float).reshape(-1)
            if v.size != q0:
                raise ValueError("floor vector length mismatch")
            in_rows.append(-np.eye(q0))
            in_rhs.append(-v)
    free = np.zeros(q0, dtype=bool) if nonneg else np.ones(q0, dtype=bool)
    return lp.LpProblem(c=np.ones(q0), A_in=np.vstack(in_rows),
                        b_in=np.concatenate(in_rhs), free=free,
                        sense=lp.MAXIMIZE)


def _disturbance_sets(problem):
    """PolyhedralSet view of the per-step disturbance bounds (p >= 1)."""
    return [PolyhedralSet(W, gamma) for W, gamma in problem.disturbance]


def synthesize(problem: SynthesisProblem, containment_tol=1e-7,
               eps_zero_tol=EPS_ZERO_TOL, solver=None) -> SynthesisResult:
    """Run the backward recursion and certify every accepted step.

    Raises SynthesisError with the failing step when either stage LP
    has no solution.  The first stage can only fail under control
    constraints.  The second cannot fail for a nominal problem with
    nonnegative offsets, but may under a disturbance (see
    SynthesisProblem) or with the safeguards disabled; with
    ``nonneg_bounds`` off a traversed set can also come out empty, in
    which case the certification pass surfaces EmptySetError.
    """
    model = problem.model
    K = problem.horizon
    Q = [problem.tube[k].A for k in range(K + 1)]
    phi = [problem.tube[k].b for k in range(K + 1)]

    disturbed = problem.disturbance is not None and model.p > 0
    v_sets = _disturbance_sets(problem) if disturbed else None
    v_vertices = None
    if disturbed and problem.disturbance_floor:
        v_vertices = [vertices(v) for v in v_sets]
        # input requirement: the disturbance image fits in the next tube
        # section at every step
        for k in range(K):
            H_next = problem.tube[k + 1]
            for v in v_vertices[k]:
                img = model.D @ v
                if np.any(H_next.A @ img > H_next.b + containment_tol):
                    raise ValueError(
                        "disturbance image leaves the tube section at step %d" % (k + 1))

    section_vertices = None
    if problem.control_constraints is not None:
        try:
            section_vertices = [vertices(problem.tube[k]) for k in range(K)]
        except Exception as exc:
            raise SynthesisError(-1, "vertices",
                                 "tube section enumeration failed: %s" % exc)

    bounds = [None] * (K + 1)
    bounds[K] = phi[K].copy()
    gains = [None] * K
    residuals = [None] * K
    provenance = [None] * K

    for k in range(K - 1, -1, -1):
        dist_k = problem.disturbance[k] if disturbed else None
        ctrl_k = None
        if problem.control_constraints is not None:
            U, theta = problem.control_constraints[k]
            ctrl_k = (U, theta, section_vertices[k])
        lp1 = build_lp1(model, Q[k], phi[k], Q[k + 1], bounds[k + 1],
                        disturbance=dist_k, control_rows=ctrl_k)
        sol1 = lp.solve(lp1, solver)
        if sol1.status != lp.OPTIMAL:
            raise SynthesisError(k, "stage 1", "LP is %s" % sol1.status)
        qv = dist_k[0].shape[0] if dist_k is not None else 0
        eps, F, blocks = split_lp1_solution(
            sol1.x, Q[k].shape[0], Q[k + 1].shape[0], model.s, model.m, model.r, qv)
        gains[k] = F
        residuals[k] = eps
        if np.max(np.abs(eps), initial=0.0) <= eps_zero_tol:
            bounds[k] = phi[k].copy()
            provenance[k] = TUBE_EXACT
        else:
            gamma = dist_k[1] if dist_k is not None else None
            floors = None
            if problem.disturbance_floor and k <= K - 2:
                floors = [Q[k] @ model.D @ v for v in v_vertices[k]]
            lp2 = build_lp2(blocks, phi[k], bounds[k + 1], gamma=gamma,
                            nonneg=problem.nonneg_bounds, floor_values=floors)
            sol2 = lp.solve(lp2, solver)
            if sol2.status != lp.OPTIMAL:
                raise SynthesisError(k, "stage 2", "LP is %s" % sol2.status)
            bounds[k] = sol2.x.copy()
            provenance[k] = SHRUNK

    sets = [PolyhedralSet(Q[k], bounds[k]) for k in range(K + 1)]
    step_reports = []
    tube_reports = []
    for k in range(K):
        if disturbed:
            rpt = check_containment_disturbance(
                model, gains[k], sets[k], v_sets[k], sets[k + 1], tol=containment_tol)
        else:
            rpt = check_containment(model, gains[k], sets[k], sets[k + 1],
                                    tol=containment_tol)
        step_reports.append(rpt)
        tube_reports.append(rpt if provenance[k] == TUBE_EXACT else None)

    return SynthesisResult(gains=gains, sets=sets, residuals=residuals,
                           provenance=provenance, step_reports=step_reports,
                           tube_step_reports=tube_reports)
