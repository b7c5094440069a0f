"""Closed-loop simulation, membership auditing, and the coupled-tanks plant.

The linear simulator draws a realization of the inclusion at every
step according to a policy (a fixed vertex, a random vertex, or a
random point of the matrix hull) and applies the stored feedback
sequence exactly: y = C x, u = F(k) y, x+ = A x + B u (+ D v).  All
randomness flows from explicit seeds, so runs are reproducible.

The tanks plant is the usual pair of coupled water tanks: levels x1,
x2, inflow into tank 1 and outflow from tank 2, gravity-driven flow
between them.  Helpers linearize it about a level pair, discretize
exactly under a zero-order hold, and integrate the nonlinear equations
with RK4 under the sampled feedback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .polytope import PolyhedralSet, contains_point, support_max, vertices
from .reach import PolytopicModel


class SimulationError(Exception):
    """The simulated state left the model's validity domain."""


@dataclass
class FixedVertex:
    """Always realize vertex ``index`` of the inclusion."""
    index: int


@dataclass
class RandomVertex:
    """Pick an independent uniformly random vertex at every step."""
    seed: int = 0


@dataclass
class RandomConvex:
    """Pick independent random hull weights at every step."""
    seed: int = 0


@dataclass
class Trajectory:
    states: np.ndarray                    # (K+1, n)
    controls: np.ndarray                  # (K, m)
    outputs: np.ndarray                   # (K+1, r)
    realized: list                        # per step: vertex index or weights
    disturbances: Optional[np.ndarray]    # (K, p) or None
    overflow: bool = False

    @property
    def horizon(self):
        return self.states.shape[0] - 1


def _weights(policy, rng, s):
    if isinstance(policy, FixedVertex):
        if not 0 <= policy.index < s:
            raise ValueError("vertex index %d out of range" % policy.index)
        return policy.index
    if isinstance(policy, RandomVertex):
        return int(rng.integers(s))
    if isinstance(policy, RandomConvex):
        return rng.dirichlet(np.ones(s))
    raise TypeError("unknown realization policy %r" % (policy,))


def simulate_closed_loop(model: PolytopicModel, gains: Sequence[np.ndarray], x0,
                         policy, disturbance_sampler: Optional[Callable] = None
                         ) -> Trajectory:
    """Run the exact closed-loop recursion for len(gains) steps.

    ``disturbance_sampler(k, rng)`` must return a disturbance vector
    when the model carries a D map; it shares the policy's generator so
    one seed reproduces the whole run.
    """
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.size != model.n:
        raise ValueError("x0 has dimension %d, model has %d" % (x0.size, model.n))
    K = len(gains)
    seed = getattr(policy, "seed", 0)
    rng = np.random.default_rng(seed)

    states = np.zeros((K + 1, model.n))
    controls = np.zeros((K, model.m))
    outputs = np.zeros((K + 1, model.r))
    disturbances = np.zeros((K, model.p)) if disturbance_sampler else None
    realized = []

    x = x0.copy()
    states[0] = x
    outputs[0] = model.C @ x
    for k in range(K):
        w = _weights(policy, rng, model.s)
        if isinstance(w, (int, np.integer)):
            A, B = model.vertices[w]
        else:
            A = sum(wi * Ai for wi, (Ai, _) in zip(w, model.vertices))
            B = sum(wi * Bi for wi, (_, Bi) in zip(w, model.vertices))
        realized.append(w)
        F = np.asarray(gains[k], dtype=float).reshape(model.m, model.r)
        y = model.C @ x
        u = F @ y
        x = A @ x + B @ u
        if disturbance_sampler is not None:
            if model.D is None:
                raise ValueError("disturbance sampler given but model has no D")
            v = np.asarray(disturbance_sampler(k, rng), dtype=float).reshape(-1)
            disturbances[k] = v
            x = x + model.D @ v
        controls[k] = u
        states[k + 1] = x
        outputs[k + 1] = model.C @ x
    return Trajectory(states=states, controls=controls, outputs=outputs,
                      realized=realized, disturbances=disturbances)


@dataclass
class MembershipReport:
    ok: bool
    first_violation: Optional[tuple]      # (k, row, amount) or None
    worst: float                          # max over steps of max row residual


def verify_membership(traj: Trajectory, sets: Sequence[PolyhedralSet],
                      tol=1e-7) -> MembershipReport:
    """Check states[k] against sets[k] for every k; report the first miss."""
    states = traj.states if isinstance(traj, Trajectory) else np.asarray(traj)
    if len(sets) != states.shape[0]:
        raise ValueError("have %d states but %d sets" % (states.shape[0], len(sets)))
    worst = -np.inf
    first = None
    for k, (x, S) in enumerate(zip(states, sets)):
        resid = S.A @ x - S.b
        worst = max(worst, float(resid.max()))
        if first is None and resid.max() > tol:
            first = (k, int(np.argmax(resid)), float(resid.max()))
    return MembershipReport(ok=first is None, first_violation=first, worst=worst)


def hull_sampler(P: PolyhedralSet):
    """Sampler over P drawing random convex combinations of its vertices."""
    V = np.array(vertices(P))

    def sample(k, rng):
        w = rng.dirichlet(np.ones(V.shape[0]))
        return w @ V

    return sample


def sample_states(P: PolyhedralSet, count, rng, max_tries=200000):
    """Rejection-sample ``count`` points of P from its bounding box.

    Acceptance allows 1e-12 of slack so degenerate sets (an offset
    shrunk to zero) still yield their boundary points despite the LP
    rounding in the bounding box.
    """
    n = P.dim
    lo = np.zeros(n)
    hi = np.zeros(n)
    e = np.zeros(n)
    for i in range(n):
        e[i] = 1.0
        hi[i] = support_max(P, e)
        e[i] = -1.0
        lo[i] = -support_max(P, e)
        e[i] = 0.0
    out = []
    tries = 0
    while len(out) < count:
        x = rng.uniform(lo, hi)
        if contains_point(P, x, tol=1e-12):
            out.append(x)
        tries += 1
        if tries > max_tries:
            raise RuntimeError("rejection sampling failed after %d tries" % tries)
    return np.array(out)


# -- coupled tanks -------------------------------------------------------

GRAVITY = 10.0  # m/s^2
TANK_HEIGHT = 3.0  # m


def tanks_linearize(R1, R2, level1, level2, gravity=GRAVITY):
    """Continuous-time (A, B) of the tanks' error dynamics about a level pair.

    Tank areas R1, R2 (m^2); operating levels level1 > level2 (m).  The
    input matrix of the shifted controls is the identity.
    """
    if level1 <= level2:
        raise ValueError("need level1 > level2 for a valid operating point")
    L1 = np.sqrt(2.0 * gravity) / R1
    L2 = np.sqrt(2.0 * gravity) / R2
    factor = 0.5 / np.sqrt(level1 - level2)
    A = factor * np.array([[-L1, L1], [L2, -L2]])
    return A, np.eye(2)


def _expm_series(M, tol=1e-14, max_terms=60):
    """Scaled-and-squared truncated Taylor series of expm(M)."""
    norm = np.max(np.sum(np.abs(M), axis=1), initial=0.0)
    squarings = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    Ms = M / (2.0 ** squarings)
    out = np.eye(M.shape[0])
    term = np.eye(M.shape[0])
    for k in range(1, max_terms + 1):
        term = term @ Ms / k
        out = out + term
        if np.max(np.abs(term)) <= tol * max(1.0, np.max(np.abs(out))):
            break
    else:
        raise RuntimeError("matrix exponential series did not converge "
                           "within %d terms" % max_terms)
    for _ in range(squarings):
        out = out @ out
    return out


def discretize_zoh(A, B, Ts):
    """Exact zero-order-hold discretization of xdot = A x + B u.

    Uses the block trick exp([[A, B], [0, 0]] Ts) whose top row holds
    (A_d, B_d); the exponential is a truncated scaled series with
    residual far below the requested sampling accuracy.
    """
    if Ts <= 0:
        raise ValueError("sampling time must be positive")
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n = A.shape[0]
    m = B.shape[1]
    M = np.zeros((n + m, n + m))
    M[:n, :n] = A
    M[:n, n:] = B
    E = _expm_series(M * Ts)
    return E[:n, :n], E[:n, n:]


def tanks_nonlinear_simulate(R1, R2, x0, gains, setpoint, Ts=1.0, T_end=None,
                             step=0.01, gravity=GRAVITY) -> Trajectory:
    """Integrate the nonlinear tanks under the sampled error feedback.

    ``x0`` and ``setpoint`` are physical levels (m).  The feedback acts
    on the tank-2 error only: the shifted control is F(k) e2(k), held
    over each sampling interval.  Physical flows are recovered from the
    shift and clipped so the pump never runs backwards (inflow >= 0,
    outflow <= 0).  Levels above the tank height set the overflow flag;
    a level inversion (x1 < x2) aborts, because the model's square root
    leaves its domain.

    Returns the trajectory in error coordinates, sampled every Ts.
    """
    x0 = np.asarray(x0, dtype=float).reshape(2)
    setpoint = np.asarray(setpoint, dtype=float).reshape(2)
    if setpoint[0] <= setpoint[1]:
        raise ValueError("setpoint must have level1 > level2")
    n_steps = len(gains) if T_end is None else int(round(T_end / Ts))
    if n_steps > len(gains):
        raise ValueError("horizon needs %d gains, have %d" % (n_steps, len(gains)))
    L1 = np.sqrt(2.0 * gravity) / R1
    L2 = np.sqrt(2.0 * gravity) / R2
    shift = np.sqrt(setpoint[0] - setpoint[1])

    def deriv(x, u_phys):
        d = x[0] - x[1]
        if d < 0.0:
            raise SimulationError("level inversion at x = %s" % x)
        root = np.sqrt(d)
        return np.array([-L1 * root + u_phys[0], L2 * root + u_phys[1]])

    states = np.zeros((n_steps + 1, 2))
    controls = np.zeros((n_steps, 2))
    outputs = np.zeros((n_steps + 1, 1))
    overflow = False

    x = x0.copy()
    states[0] = x - setpoint
    outputs[0] = states[0][1]
    substeps = max(1, int(round(Ts / step)))
    h = Ts / substeps
    for k in range(n_steps):
        e2 = x[1] - setpoint[1]
        F = np.asarray(gains[k], dtype=float).reshape(2, 1)
        u_shift = (F @ np.array([e2])).reshape(2)
        controls[k] = u_shift
        # physical controls: undo the equilibrium shift, then clip so
        # inflow stays nonnegative and outflow nonpositive
        u_phys = np.array([max(u_shift[0] + L1 * shift, 0.0),
                           min(u_shift[1] - L2 * shift, 0.0)])
        for _ in range(substeps):
            k1 = deriv(x, u_phys)
            k2 = deriv(x + 0.5 * h * k1, u_phys)
            k3 = deriv(x + 0.5 * h * k2, u_phys)
            k4 = deriv(x + h * k3, u_phys)
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.any(x > TANK_HEIGHT):
            overflow = True
        states[k + 1] = x - setpoint
        outputs[k + 1] = states[k + 1][1]
    return Trajectory(states=states, controls=controls, outputs=outputs,
                      realized=[None] * n_steps, disturbances=None,
                      overflow=overflow)
