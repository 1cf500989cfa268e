"""Free motion, Euler-Lagrange residuals, and numerical integration.

The exact free-motion solution is

    x(t) = (P/M) t + (ell/2) r(t) + x(0),    r = N sin(phi) + E cos(phi),
    k(t) = P/M + rdot / sqrt(-rdot.rdot),

with E the epsilon-contraction of (N, W, P) normalized by M^3 ell / 2 and
phi an arbitrary phase whose derivative stays inside (0, 2/ell).  Since
N cos(phi) - E sin(phi) is unit spacelike, sqrt(-rdot.rdot) = |phidot| and
k reduces to P/M + sign(phidot) (N cos(phi) - E sin(phi)), which needs only
second-order phase data.

Euler-Lagrange residuals are evaluated in the lab-time chart (worldline
parameter = x^0) by exact forward-mode differentiation; integration solves
H qddot = Z per step with a QR solve and condition monitoring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import jets
from .degeneracy import DOF5, DOF6, POLE_MARGIN, ChartState, chart_lagrangian, chart_vectors
from .fform import FForm
from .minkowski import DomainError, dot, epsilon_contract, four
from .noether import FUNDAMENTAL_WW_FACTOR, momenta_from_vectors

__all__ = [
    "SolutionParams",
    "FreeMotionTrajectory",
    "IntegratedTrajectory",
    "SingularHessianError",
    "ELReport",
    "free_motion",
    "el_residuals",
    "integrate",
    "angular_speed",
    "speed_to_Q",
    "conservation_drift",
    "casimir_drift",
    "indeterminacy_demo",
    "export_trajectory",
    "rest_frame_params",
]

PARAM_TOL = 1e-12
SPEED_FLOOR = 1e-12  # numerical floor of the open bound 0 < |phidot|


class SingularHessianError(RuntimeError):
    """Raised when the velocity Hessian degenerates during integration."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class SolutionParams:
    """Constant vectors and phase function of the exact free-motion solution.

    ``phase`` must be a twice-differentiable scalar callable accepting jets.
    """

    P: np.ndarray
    W: np.ndarray
    N: np.ndarray
    phase: object
    x0: np.ndarray = field(default_factory=lambda: np.zeros(4))
    M: float = 1.0
    ell: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "P", np.asarray(self.P, dtype=float))
        object.__setattr__(self, "W", np.asarray(self.W, dtype=float))
        object.__setattr__(self, "N", np.asarray(self.N, dtype=float))
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))

    def residuals(self) -> dict:
        M, ell = self.M, self.ell
        s_P = M**2
        s_W = 0.25 * M**4 * ell**2
        return {
            "PP": (dot(self.P, self.P) - M**2) / s_P,
            "WW": (dot(self.W, self.W) - FUNDAMENTAL_WW_FACTOR * M**4 * ell**2) / s_W,
            "WP": dot(self.W, self.P) / (M * np.sqrt(s_W)),
            "NN": dot(self.N, self.N) + 1.0,
            "NW": dot(self.N, self.W) / np.sqrt(s_W),
            "NP": dot(self.N, self.P) / M,
        }

    def validate(self, tol: float = PARAM_TOL) -> "SolutionParams":
        bad = {k: v for k, v in self.residuals().items() if abs(v) > tol}
        if bad:
            raise DomainError(f"solution parameters violate constraints: {bad}")
        return self

    def axis(self) -> np.ndarray:
        """Second rotation axis E, orthonormal mate of N in the spin plane."""
        return epsilon_contract(self.N, self.W, self.P) / (0.5 * self.M**3 * self.ell)

    def phase_jet(self, t: float) -> jets.Jet:
        (tj,) = jets.variables(float(t))
        ph = self.phase(tj)
        if not isinstance(ph, jets.Jet):
            ph = jets.constant(float(ph), 1)
        return ph

    def check_speed(self, t: float) -> float:
        """|phidot| at t, enforcing the admissibility band (0, 2/ell)."""
        pd = self.phase_jet(t).g[0]
        if not SPEED_FLOOR * (2.0 / self.ell) < abs(pd) < 2.0 / self.ell:
            raise DomainError(
                f"phase speed {pd} at t = {t} outside (0, {2.0 / self.ell})"
            )
        return pd


class Trajectory:
    """Map t -> (x, k) with exact first and second derivative queries."""

    def jets(self, t: float):
        raise NotImplementedError

    def x(self, t: float) -> np.ndarray:
        return np.array([jets.value(c) for c in self.jets(t)[0]])

    def k(self, t: float) -> np.ndarray:
        return np.array([jets.value(c) for c in self.jets(t)[1]])

    def xdot(self, t: float) -> np.ndarray:
        return np.array([c.g[0] for c in self.jets(t)[0]])

    def kdot(self, t: float) -> np.ndarray:
        return np.array([c.g[0] for c in self.jets(t)[1]])


@dataclass(frozen=True)
class FreeMotionTrajectory(Trajectory):
    params: SolutionParams

    def jets(self, t: float):
        p = self.params
        sgn = np.sign(p.check_speed(t))
        ph = p.phase_jet(t)
        s, c = jets.sin(ph), jets.cos(ph)
        (tj,) = jets.variables(float(t))
        E = p.axis()
        x = np.empty(4, dtype=object)
        k = np.empty(4, dtype=object)
        for mu in range(4):
            x[mu] = (p.P[mu] / p.M) * tj + 0.5 * p.ell * (p.N[mu] * s + E[mu] * c) \
                + p.x0[mu]
            k[mu] = p.P[mu] / p.M + sgn * (p.N[mu] * c - E[mu] * s)
        return x, k


def free_motion(params: SolutionParams) -> FreeMotionTrajectory:
    """Exact solution of the fundamental system for the given constants."""
    return FreeMotionTrajectory(params.validate())


def rest_frame_params(phase, M: float = 1.0, ell: float = 1.0,
                      x0=(0.0, 0.0, 0.0, 0.0)) -> SolutionParams:
    """Canonical center-of-momentum parameters: spin along z, N along x."""
    return SolutionParams(
        P=four(M, 0.0, 0.0, 0.0),
        W=four(0.0, 0.0, 0.0, 0.5 * M**2 * ell),
        N=four(0.0, 1.0, 0.0, 0.0),
        phase=phase,
        x0=np.asarray(x0, dtype=float),
        M=M,
        ell=ell,
    )


# -- Euler-Lagrange residuals in the lab-time chart -------------------------


@dataclass(frozen=True)
class ELReport:
    residuals: np.ndarray
    scale: float
    dof: tuple

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    @property
    def max_relative(self) -> float:
        return self.max_abs / self.scale


def _lab_chart_jets(x, k, dof):
    """Chart coordinates q(T) as jets in lab time T = x^0.

    Input components are second-order jets in the trajectory parameter; the
    chain rule converts their derivatives to lab-time derivatives.
    """
    Td, Tdd = x[0].g[0], x[0].h[0, 0]
    if Td <= 0.0:
        raise DomainError(f"lab time not increasing: dx0/dt = {Td}")
    n3 = [k[i + 1] / k[0] for i in range(3)]
    theta = jets.acos(n3[2])
    if min(abs(jets.value(theta)), np.pi - abs(jets.value(theta))) < POLE_MARGIN:
        raise DomainError(f"theta = {jets.value(theta)} too close to a chart pole")
    phi = jets.atan2(n3[1], n3[0])
    coords = [x[1], x[2], x[3], theta, phi]
    if len(dof) == 6:
        coords.append(k[0])
    q, qd, qdd = [], [], []
    for c in coords:
        f, g, h = jets.value(c), c.g[0], c.h[0, 0]
        q.append(f)
        qd.append(g / Td)
        qdd.append((h * Td - g * Tdd) / Td**3)
    return np.array(q), np.array(qd), np.array(qdd)


def el_residuals(F: FForm, traj: Trajectory, t: float, dof=DOF5) -> ELReport:
    """d/dT (dL/dqdot) - dL/dq per chart coordinate, by exact differentiation."""
    x, k = traj.jets(t)
    q, qd, qdd = _lab_chart_jets(x, k, dof)
    n = len(dof)
    vs = jets.variables(*q, *qd)
    L = chart_lagrangian(F, list(vs[:n]), list(vs[n:]), dof)
    res = np.zeros(n)
    scale = 0.0
    for i in range(n):
        acc = np.dot(L.h[n + i, n:], qdd) + np.dot(L.h[n + i, :n], qd)
        terms = np.abs(np.concatenate([L.h[n + i, n:] * qdd,
                                       L.h[n + i, :n] * qd, [L.g[i]]]))
        scale = max(scale, float(np.max(terms)))
        res[i] = acc - L.g[i]
    return ELReport(residuals=res, scale=max(scale, 1e-300), dof=tuple(dof))


# -- numerical integration of nondegenerate members -------------------------


def _hessian_and_force(F: FForm, q, qd, dof):
    """Velocity Hessian H and force vector Z with H qddot = Z."""
    n = len(dof)
    vs = jets.variables(*q, *qd)
    L = chart_lagrangian(F, list(vs[:n]), list(vs[n:]), dof)
    H = L.h[n:, n:]
    Z = L.g[:n] - L.h[n:, :n] @ np.asarray(qd, dtype=float)
    return H, Z


def _qr_solve(H, Z, cond_tol, state_dump):
    """Solve H qddot = Z by QR with condition monitoring.

    Coordinates that are entirely inert (zero Hessian row/column and zero
    force, e.g. the null-direction angles of the point particle) are frozen
    at qddot = 0 instead of tripping the singularity guard.
    """
    scale = max(float(np.max(np.abs(H))), 1e-300)
    inert_tol = 1e-14 * scale
    active = [i for i in range(len(Z))
              if np.max(np.abs(H[i])) > inert_tol or abs(Z[i]) > inert_tol]
    qdd = np.zeros(len(Z))
    if not active:
        return qdd
    Ha = H[np.ix_(active, active)]
    Za = Z[active]
    Qm, R = np.linalg.qr(Ha)
    diag = np.abs(np.diag(R))
    if diag.min() <= cond_tol * max(diag.max(), 1e-300):
        raise SingularHessianError(
            f"velocity Hessian singular (R diagonal ratio "
            f"{diag.min() / max(diag.max(), 1e-300):.3e})",
            state=state_dump,
        )
    from scipy.linalg import solve_triangular

    qdd[active] = solve_triangular(R, Qm.T @ Za)
    return qdd


@dataclass(frozen=True)
class IntegratedTrajectory(Trajectory):
    """Lab-time solution of H qddot = Z; t is lab time x^0."""

    F: FForm
    dof: tuple
    sol: object  # scipy OdeSolution (dense output)
    t_span: tuple
    cond_tol: float = 1e-12

    def chart(self, t: float):
        y = self.sol(float(t))
        n = len(self.dof)
        return y[:n], y[n:]

    def accel(self, t: float) -> np.ndarray:
        q, qd = self.chart(t)
        H, Z = _hessian_and_force(self.F, q, qd, self.dof)
        return _qr_solve(H, Z, self.cond_tol, {"t": t, "q": list(q), "qd": list(qd)})

    def jets(self, t: float):
        q, qd = self.chart(t)
        qdd = self.accel(t)
        qj = [jets.Jet(q[i], np.array([qd[i]]), np.array([[qdd[i]]]))
              for i in range(len(q))]
        tj = jets.Jet(float(t), np.array([1.0]), np.zeros((1, 1)))
        theta, phi = qj[3], qj[4]
        K = qj[5] if len(self.dof) == 6 else jets.constant(1.0, 1)
        st, ct = jets.sin(theta), jets.cos(theta)
        sp, cp = jets.sin(phi), jets.cos(phi)
        x = np.empty(4, dtype=object)
        k = np.empty(4, dtype=object)
        x[0] = tj
        x[1:] = qj[:3]
        k[0] = K
        k[1] = K * st * cp
        k[2] = K * st * sp
        k[3] = K * ct
        return x, k

    def momenta(self, t: float):
        x, k = self.jets(t)
        xv = np.array([jets.value(c) for c in x])
        kv = np.array([jets.value(c) for c in k])
        xd = np.array([c.g[0] for c in x])
        kd = np.array([c.g[0] for c in k])
        return momenta_from_vectors(self.F, xd, kv, kd, x=xv)


def integrate(F: FForm, initial: ChartState, t_span, dof=DOF5,
              rtol: float = 1e-10, atol: float = 1e-12,
              cond_tol: float = 1e-12) -> IntegratedTrajectory:
    """Adaptive Runge-Kutta 5(4) solution in the lab-time chart."""
    initial.check_pole()
    q0, qd0 = initial.coords(dof)
    n = len(dof)
    # fail fast on a degenerate system before spending integrator work;
    # coordinates absent from the Lagrangian (e.g. the angles of the point
    # particle) are pure gauge and are held fixed from the start
    H, Z = _hessian_and_force(F, q0, qd0, dof)
    scale = max(float(np.max(np.abs(H))), 1e-300)
    inert = [i for i in range(n)
             if np.max(np.abs(H[i])) <= 1e-14 * scale and abs(Z[i]) <= 1e-14 * scale]
    qd0 = qd0.copy()
    qd0[inert] = 0.0
    H, Z = _hessian_and_force(F, q0, qd0, dof)
    _qr_solve(H, Z, cond_tol, {"t": t_span[0], "q": list(q0), "qd": list(qd0)})

    def rhs(t, y):
        q, qd = y[:n], y[n:]
        H, Z = _hessian_and_force(F, q, qd, dof)
        qdd = _qr_solve(H, Z, cond_tol, {"t": t, "q": list(q), "qd": list(qd)})
        return np.concatenate([qd, qdd])

    sol = solve_ivp(rhs, t_span, np.concatenate([q0, qd0]), method="RK45",
                    rtol=rtol, atol=atol, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    return IntegratedTrajectory(F=F, dof=tuple(dof), sol=sol.sol,
                                t_span=tuple(t_span), cond_tol=cond_tol)


# -- conserved charges along trajectories ------------------------------------


def conservation_drift(p: SolutionParams, traj: Trajectory, times, F: FForm) -> dict:
    """Max relative deviation of recomputed Noether P, W from the inputs."""
    scale_P = max(np.max(np.abs(p.P)), 1e-300)
    scale_W = max(np.max(np.abs(p.W)), 1e-300)
    dP = dW = 0.0
    for t in times:
        x, k = traj.jets(t)
        xv = np.array([jets.value(c) for c in x])
        kv = np.array([jets.value(c) for c in k])
        xd = np.array([c.g[0] for c in x])
        kd = np.array([c.g[0] for c in k])
        ms = momenta_from_vectors(F, xd, kv, kd, x=xv)
        dP = max(dP, float(np.max(np.abs(ms.P - p.P))) / scale_P)
        dW = max(dW, float(np.max(np.abs(ms.W - p.W))) / scale_W)
    return {"P_drift": dP, "W_drift": dW, "points": len(list(times))}


def casimir_drift(traj: IntegratedTrajectory, times) -> dict:
    """PP and WW along an integrated trajectory, with max relative drift."""
    pps, wws = [], []
    for t in times:
        c = traj.momenta(t).casimirs()
        pps.append(c.PP)
        wws.append(c.WW)
    pps, wws = np.array(pps), np.array(wws)

    def rel_drift(v):
        return float(np.max(np.abs(v - v[0])) / max(abs(v[0]), 1e-300))

    return {
        "PP": pps,
        "WW": wws,
        "PP_drift": rel_drift(pps),
        "WW_drift": rel_drift(wws),
    }


# -- angular speed of the null direction -------------------------------------


def angular_speed(Q: float, ell: float = 1.0) -> float:
    """|dphi/dt| of the circular solution: (2/ell) sqrt(Q) / (sqrt(Q) + 2)."""
    if Q <= 0.0:
        raise DomainError(f"Q = {Q} must be positive")
    s = np.sqrt(Q)
    return (2.0 / ell) * s / (s + 2.0)


def speed_to_Q(phidot: float, ell: float = 1.0) -> float:
    """Inverse of angular_speed: the Q at which the null direction turns at phidot."""
    w = abs(phidot)
    if not 0.0 < w < 2.0 / ell:
        raise DomainError(f"phase speed {phidot} outside (0, {2.0 / ell})")
    s = 2.0 * w * ell / (2.0 - w * ell)
    return s**2


# -- one initial state, many solutions ---------------------------------------


def _initial_chart(traj: Trajectory, t0: float, dof=DOF5):
    x, k = traj.jets(t0)
    return _lab_chart_jets(x, k, dof)[:2]


def indeterminacy_demo(phases, base: SolutionParams, times, F: FForm,
                       dof=DOF5, match_tol: float = 1e-12) -> dict:
    """Several admissible phases sharing (phi(0), phidot(0)): same initial
    lab-time state, residual-clean trajectories, divergent subsequent motion.
    """
    times = np.asarray(list(times), dtype=float)
    ref = phases[0]
    ref_j = None
    entries = []
    trajs = []
    for phase in phases:
        p = SolutionParams(P=base.P, W=base.W, N=base.N, phase=phase,
                           x0=base.x0, M=base.M, ell=base.ell)
        (tj,) = jets.variables(float(times[0]))
        ph = phase(tj)
        if ref_j is None:
            ref_j = (jets.value(ph), ph.g[0])
        else:
            if abs(jets.value(ph) - ref_j[0]) > match_tol or \
               abs(ph.g[0] - ref_j[1]) > match_tol:
                raise DomainError("phase functions do not share initial data")
        for t in times:
            p.check_speed(t)
        traj = free_motion(p)
        trajs.append(traj)
        max_rel = max(el_residuals(F, traj, t, dof).max_relative for t in times)
        entries.append({"max_el_residual": max_rel})
    q0, qd0 = _initial_chart(trajs[0], times[0], dof)
    for traj in trajs[1:]:
        q, qd = _initial_chart(traj, times[0], dof)
        state_gap = max(np.max(np.abs(q - q0)), np.max(np.abs(qd - qd0)))
        if state_gap > 1e-10:
            raise DomainError(f"initial chart states differ by {state_gap}")
    divergence = 0.0
    for traj in trajs[1:]:
        for t in times:
            gap = np.max(np.abs(traj.x(t) - trajs[0].x(t)))
            divergence = max(divergence, float(gap))
    return {
        "phases": len(phases),
        "entries": entries,
        "max_el_residual": max(e["max_el_residual"] for e in entries),
        "divergence": divergence,
        "window": (float(times[0]), float(times[-1])),
    }


# -- trajectory export --------------------------------------------------------


def export_trajectory(path, F: FForm, traj: Trajectory, times, dof=DOF5) -> None:
    """Delimited text: t, x0..x3, k0..k3, EL residual norm, PP, WW per row."""
    cols = ["t", "x0", "x1", "x2", "x3", "k0", "k1", "k2", "k3",
            "el_residual_norm", "PP", "WW"]
    lines = [",".join(cols)]
    for t in times:
        x, k = traj.jets(t)
        xv = [jets.value(c) for c in x]
        kv = [jets.value(c) for c in k]
        xd = np.array([c.g[0] for c in x])
        kd = np.array([c.g[0] for c in k])
        rep = el_residuals(F, traj, t, dof)
        ms = momenta_from_vectors(F, xd, np.array(kv), kd, x=np.array(xv))
        c = ms.casimirs()
        row = [float(t), *xv, *kv, float(np.linalg.norm(rep.residuals)), c.PP, c.WW]
        lines.append(",".join(f"{v:.17g}" for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
