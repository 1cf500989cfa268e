"""Velocity Hessians of the Lagrange density and the Casimir-Jacobian link.

Degrees of freedom are counted in the lab-time gauge (worldline parameter
= x^0), with the null direction in spherical angles.  The five-coordinate
chart (x1, x2, x3, theta, phi) gauge-fixes the null-vector amplitude to
k^0 = 1; the six-coordinate chart adds the amplitude K.  The central check is

    det H = K_factor * (F - P F_P) / (F_P (P^2 + Q) - P F) * d(PP, WW)/d(P, Q)

whose kinematical prefactor must come out independent of F.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jets
from .fform import FForm, PQPoint, lagrangian_from_vectors
from .minkowski import DomainError, four
from .noether import casimirs_closed_form

__all__ = [
    "DOF5",
    "DOF6",
    "ChartState",
    "HessianReport",
    "chart_vectors",
    "chart_lagrangian",
    "hessian",
    "jacobian_pq",
    "RelationEntry",
    "relation_check",
    "FqDetResult",
    "fq_det_formula",
    "random_chart_state",
]

DOF5 = ("x1", "x2", "x3", "theta", "phi")
DOF6 = ("x1", "x2", "x3", "theta", "phi", "K")

RANK_TOL = 1e-10
POLE_MARGIN = 1e-3


@dataclass(frozen=True)
class ChartState:
    """Lab-time gauge coordinates and velocities (x-position is cyclic)."""

    theta: float
    phi: float
    v: tuple = (0.0, 0.0, 0.0)
    thetadot: float = 0.0
    phidot: float = 0.0
    K: float = 1.0
    Kdot: float = 0.0
    x: tuple = (0.0, 0.0, 0.0)

    def coords(self, dof):
        q = [*self.x, self.theta, self.phi]
        qd = [*self.v, self.thetadot, self.phidot]
        if len(dof) == 6:
            q.append(self.K)
            qd.append(self.Kdot)
        return np.array(q, dtype=float), np.array(qd, dtype=float)

    def check_pole(self):
        if min(abs(self.theta), abs(np.pi - self.theta)) < POLE_MARGIN:
            raise DomainError(f"theta = {self.theta} too close to a chart pole")
        return self


def chart_vectors(q, qd, dof):
    """(xdot, k, kdot) from chart coordinates; generic over floats and jets."""
    theta, phi = q[3], q[4]
    K = q[5] if len(dof) == 6 else 1.0
    Kd = qd[5] if len(dof) == 6 else 0.0
    st, ct = jets.sin(theta), jets.cos(theta)
    sp, cp = jets.sin(phi), jets.cos(phi)
    n = [st * cp, st * sp, ct]
    n_th = [ct * cp, ct * sp, -st]
    n_ph = [-st * sp, st * cp, 0.0 * st]
    nd = [n_th[i] * qd[3] + n_ph[i] * qd[4] for i in range(3)]
    xdot = four(1.0 + 0.0 * qd[0], qd[0], qd[1], qd[2])
    k = four(K + 0.0 * theta, K * n[0], K * n[1], K * n[2])
    kdot = four(Kd + 0.0 * qd[3],
                Kd * n[0] + K * nd[0],
                Kd * n[1] + K * nd[1],
                Kd * n[2] + K * nd[2])
    return xdot, k, kdot


def chart_lagrangian(F: FForm, q, qd, dof):
    xdot, k, kdot = chart_vectors(q, qd, dof)
    return lagrangian_from_vectors(F, xdot, k, kdot)


@dataclass(frozen=True)
class HessianReport:
    matrix: np.ndarray
    singular_values: np.ndarray
    rank: int
    det: float
    det_threshold: float
    dof: tuple

    @property
    def is_singular(self) -> bool:
        return abs(self.det) <= self.det_threshold

    def as_dict(self) -> dict:
        return {
            "dof": len(self.dof),
            "rank": self.rank,
            "det": self.det,
            "det_threshold": self.det_threshold,
            "singular": self.is_singular,
            "singular_values": list(self.singular_values),
        }


def hessian(F: FForm, state: ChartState, dof=DOF5) -> HessianReport:
    """Exact second-derivative matrix of L with respect to the velocities."""
    state.check_pole()
    q, qd = state.coords(dof)
    n = len(dof)
    vs = jets.variables(*qd)
    qj = list(q)  # coordinates enter as plain values
    L = chart_lagrangian(F, qj, vs, dof)
    H = L.h
    sv = np.linalg.svd(H, compute_uv=False)
    rank = int(np.sum(sv > RANK_TOL * max(sv[0], 1e-300)))
    det = float(np.linalg.det(H))
    thr = RANK_TOL * float(np.prod(np.maximum(sv, 1.0)))
    return HessianReport(matrix=H, singular_values=sv, rank=rank, det=det,
                         det_threshold=thr, dof=tuple(dof))


def jacobian_pq(F: FForm, at: PQPoint) -> float:
    """det d(PP, WW)/d(P, Q), from the closed-form Casimirs by exact chain rule."""
    P, Q = at.P, at.Q
    v = F.eval(P, Q)
    Fv, FP, FQ, FPP, FPQ, FQQ = v
    A = Fv - P * FP
    A_P = -P * FPP
    A_Q = FQ - P * FPQ
    B = A - 4.0 * Q * FQ
    B_P = A_P - 4.0 * Q * FPQ
    B_Q = A_Q - 4.0 * FQ - 4.0 * Q * FQQ
    M2 = F.M**2
    PP_P = M2 * (A_P * B + A * B_P - Q * 2.0 * FP * FPP)
    PP_Q = M2 * (A_Q * B + A * B_Q - FP**2 - Q * 2.0 * FP * FPQ)
    C = FP**2 + 2.0 * FQ * A
    C_P = 2.0 * FP * FPP + 2.0 * (FPQ * A + FQ * A_P)
    C_Q = 2.0 * FP * FPQ + 2.0 * (FQQ * A + FQ * A_Q)
    M4L2 = F.M**4 * F.ell**2
    WW_P = -M4L2 * Q * 2.0 * C * C_P
    WW_Q = -M4L2 * (C**2 + Q * 2.0 * C * C_Q)
    return float(PP_P * WW_Q - PP_Q * WW_P)


@dataclass(frozen=True)
class RelationEntry:
    form: str
    admissible: bool
    reason: str = ""
    det_hessian: float = 0.0
    middle: float = 0.0
    jacobian: float = 0.0
    K: float = float("nan")


def relation_check(forms, state: ChartState, dof=DOF6, tol=1e-8) -> list:
    """Extract the kinematical factor K = det H / (middle * jacobian) per form.

    Forms for which the middle ratio or the Casimir Jacobian degenerates at
    the state's (P, Q) are flagged inadmissible instead of dividing by ~0.
    All admissible K values at one state must coincide (F-independence).
    """
    xdot, k, kdot = chart_vectors(*state.coords(dof), dof)
    out = []
    for F in forms:
        from .fform import pq_from_jet
        from .invariants import KinematicJet

        xx = float(xdot[0] ** 2 - xdot[1] ** 2 - xdot[2] ** 2 - xdot[3] ** 2)
        kx = float(xdot[0] * k[0] - xdot[1] * k[1] - xdot[2] * k[2] - xdot[3] * k[3])
        P = F.ell * float(kdot[0] * xdot[0] - kdot[1] * xdot[1]
                          - kdot[2] * xdot[2] - kdot[3] * xdot[3]) / (kx * np.sqrt(xx))
        Q = -(F.ell**2) * float(kdot[0] ** 2 - kdot[1] ** 2 - kdot[2] ** 2
                                - kdot[3] ** 2) / kx**2
        v = F.eval(P, Q)
        num = v.F - P * v.F_P
        den = v.F_P * (P**2 + Q) - P * v.F
        jac = jacobian_pq(F, PQPoint(P, Q))
        scale = max(abs(v.F), 1.0)
        H = hessian(F, state, dof)
        if abs(den) <= tol * scale or abs(num) <= tol * scale:
            out.append(RelationEntry(form=F.name, admissible=False,
                                     reason="middle ratio degenerate",
                                     det_hessian=H.det, jacobian=jac))
            continue
        if abs(jac) <= tol * max(abs(H.det), 1.0):
            out.append(RelationEntry(form=F.name, admissible=False,
                                     reason="Casimir Jacobian degenerate",
                                     det_hessian=H.det, middle=num / den, jacobian=jac))
            continue
        K = H.det / ((num / den) * jac)
        out.append(RelationEntry(form=F.name, admissible=True, det_hessian=H.det,
                                 middle=num / den, jacobian=jac, K=K))
    return out


@dataclass(frozen=True)
class FqDetResult:
    Q: float
    bracket: float          # B(Q) = 1 + 2Q (f'/f + f''/f')
    formula: float          # f^3 f'^2 B(Q)
    direct_det: float       # det of the 5-dof Hessian
    K: float                # direct / formula, when B != 0

    def as_dict(self) -> dict:
        return {"Q": self.Q, "bracket": self.bracket, "formula": self.formula,
                "direct_det": self.direct_det, "K": self.K}


def fq_det_formula(f, state: ChartState, ell: float = 1.0, M: float = 1.0,
                   bracket_tol=1e-10) -> FqDetResult:
    """Closed-form 5-dof determinant structure for F = f(Q).

    ``f`` is a generic callable with two derivatives (jet-compatible).
    """
    from .fform import builtin

    F = builtin("fq", f=f, M=M, ell=ell)
    xdot, k, kdot = chart_vectors(*state.coords(DOF5), DOF5)
    kx = float(xdot[0] * k[0] - xdot[1] * k[1] - xdot[2] * k[2] - xdot[3] * k[3])
    Q = -(ell**2) * float(kdot[0] ** 2 - kdot[1] ** 2 - kdot[2] ** 2
                          - kdot[3] ** 2) / kx**2
    (qj,) = jets.variables(Q)
    fj = f(qj)
    if not isinstance(fj, jets.Jet):
        raise DomainError("constant f(Q) has no Hessian-determinant formula")
    fv, fp, fpp = fj.f, fj.g[0], fj.h[0, 0]
    if fp == 0.0:
        raise DomainError(f"f'(Q) = 0 at Q = {Q}")
    bracket = 1.0 + 2.0 * Q * (fp / fv + fpp / fp)
    formula = fv**3 * fp**2 * bracket
    direct = hessian(F, state, DOF5).det
    K = direct / formula if abs(bracket) > bracket_tol else float("nan")
    return FqDetResult(Q=Q, bracket=bracket, formula=formula, direct_det=direct, K=K)


def random_chart_state(rng, speed=0.4) -> ChartState:
    """Generic state away from chart poles, with subluminal xdot."""
    v = rng.uniform(-speed, speed, 3) / np.sqrt(3.0)
    return ChartState(
        theta=rng.uniform(0.4, np.pi - 0.4),
        phi=rng.uniform(0.0, 2 * np.pi),
        v=tuple(v),
        thetadot=rng.uniform(-1.0, 1.0),
        phidot=rng.uniform(-1.0, 1.0),
        K=rng.uniform(0.5, 2.0),
        Kdot=rng.uniform(-0.5, 0.5),
        x=tuple(rng.uniform(-1.0, 1.0, 3)),
    ).check_pole()
