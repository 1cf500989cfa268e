"""Command-line surface: verification suites, Casimir and Hessian analysis,
simulation, free motion, and the invariant-count reproduction.

Every subcommand emits a deterministic report document (see ``reports``) and
exits 0 iff every check in the invocation passes.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import jets
from .degeneracy import (
    DOF5,
    DOF6,
    ChartState,
    fq_det_formula,
    hessian,
    random_chart_state,
    relation_check,
)
from .dynamics import (
    SingularHessianError,
    angular_speed,
    casimir_drift,
    conservation_drift,
    el_residuals,
    export_trajectory,
    free_motion,
    indeterminacy_demo,
    integrate,
    rest_frame_params,
    speed_to_Q,
)
from .fform import BUILTIN_NAMES, FForm, ParseError, PQPoint, builtin, parse_f, parse_phase
from .invariants import (
    GaugeJet,
    capital_invariants,
    gauge_jet_transform,
    identity_checks,
    iota,
    random_kinematic_jet,
    reproduce_invariant_count,
)
from .minkowski import DomainError, dot, gram_det
from .noether import (
    FUNDAMENTAL_WW_FACTOR,
    casimirs_closed_form,
    fundamental_residuals,
    momenta,
)
from .reports import Report, RunConfig, all_pass, load_config, render_reports
from .spinor import spinor_from_angles, tetrad

SUITES = ("tetrad", "invariants", "casimir", "degeneracy", "dynamics",
          "count-invariants")

_ALIASES = {"rotator": "rotator_f", "point": "point_particle"}


def resolve_form(text: str, cfg: RunConfig) -> FForm:
    """A builtin name (with aliases) or an expression over P, Q, nu."""
    name = _ALIASES.get(text, text)
    if name in ("sqrtS", "fq"):
        raise DomainError(f"builtin {name!r} needs a callable; pass an expression")
    if name in BUILTIN_NAMES:
        return builtin(name, nu=cfg.nu, M=cfg.M, ell=cfg.ell)
    return parse_f(text, M=cfg.M, ell=cfg.ell, nu=cfg.nu)


# -- verification suites ------------------------------------------------------


def _tetrad_products(T):
    k, m, a, b = T.vectors()
    pairs = {
        "kk": (dot(k, k), 0.0), "mm": (dot(m, m), 0.0), "km": (dot(k, m), 2.0),
        "aa": (dot(a, a), -1.0), "bb": (dot(b, b), -1.0), "ab": (dot(a, b), 0.0),
        "ka": (dot(k, a), 0.0), "kb": (dot(k, b), 0.0),
        "ma": (dot(m, a), 0.0), "mb": (dot(m, b), 0.0),
    }
    scale = max(abs(dot(k, m)), 1.0)
    return max(abs(v - want) / scale for v, want in pairs.values())


def suite_tetrad(cfg: RunConfig, n: int = 200):
    rng = np.random.default_rng(cfg.seed)
    worst_rel, worst_gram = 0.0, 0.0
    for _ in range(n):
        kappa = spinor_from_angles(
            rng.uniform(0.05, np.pi - 0.05), rng.uniform(0, 2 * np.pi),
            rng.uniform(0.2, 5.0), rng.uniform(0, 4 * np.pi))
        T = tetrad(kappa)
        worst_rel = max(worst_rel, _tetrad_products(T))
        worst_gram = max(worst_gram, abs(gram_det(*T.vectors()) + 4.0))
    return [
        Report("tetrad-relations", worst_rel, cfg.tolerance("tetrad", 1e-12),
               cfg.seed, {"spinors": n}),
        Report("tetrad-gram-det", worst_gram, cfg.tolerance("gram", 1e-11),
               cfg.seed, {"spinors": n}),
    ]


def suite_invariants(cfg: RunConfig, n: int = 60):
    rng = np.random.default_rng(cfg.seed)
    worst_gauge, worst_ident = 0.0, 0.0
    for _ in range(n):
        J = random_kinematic_jet(rng)
        base = iota(J)
        G = GaugeJet(alpha=rng.uniform(-2, 2), beta=rng.uniform(-2, 2),
                     alphadot=rng.uniform(-1, 1), betadot=rng.uniform(-1, 1))
        shifted = iota(gauge_jet_transform(J, G))
        scale = np.maximum(np.abs(base), 1.0)
        worst_gauge = max(worst_gauge, float(np.max(np.abs(shifted - base) / scale)))
        worst_ident = max(worst_ident,
                          max(abs(v) for v in identity_checks(J).values()))
    return [
        Report("gauge-invariance", worst_gauge, cfg.tolerance("gauge", 1e-10),
               cfg.seed, {"jets": n}),
        Report("scalar-identities", worst_ident, cfg.tolerance("identities", 1e-10),
               cfg.seed, {"jets": n}),
    ]


def _fundamental_forms(cfg: RunConfig):
    forms = [builtin("rotator_f", M=cfg.M, ell=cfg.ell)]
    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        forms.append(builtin("starlike", signs=(s1, s2), M=cfg.M, ell=cfg.ell))
    for nu in (-1.0, -0.3, 0.0, 0.5, 2.0):
        forms.append(builtin("nu_family", nu=nu, M=cfg.M, ell=cfg.ell))
    return forms


def _domain_grid(F: FForm, n: int = 20):
    pts = []
    for P in np.linspace(-0.9, 0.9, n):
        for Q in np.linspace(0.05, 4.0, n):
            if F.in_domain(P, Q):
                pts.append(PQPoint(float(P), float(Q)))
    return pts


def suite_casimir(cfg: RunConfig, n: int = 25):
    rng = np.random.default_rng(cfg.seed)
    worst_fund = 0.0
    for F in _fundamental_forms(cfg):
        res = fundamental_residuals(F, _domain_grid(F, 12))
        worst_fund = max(worst_fund, res["max_PP_residual"], res["max_WW_residual"])
    forms = _fundamental_forms(cfg) + [builtin("point_particle"),
                                       builtin("fq", f=lambda q: q)]
    worst_cross, worst_wp = 0.0, 0.0
    for _ in range(n):
        J = random_kinematic_jet(rng)
        for F in forms:
            from .fform import pq_from_jet

            at = pq_from_jet(J, F.ell)
            if not F.in_domain(at.P, at.Q):
                continue
            ms = momenta(F, J)
            got = ms.casimirs()
            want = casimirs_closed_form(F, at)
            s1 = max(abs(want.PP), 1.0)
            s2 = max(abs(want.WW), 1.0)
            worst_cross = max(worst_cross, abs(got.PP - want.PP) / s1,
                              abs(got.WW - want.WW) / s2)
            worst_wp = max(worst_wp, abs(dot(ms.W, ms.P))
                           / max(abs(got.PP), 1.0))
    return [
        Report("fundamental-conditions", worst_fund,
               cfg.tolerance("fundamental", 1e-10), cfg.seed,
               {"forms": len(_fundamental_forms(cfg))}),
        Report("noether-crosscheck", worst_cross, cfg.tolerance("noether", 1e-9),
               cfg.seed, {"jets": n}),
        Report("wp-orthogonality", worst_wp, cfg.tolerance("wp", 1e-10),
               cfg.seed, {"jets": n}),
    ]


def suite_degeneracy(cfg: RunConfig, n_states: int = 4):
    rng = np.random.default_rng(cfg.seed)
    states = [random_chart_state(rng) for _ in range(n_states)]
    singular_forms = [builtin("rotator_f"), builtin("nu_family", nu=0.4),
                      builtin("starlike")]
    worst_singular = 0.0
    rank_gap = 0
    for st in states:
        for F in singular_forms:
            rep = hessian(F, st, DOF5 if F.name != singular_forms[2].name else DOF6)
            worst_singular = max(worst_singular, abs(rep.det) / rep.det_threshold)
        rank_gap = max(rank_gap,
                       abs(hessian(builtin("nu_family", nu=0.4), st, DOF5).rank - 4))
    nondeg = [parse_f("Q"), parse_f("Q^2"), parse_f("1+Q"), parse_f("sqrt(Q)*(2+Q)")]
    min_margin = np.inf
    for st in states:
        for F in nondeg:
            rep = hessian(F, st, DOF5)
            min_margin = min(min_margin, abs(rep.det) / rep.det_threshold)
    spread = 0.0
    forms = [parse_f(e) for e in ("1+Q+P^2", "Q+P*Q", "P+Q+P*Q", "Q+P^2",
                                  "sqrt(1+P^2+Q)")]
    for st in states:
        entries = [e for e in relation_check(forms, st, DOF6) if e.admissible]
        ks = np.array([e.K for e in entries])
        if len(ks) >= 2:
            spread = max(spread, float(np.max(np.abs(ks - ks[0]))
                                       / max(abs(ks[0]), 1e-300)))
    return [
        Report("degenerate-hessians", worst_singular, 1.0, cfg.seed,
               {"states": n_states, "forms": len(singular_forms)}),
        Report("nu-family-rank-4", float(rank_gap), 0.0, cfg.seed,
               {"states": n_states}),
        Report("nondegenerate-dets", 1.0 / max(min_margin, 1e-300), 1.0, cfg.seed,
               {"states": n_states, "forms": len(nondeg)}),
        Report("relation-consistency", spread, cfg.tolerance("relation", 1e-7),
               cfg.seed, {"states": n_states, "forms": len(forms)}),
    ]


def suite_dynamics(cfg: RunConfig):
    rot = builtin("rotator_f", M=cfg.M, ell=cfg.ell)
    phases = [
        lambda t: t,
        lambda t: t + 0.1 * (t - jets.sin(t)),
        lambda t: t + 0.2 * jets.sin(0.5 * t) * jets.sin(0.5 * t),
    ]
    base = rest_frame_params(phases[0], M=cfg.M, ell=cfg.ell)
    times = np.linspace(0.0, 20.0 * cfg.ell, 81)
    demo = indeterminacy_demo(phases, base, times, rot)
    drift = 0.0
    for phase in phases:
        p = rest_frame_params(phase, M=cfg.M, ell=cfg.ell)
        d = conservation_drift(p, free_motion(p), times[::8], rot)
        drift = max(drift, d["P_drift"], d["W_drift"])
    worst_speed = 0.0
    for w in (0.2, 0.5, 1.0, 1.5):
        worst_speed = max(worst_speed,
                          abs(angular_speed(speed_to_Q(w, cfg.ell), cfg.ell) - w))
    div_target = 0.05
    div_gap = max(0.0, div_target - demo["divergence"])
    return [
        Report("free-motion-el-residuals", demo["max_el_residual"],
               cfg.tolerance("el", 1e-8), cfg.seed, {"phases": len(phases)}),
        Report("free-motion-conservation", drift, cfg.tolerance("drift", 1e-9),
               cfg.seed, {"phases": len(phases)}),
        Report("indeterminism-divergence", div_gap, 0.0, cfg.seed,
               {"divergence": demo["divergence"], "target": div_target}),
        Report("angular-speed-identity", worst_speed,
               cfg.tolerance("speed", 1e-10), cfg.seed, {"speeds": 4}),
    ]


def suite_count(cfg: RunConfig):
    rep = reproduce_invariant_count(cfg.seed)
    expected = {"rank": 5, "nullity": 10, "zero_combos": 2, "functional_rank": 3,
                "total_independent": 6}
    gap = sum(abs(getattr(rep, k) - v) for k, v in expected.items())
    inputs = {k: getattr(rep, k) for k in expected}
    return [Report("count-invariants", float(gap), 0.0, cfg.seed, inputs)]


_SUITE_FUNCS = {
    "tetrad": suite_tetrad,
    "invariants": suite_invariants,
    "casimir": suite_casimir,
    "degeneracy": suite_degeneracy,
    "dynamics": suite_dynamics,
    "count-invariants": suite_count,
}


# -- subcommands ---------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig):
    if args.suite == "all":
        names = SUITES
    elif args.suite in _SUITE_FUNCS:
        names = (args.suite,)
    else:
        raise DomainError(f"unknown suite {args.suite!r}; choose from "
                          f"{SUITES + ('all',)}")
    reports = []
    for name in names:
        reports.extend(_SUITE_FUNCS[name](cfg))
    return reports


def cmd_casimir(args, cfg: RunConfig):
    F = resolve_form(args.f, cfg)
    v = F.eval(args.P, args.Q)
    c = casimirs_closed_form(F, PQPoint(args.P, args.Q))
    pp_target = cfg.M**2
    ww_target = FUNDAMENTAL_WW_FACTOR * cfg.M**4 * cfg.ell**2
    inputs = {
        "form": F.name, "P": args.P, "Q": args.Q,
        "F": v.F, "F_P": v.F_P, "F_Q": v.F_Q,
        "PP": c.PP, "WW": c.WW,
        "PP_residual": abs(c.PP / pp_target - 1.0),
        "WW_residual": abs(c.WW / ww_target - 1.0),
    }
    return [Report("casimir", 0.0, 0.0, cfg.seed, inputs)]


def cmd_fundamental_check(args, cfg: RunConfig):
    F = resolve_form(args.f, cfg)
    res = fundamental_residuals(F, _domain_grid(F, args.grid))
    worst = max(res["max_PP_residual"], res["max_WW_residual"])
    return [Report("fundamental-check", worst, cfg.tolerance("fundamental", 1e-10),
                   cfg.seed, {"form": F.name, "points": res["points"]})]


def cmd_hessian(args, cfg: RunConfig):
    F = resolve_form(args.f, cfg)
    rng = np.random.default_rng(cfg.seed)
    state = random_chart_state(rng)
    dof = DOF6 if args.dof == 6 else DOF5
    rep = hessian(F, state, dof)
    inputs = {"form": F.name, "dof": len(dof), "rank": rep.rank, "det": rep.det,
              "singular": rep.is_singular}
    return [Report("hessian", 0.0, 0.0, cfg.seed, inputs)]


def cmd_relation(args, cfg: RunConfig):
    exprs = args.forms or ["1+Q+P^2", "Q+P*Q", "P+Q+P*Q", "Q+P^2",
                           "sqrt(1+P^2+Q)", "(1+Q)*(1+P^2)"]
    forms = [resolve_form(e, cfg) for e in exprs]
    rng = np.random.default_rng(cfg.seed)
    spread = 0.0
    admissible = 0
    for _ in range(args.states):
        st = random_chart_state(rng)
        entries = [e for e in relation_check(forms, st, DOF6) if e.admissible]
        admissible = max(admissible, len(entries))
        ks = np.array([e.K for e in entries])
        if len(ks) >= 2:
            spread = max(spread, float(np.max(np.abs(ks - ks[0]))
                                       / max(abs(ks[0]), 1e-300)))
    return [Report("relation-consistency", spread, cfg.tolerance("relation", 1e-7),
                   cfg.seed, {"forms": len(forms), "states": args.states,
                              "admissible": admissible})]


def cmd_simulate(args, cfg: RunConfig):
    F = resolve_form(args.f, cfg)
    rng = np.random.default_rng(cfg.seed)
    state = ChartState(
        theta=rng.uniform(0.8, np.pi - 0.8), phi=rng.uniform(0, 2 * np.pi),
        v=tuple(rng.uniform(-0.1, 0.1, 3)),
        thetadot=rng.uniform(0.2, 0.5), phidot=rng.uniform(0.5, 0.9))
    period = 2.0 * np.pi / max(abs(state.phidot), 0.1)
    t_end = args.periods * period
    traj = integrate(F, state, (0.0, t_end))
    times = np.linspace(0.0, t_end, 50)
    d = casimir_drift(traj, times)
    worst = max(d["PP_drift"], d["WW_drift"])
    inputs = {"form": F.name, "periods": args.periods,
              "PP0": float(d["PP"][0]), "WW0": float(d["WW"][0]),
              "PP_drift": d["PP_drift"], "WW_drift": d["WW_drift"]}
    reports = [Report("conservation-drift", worst,
                      cfg.tolerance("conservation", 1e-6), cfg.seed, inputs)]
    if args.out:
        export_trajectory(args.out, F, traj, times)
    return reports


def cmd_freemotion(args, cfg: RunConfig):
    phase = parse_phase(args.phase)
    F = builtin("rotator_f", M=cfg.M, ell=cfg.ell)
    p = rest_frame_params(phase, M=cfg.M, ell=cfg.ell)
    traj = free_motion(p)
    times = np.linspace(0.0, args.tmax, args.samples)
    worst_el = max(el_residuals(F, traj, t).max_relative for t in times)
    d = conservation_drift(p, traj, times, F)
    if args.out:
        export_trajectory(args.out, F, traj, times)
    return [
        Report("freemotion-el-residuals", worst_el, cfg.tolerance("el", 1e-8),
               cfg.seed, {"phase": args.phase, "tmax": args.tmax}),
        Report("freemotion-conservation", max(d["P_drift"], d["W_drift"]),
               cfg.tolerance("drift", 1e-9), cfg.seed, {"phase": args.phase}),
    ]


def cmd_count(args, cfg: RunConfig):
    return suite_count(cfg)


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--M", type=float, default=None)
    common.add_argument("--ell", type=float, default=None)
    common.add_argument("--nu", type=float, default=None)
    common.add_argument("--report-out", default=None,
                        help="also write the report document to this path")

    parser = argparse.ArgumentParser(prog="rotorlab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--suite", default="all", help=f"{SUITES + ('all',)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("casimir", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--P", type=float, default=0.0)
    p.add_argument("--Q", type=float, default=1.0)
    p.set_defaults(func=cmd_casimir)

    p = sub.add_parser("fundamental-check", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--grid", type=int, default=20)
    p.set_defaults(func=cmd_fundamental_check)

    p = sub.add_parser("hessian", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--dof", type=int, choices=(5, 6), default=5)
    p.add_argument("--state", default="random")
    p.set_defaults(func=cmd_hessian)

    p = sub.add_parser("relation", parents=[common])
    p.add_argument("--forms", nargs="*", default=None)
    p.add_argument("--states", type=int, default=5)
    p.set_defaults(func=cmd_relation)

    p = sub.add_parser("simulate", parents=[common])
    p.add_argument("--f", default="Q")
    p.add_argument("--periods", type=float, default=10.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("freemotion", parents=[common])
    p.add_argument("--phase", default="t")
    p.add_argument("--tmax", type=float, default=20.0)
    p.add_argument("--samples", type=int, default=81)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_freemotion)

    p = sub.add_parser("count-invariants", parents=[common])
    p.set_defaults(func=cmd_count)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {k: getattr(args, k) for k in ("M", "ell", "nu", "seed")}
    try:
        cfg = load_config(args.config, overrides)
        reports = args.func(args, cfg)
    except (DomainError, ParseError, SingularHessianError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = render_reports(reports)
    sys.stdout.write(doc)
    if args.report_out:
        with open(args.report_out, "w") as fh:
            fh.write(doc)
    return 0 if all_pass(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
