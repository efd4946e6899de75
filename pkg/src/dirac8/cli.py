"""Command-line interface: dispersion tables, verification runs, chain
simulation, plane-wave catalogs, and packet evolution.

Output conventions: every subcommand echoes the resolved unit system and mass
ratio on comment lines starting with '#'; floats are written in shortest
round-trip form; CSV uses '\\n' line endings.  Exit codes: 0 success, 1
verification/runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import chain as chain_mod
from . import dispersion, evolution, planewaves, verify
from .params import ChainParams, QuantumParams


def _fmt(x) -> str:
    return repr(float(x))


def _quantum_params(args) -> QuantumParams:
    if args.units == "natural":
        return QuantumParams(epsilon=args.epsilon)
    return QuantumParams(m_e=args.m_e, epsilon=args.epsilon, c=args.c, hbar=args.hbar)


def _header(args, epsilon) -> list[str]:
    if args.units == "natural":
        units = "natural (hbar = c = m_e = 1)"
    else:
        units = f"custom (m_e={_fmt(args.m_e)}, c={_fmt(args.c)}, hbar={_fmt(args.hbar)})"
    return [f"# units: {units}", f"# epsilon: {_fmt(epsilon)}"]


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _add_unit_flags(p) -> None:
    p.add_argument("--units", choices=("natural", "custom"), default="natural")
    p.add_argument("--m-e", type=float, default=1.0, help="rest mass (custom units)")
    p.add_argument("--c", type=float, default=1.0, help="speed of light (custom units)")
    p.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant (custom units)")


def cmd_dispersion(args) -> int:
    if args.pmax <= 0 or args.n < 2:
        print("dispersion: need --pmax > 0 and --n >= 2", file=sys.stderr)
        return 2
    eps_list = args.epsilon if args.epsilon else [0.5]
    base = QuantumParams(m_e=args.m_e, c=args.c, hbar=args.hbar) \
        if args.units == "custom" else QuantumParams()
    grid = np.linspace(-args.pmax, args.pmax, args.n)
    lines = []
    for eps in eps_list:
        lines.extend(_header(args, eps))
        lines.append(",".join(dispersion.FIGURE2_COLUMNS))
        for row in dispersion.figure2_table(eps, grid, base):
            lines.append(",".join(_fmt(x) for x in row))
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    rep = verify.full_report(epsilon=args.epsilon, corrupt=args.corrupt,
                             fast=args.fast)
    lines = _header(args, args.epsilon) + rep.lines()
    print("\n".join(lines))
    if args.output:
        _write(args.output, json.dumps(
            {"epsilon": args.epsilon, "passed": rep.passed,
             "notes": rep.notes, "checks": rep.to_rows()}, indent=2) + "\n")
    return 0 if rep.passed else 1


def cmd_chain(args) -> int:
    try:
        params = ChainParams(m=args.m, M=args.M, K=args.K, I=args.I, J=args.J, a=args.a)
        state = chain_mod.init_mode(args.n, args.mode, args.amplitude, args.branch, params)
    except ValueError as exc:
        print(f"chain: {exc}", file=sys.stderr)
        return 2
    omega_max = chain_mod.max_frequency(params)
    dt = args.dt if args.dt is not None else 0.01 / omega_max
    if dt * omega_max >= 2.0:
        print("chain: time step violates the stability bound dt * omega_max < 2",
              file=sys.stderr)
        return 1

    k = 2 * math.pi * args.mode / (args.n * params.a)
    mp = chain_mod.discrete_dispersion(k, params)
    omega = mp.omega_acoustic if args.branch == "acoustic" else mp.omega_optical
    sim_time = args.periods * 2 * math.pi / omega if omega > 0 else 100 * dt
    n_steps = max(int(sim_time / dt), 1)
    record_every = max(n_steps // 400, 1)
    times, us, Us, dus, dUs, _ = chain_mod.simulate(state, dt, n_steps, params,
                                                    record_every=record_every)
    if omega > 0:
        measured = chain_mod.measure_mode_frequency(times, us[:, 0])
    else:
        measured = 0.0  # uniform translation mode does not oscillate

    scales = chain_mod.characteristic_scales(params)
    lines = _header(args, scales.epsilon)
    lines.append("t,site,u,U,du_dt,dU_dt")
    for i, t in enumerate(times):
        for s in range(args.n):
            lines.append(",".join([_fmt(t), str(s), _fmt(us[i, s]), _fmt(Us[i, s]),
                                   _fmt(dus[i, s]), _fmt(dUs[i, s])]))
    _write(args.output, "\n".join(lines) + "\n")

    slope = chain_mod.convergence_exponent(params, (0.2, 0.1, 0.05, 0.025)) \
        if min(params.I, params.J) > 0 else None
    summary = {
        "mode_index": args.mode, "branch": args.branch, "wavenumber": k,
        "omega_dispersion": omega, "omega_measured": measured,
        "relative_error": abs(measured - omega) / omega if omega > 0 else 0.0,
        "continuum_convergence_exponent": slope,
        "epsilon": scales.epsilon,
    }
    if args.summary:
        _write(args.summary, json.dumps(summary, indent=2) + "\n")
    else:
        print(json.dumps(summary, indent=2))
    return 0


def cmd_solutions(args) -> int:
    qp = _quantum_params(args)
    sols = planewaves.catalog_eight(args.pz, qp)
    rng = np.random.default_rng(0)
    pts = [(t, z) for t, z in rng.uniform(-10, 10, size=(20, 2))]
    entries = []
    for s in sols:
        entries.append({
            "branch": s.branch.label,
            "spin": s.spin,
            "p_z": s.p_z,
            "E": s.E,
            "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes],
            "residual": planewaves.residual(s, pts, qp),
            "form": s.form,
        })
    det = abs(np.linalg.det(planewaves.stacked_amplitude_matrix(sols)))
    print("\n".join(_header(args, args.epsilon)))
    _write(args.output, json.dumps(
        {"p_z": args.pz, "epsilon": args.epsilon,
         "independence_determinant": det, "solutions": entries}, indent=2) + "\n")
    return 0


def cmd_evolve(args) -> int:
    qp = _quantum_params(args)
    try:
        branch = dispersion.parse_branch(args.branch)
        spec = evolution.PacketSpec(k0=args.k0, sigma=args.sigma, branch=branch,
                                    center=args.center)
        state0 = evolution.init_packet(spec, args.n_grid, args.L, qp)
    except ValueError as exc:
        print(f"evolve: {exc}", file=sys.stderr)
        return 1

    dt = args.t_total / args.samples
    snapshots = [(0.0, state0)]
    state = state0
    centroids = [(0.0, evolution.packet_centroid(state0))]
    for i in range(args.samples):
        state = evolution.evolve(state, dt, 1, qp, method=args.method)
        centroids.append((state.t, evolution.packet_centroid(state)))
        if i + 1 in (args.samples // 2, args.samples):
            snapshots.append((state.t, state))

    lines = _header(args, args.epsilon)
    lines.append("t,z,psi1_sq,psi3_sq,phi1_sq,phi3_sq")
    for t, snap in snapshots:
        inten = np.abs(snap.fields) ** 2
        for j, z in enumerate(snap.z):
            lines.append(",".join([_fmt(t), _fmt(z)] + [_fmt(inten[c, j]) for c in range(4)]))
    _write(args.output, "\n".join(lines) + "\n")

    pos = np.array([p for _, p in centroids])
    d = np.mod(np.diff(pos) + args.L / 2, args.L) - args.L / 2
    unwrapped = pos[0] + np.concatenate([[0.0], np.cumsum(d)])
    ts = np.array([t for t, _ in centroids])
    v_meas = float(np.polyfit(ts, unwrapped, 1)[0])
    v_ref = dispersion.group_velocity(branch, args.k0, qp) if args.k0 != 0 else 0.0
    summary = {
        "branch": branch.label, "k0": args.k0, "epsilon": args.epsilon,
        "measured_group_velocity": v_meas, "analytic_group_velocity": v_ref,
        "relative_error": abs(v_meas - v_ref) / abs(v_ref) if v_ref else None,
    }
    if args.summary:
        _write(args.summary, json.dumps(summary, indent=2) + "\n")
    else:
        print(json.dumps(summary, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac8",
        description="Coupled-branch relativistic wave toolkit: dispersion tables, "
                    "plane-wave catalogs, chain simulation, packet evolution, and "
                    "verification reports.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dispersion", help="branch-energy table on a momentum grid")
    p.add_argument("--epsilon", type=float, action="append", default=None,
                   help="mass ratio; repeat for several datasets (default 0.5)")
    p.add_argument("--pmax", type=float, default=3.0)
    p.add_argument("--n", type=int, default=121)
    p.add_argument("--output", "-o", default=None)
    _add_unit_flags(p)
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--fast", action="store_true",
                   help="skip the slower packet-velocity measurements")
    p.add_argument("--corrupt", default=None, help=argparse.SUPPRESS)
    p.add_argument("--output", "-o", default=None, help="also write a JSON report")
    _add_unit_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="simulate one normal mode of the ring")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--M", type=float, default=4.0)
    p.add_argument("--K", type=float, default=1.0)
    p.add_argument("--I", type=float, default=1.0)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--mode", type=int, default=2)
    p.add_argument("--n", type=int, default=128, help="number of ring sites")
    p.add_argument("--branch", choices=("acoustic", "optical"), default="optical")
    p.add_argument("--amplitude", type=float, default=1e-3)
    p.add_argument("--periods", type=float, default=8.0)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--output", "-o", default=None, help="trajectory CSV")
    p.add_argument("--summary", default=None, help="summary JSON path")
    p.add_argument("--units", choices=("natural",), default="natural",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("solutions", help="catalog of the eight plane-wave solutions")
    p.add_argument("--pz", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--output", "-o", default=None)
    _add_unit_flags(p)
    p.set_defaults(func=cmd_solutions)

    p = sub.add_parser("evolve", help="evolve a single-branch wave packet")
    p.add_argument("--branch", default="optical+",
                   choices=[b.label for b in dispersion.BRANCHES])
    p.add_argument("--k0", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--sigma", type=float, default=5.0)
    p.add_argument("--center", type=float, default=50.0)
    p.add_argument("--n-grid", type=int, default=1024)
    p.add_argument("--L", type=float, default=200.0)
    p.add_argument("--t-total", type=float, default=40.0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--method", choices=("spectral", "rk4"), default="spectral")
    p.add_argument("--output", "-o", default=None, help="snapshot CSV")
    p.add_argument("--summary", default=None, help="summary JSON path")
    _add_unit_flags(p)
    p.set_defaults(func=cmd_evolve)

    return parser


def main(argv=None) -> int:
    evolution.max_threads()  # validate DIRAC8_THREADS early
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
