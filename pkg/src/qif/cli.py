"""Command-line interface.

Subcommands:
    simulate     run a .qif circuit file
    sweep        t/delta parameter sweep to CSV (oracle or grid backend)
    oracle-check compare closed forms against the grid on random parameters
    propagate    split-step impulsive-kick demo
    feasibility  SI-unit electron-scenario report
    bec          internal-state protocol run

Exit codes: 0 success, 2 circuit parse error, 3 runtime error.  The
environment variable QIF_GRID_N overrides the default grid size (4096).
"""

import argparse
import os
import sys

import numpy as np

from . import analytic, circuitfile, feasibility, interferometer as mzi
from . import spinor, splitstep, wavepacket as wp
from .errors import QifError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RUNTIME = 3

CSV_HEADER = "t,delta,alpha,p_c,mean_c,p_d,mean_d,residual"


def _grid(args) -> wp.GridSpec:
    n = getattr(args, "grid_n", None) or int(os.environ.get("QIF_GRID_N", wp.DEFAULT_N))
    return wp.default_grid(n)


def _fmt(x: float) -> str:
    return "nan" if x is None or np.isnan(x) else format(x, ".17g")


def cmd_simulate(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        program = circuitfile.parse(text)
    except circuitfile.ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = circuitfile.execute(program, _grid(args))
    except QifError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if result.report:
        print(result.report)
    return EXIT_OK


def _grid_backend_stats(t, delta, alpha, grid):
    gauss = wp.gaussian_init(wp.GaussianParams(), grid)
    out_c, out_d = mzi.run_mzi(gauss, t, delta, mzi.PhaseSetting(beta=alpha))
    residual = mzi.conservation_residual(out_c, out_d, t, delta, 0.0)
    mean = lambda o: np.nan if o.is_dark else o.mean_p
    return out_c.probability, mean(out_c), out_d.probability, mean(out_d), residual


def _sweep_rows(args, grid):
    ts = np.linspace(args.t[0], args.t[1], int(args.t[2]))
    ds = np.linspace(args.delta[0], args.delta[1], int(args.delta[2]))
    if len(ts) < 2 or len(ds) < 2:
        raise ValueError("sweep needs at least 2 steps per axis")
    for t in ts:
        for d in ds:
            if args.backend == "oracle":
                s = analytic.closed_form_stats(analytic.MziParams(t, d, args.alpha))
                p_c, m_c, p_d, m_d = s.p_c, s.mean_c, s.p_d, s.mean_d
                residual = abs(
                    (0.0 if m_c is None else p_c * m_c)
                    + (0.0 if m_d is None else p_d * m_d)
                    - (1.0 - t * t) * d
                )
                tol = 1e-12
            else:
                p_c, m_c, p_d, m_d, residual = _grid_backend_stats(t, d, args.alpha, grid)
                tol = 1e-8
            if abs(p_c + p_d - 1.0) > 1e-9:
                raise RuntimeError(f"unitarity violated at t={t}, delta={d}")
            if residual > tol:
                raise RuntimeError(f"conservation violated at t={t}, delta={d}")
            yield t, d, args.alpha, p_c, m_c, p_d, m_d, residual


def cmd_sweep(args) -> int:
    grid = _grid(args)
    min_mean = np.inf
    argmin = (np.nan, np.nan)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in _sweep_rows(args, grid):
                t, d, _, _, m_c, _, _, _ = row
                if m_c is not None and not np.isnan(m_c) and m_c < min_mean:
                    min_mean, argmin = m_c, (t, d)
                fh.write(",".join(_fmt(x) for x in row) + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (QifError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {args.out}")
    print(f"min mean_C = {_fmt(min_mean)} at t = {_fmt(argmin[0])}, "
          f"delta = {_fmt(argmin[1])}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if args.samples == 0:
        print("0 samples: nothing to check")
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    grid = _grid(args)
    gauss = wp.gaussian_init(wp.GaussianParams(), grid)
    worst = 0.0
    worst_at = None
    for _ in range(args.samples):
        t = rng.uniform(0.05, 0.95)
        d = rng.uniform(0.0, 2.0)
        alpha = rng.uniform(0.0, 2.0 * np.pi)
        s = analytic.closed_form_stats(analytic.MziParams(t, d, alpha))
        out_c, out_d = mzi.run_mzi(gauss, t, d, mzi.PhaseSetting(beta=alpha))
        devs = [abs(s.p_c - out_c.probability), abs(s.p_d - out_d.probability)]
        if s.mean_c is not None and not out_c.is_dark:
            devs.append(abs(s.mean_c - out_c.mean_p))
        if s.mean_d is not None and not out_d.is_dark:
            devs.append(abs(s.mean_d - out_d.mean_p))
        dev = max(devs)
        if dev > worst:
            worst, worst_at = dev, (t, d, alpha)
    print(f"samples = {args.samples}, seed = {args.seed}, grid n = {grid.n_points}")
    print(f"max |oracle - grid| = {worst:.3e} at t = {worst_at[0]:.6f}, "
          f"delta = {worst_at[1]:.6f}, alpha = {worst_at[2]:.6f}")
    return EXIT_OK


def cmd_propagate(args) -> int:
    grid = _grid(args)
    pulse = splitstep.ImpulsePulse(args.force, args.tau, args.substeps)
    config = splitstep.PropagationConfig(mass=args.mass)
    before = wp.to_position(wp.gaussian_init(wp.GaussianParams(), grid))
    try:
        after = splitstep.apply_impulse(before, pulse, config)
    except QifError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    fidelity = splitstep.kick_fidelity(before, after, pulse.delta)
    shift_measured = wp.mean_momentum(wp.to_momentum(after)) - wp.mean_momentum(
        wp.to_momentum(before)
    )
    print(f"F = {args.force}, tau = {args.tau}, substeps = {args.substeps}, "
          f"mass = {args.mass}")
    print(f"intended kick delta = F*tau = {pulse.delta:.12g}")
    print(f"measured mean shift = {shift_measured:.12g}")
    print(f"kick fidelity vs exact shift = {fidelity:.12g}")
    return EXIT_OK


def cmd_feasibility(args) -> int:
    scenario = feasibility.ElectronScenario(
        kinetic_energy_ev=args.energy_kev * 1e3,
        slit_width_m=args.slit_um * 1e-6,
        drift_distance_m=args.drift_m,
        plate_separation_m=args.plate_sep_mm * 1e-3,
        plate_length_m=args.plate_len_cm * 1e-2,
        voltage_v=args.voltage_mv * 1e-3,
    )
    try:
        report = feasibility.electron_report(scenario)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"electron speed           = {report.speed:.6g} m/s")
    print(f"electron momentum        = {report.momentum:.6g} kg m/s")
    print(f"time of flight           = {report.time_of_flight:.6g} s")
    print(f"beam width after drift   = {report.beam_width_at_drift * 1e6:.4g} um")
    print(f"momentum width W         = {report.momentum_width:.6g} kg m/s")
    print(f"capacitor kick delta     = {report.kick:.6g} kg m/s")
    print(f"kick-to-width ratio      = {report.ratio:.6g}")
    print(f"(context: grating interferometer path separation "
          f"{feasibility.PATH_SEPARATION_M * 1e6:.0f} um at "
          f"{feasibility.PATH_SEPARATION_DISTANCE_M:.2f} m)")
    return EXIT_OK


def cmd_bec(args) -> int:
    grid = _grid(args)
    try:
        outcome = spinor.run_protocol(args.t, args.delta_a, args.delta_b, grid)
    except QifError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    delta = args.delta_b - args.delta_a
    print(f"t = {args.t}, delta_a = {args.delta_a}, delta_b = {args.delta_b} "
          f"(effective delta = {delta:.12g})")
    if outcome.is_dark:
        print(f"select A: P = {outcome.probability:.12g}, <p> undefined (dark)")
    else:
        print(f"select A: P = {outcome.probability:.12g}, <p> = {outcome.mean_p:.12g}")
    if args.check_mzi:
        gauss = wp.gaussian_init(wp.GaussianParams(), grid)
        out_c, _ = mzi.run_mzi(gauss, args.t, delta)
        diff = np.max(np.abs(outcome.wavefunction.amplitudes * np.sqrt(outcome.probability)
                             - out_c.wavefunction.amplitudes * np.sqrt(out_c.probability)))
        print(f"max nodewise |protocol - interferometer port C| = {diff:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qif", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a .qif circuit file")
    p.add_argument("file")
    p.add_argument("--grid-n", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="t/delta sweep to CSV")
    p.add_argument("--t", nargs=3, type=float, required=True, metavar=("LO", "HI", "STEPS"))
    p.add_argument("--delta", nargs=3, type=float, required=True,
                   metavar=("LO", "HI", "STEPS"))
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--backend", choices=("oracle", "grid"), default="oracle")
    p.add_argument("--out", required=True)
    p.add_argument("--grid-n", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="closed forms vs grid on random parameters")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--grid-n", type=int, default=None)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("propagate", help="split-step impulsive-kick demo")
    p.add_argument("--force", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=0.2)
    p.add_argument("--substeps", type=int, default=64)
    p.add_argument("--mass", type=float, default=1e4)
    p.add_argument("--grid-n", type=int, default=None)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("feasibility", help="electron-scenario SI report")
    p.add_argument("--energy-kev", type=float, default=6.0)
    p.add_argument("--slit-um", type=float, default=1.5)
    p.add_argument("--drift-m", type=float, default=1.0)
    p.add_argument("--plate-sep-mm", type=float, default=1.0)
    p.add_argument("--plate-len-cm", type=float, default=1.0)
    p.add_argument("--voltage-mv", type=float, default=0.2)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("bec", help="internal-state protocol run")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delta-a", type=float, required=True)
    p.add_argument("--delta-b", type=float, required=True)
    p.add_argument("--check-mzi", action="store_true",
                   help="also compare against the spatial-interferometer run")
    p.add_argument("--grid-n", type=int, default=None)
    p.set_defaults(func=cmd_bec)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
