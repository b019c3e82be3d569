"""Command-line front end.

Every subcommand writes CSV (header first, LF line endings) to standard
output or to ``--out``. Exit status is 0 on success, 2 for invalid
arguments and 1 for numerical-range or output errors.
"""

import argparse
import csv
import io
import os
import sys
from typing import Iterable, Optional, Sequence

import numpy as np

from . import channels, entropyq, heatfield, physconst, transfer, verify

PRECISION_ENV = "QENTROPY_PRECISION"
DEFAULT_PRECISION = 9


def format_number(x, precision: int = DEFAULT_PRECISION) -> str:
    """Round to ``precision`` digits after the leading one, then print the
    shortest representation that round-trips, with a bare exponent."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if not isinstance(x, (float, np.floating)):
        return str(x)
    x = float(x)
    if not np.isfinite(x):
        return repr(x)
    s = repr(float(f"{x:.{precision}e}"))
    if "e" in s:
        mant, exp = s.split("e")
        s = f"{mant}e{int(exp)}"
    return s


def emit_csv(header: Sequence[str], rows: Iterable[Sequence], destination=None,
             precision: int = DEFAULT_PRECISION) -> None:
    """Write ``rows`` under ``header`` to a path, a file object, or stdout."""
    rows = list(rows)
    if not rows:
        raise ValueError("refusing to emit an empty table")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v, precision) for v in row])
    text = buf.getvalue()
    if destination is None:
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def _parse_modes(text: str):
    """'1:0.5,3:-0.1' -> ([1, 3], [0.5, -0.1])"""
    n, amp = [], []
    for item in text.split(","):
        idx, _, val = item.partition(":")
        try:
            n.append(int(idx))
            amp.append(float(val))
        except ValueError:
            raise ValueError(f"bad mode entry {item!r}, expected N:AMPLITUDE") from None
    return n, amp


# ---------------------------------------------------------------------------
# subcommands; each returns (header, rows)
# ---------------------------------------------------------------------------

LABELED = ("name", "value", "unit")


def cmd_constants(args):
    return LABELED, physconst.constants_table()


def cmd_staircase(args):
    w, G = channels.conductance_staircase(args.w_min, args.w_max, args.steps, args.lambda_f,
                                          spin_degeneracy=1 if args.single_spin else 2)
    return ("w_m", "G_S"), zip(w.tolist(), G.tolist())


def _diffusivity(args):
    if args.diffusivity is not None:
        return args.diffusivity
    return heatfield.MaterialParams(args.conductivity, args.density, args.specific_heat).diffusivity


def cmd_solve_heat(args):
    D = _diffusivity(args)
    n, amp = _parse_modes(args.modes)
    field = heatfield.TemperatureField(args.length, args.t0, n, amp)
    t_end = args.t_end if args.t_end is not None else 1.0 / (D * field.k.min() ** 2)
    physconst.require(args.nt >= 2 and args.nx >= 1, "need --nt >= 2 and --nx >= 1")
    times = np.linspace(0.0, t_end, args.nt)
    if args.potential:
        phi = heatfield.potential_for_temperature(field, D)
        if args.growing:
            gn, gb = _parse_modes(args.growing)
            b = np.zeros(len(phi.n))
            for i, amp_b in zip(gn, gb):
                hits = np.flatnonzero(phi.n == i)
                physconst.require(hits.size == 1, f"growing mode {i} not among --modes")
                b[hits[0]] = amp_b
            phi = phi.with_growing(b)
        rows = []
        for t in times.tolist():
            p = heatfield.evolve_potential(phi, D, t)
            rows.extend((t, k, a, b) for k, a, b in zip(p.k.tolist(), p.a.tolist(), p.b.tolist()))
        return ("t_s", "k_per_m", "a", "b"), rows
    x = np.linspace(0.0, args.length, args.nx, endpoint=False)
    rows = []
    for t in times.tolist():
        T = heatfield.evolve_fourier(field, D, t).evaluate(x)
        rows.extend((t, xi, Ti) for xi, Ti in zip(x.tolist(), T.tolist()))
    return ("t_s", "x_m", "T_K"), rows


def cmd_action_check(args):
    rng = np.random.default_rng(args.seed)
    D, L = args.diffusivity, args.length
    m = args.n_modes
    physconst.require(m >= 1, "need --n-modes >= 1")
    physconst.require(args.points >= 3, "need --points >= 3")
    physconst.require(args.eps_max > 0, "--eps-max must be positive")
    n = np.arange(1, m + 1)
    phi = heatfield.SpectralPotentialField(L, 1.0, n, rng.normal(size=m))
    k_max = phi.k.max()
    times = heatfield.time_grid(D, k_max, args.span / (D * k_max ** 2), args.step_factor)
    traj = heatfield.sample_trajectory(phi, D, times)
    eta = heatfield.sine_perturbation(traj, rng.normal(size=(4, m)))
    eps = np.linspace(-args.eps_max, args.eps_max, args.points)
    return ("epsilon", "action"), heatfield.perturbation_action_scan(traj, eta, eps, D)


def cmd_pendry(args):
    T = args.temp
    physconst.require(T >= 0, "--temp must be non-negative")
    rows = [
        ("pendry_max_heat_rate", entropyq.pendry_max_heat_rate(T), "W"),
        ("pendry_max_entropy_rate", entropyq.pendry_max_entropy_rate(T), "W/K"),
        ("thermal_conductance_quantum", physconst.thermal_conductance_quantum(T), "W/K"),
    ]
    if T > 0:
        rows.append(("entropy_rate_to_conductance_ratio", rows[1][1] / rows[2][1], "1"))
    return LABELED, rows


def cmd_packet(args):
    packet = entropyq.QuantumPacket(args.nu)
    return LABELED, [
        ("energy", packet.energy, "J"),
        ("entropy_current", entropyq.entropy_current_from_packet(packet), "W/K"),
        ("entropy_production", entropyq.packet_entropy_production(packet, args.temp), "W/K"),
    ]


def cmd_transfer(args):
    ledger = transfer.single_packet_transfer(transfer.Subdomain("1", args.t1), transfer.Subdomain("2", args.t2),
                                             entropyq.QuantumPacket(args.nu))
    rows = [(name, value, "W/K") for name, value in ledger.rows()]
    rows.append(("second_law_satisfied", int(transfer.second_law_check(ledger)), "1"))
    return LABELED, rows


def cmd_spin(args):
    spin = transfer.SpinSystem(args.gamma, args.b0, args.temp)
    r = transfer.spin_relaxation_report(spin)
    return LABELED, [
        ("larmor_frequency", r.nu, "Hz"),
        ("angular_larmor_frequency", transfer.angular_larmor_frequency(spin), "rad/s"),
        ("zeeman_splitting", transfer.zeeman_splitting(spin), "J"),
        ("entropy_current", r.I_S, "W/K"),
        ("entropy_current_from_field", r.I_S_from_field, "W/K"),
        ("entropy_production", r.Sigma, "W/K"),
        ("entropy_production_from_field", r.Sigma_from_field, "W/K"),
    ]


def build_parser() -> argparse.ArgumentParser:
    env = os.environ.get(PRECISION_ENV)
    try:
        default_precision = int(env) if env else DEFAULT_PRECISION
    except ValueError:
        default_precision = DEFAULT_PRECISION

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write CSV here instead of standard output")
    common.add_argument("--precision", type=int, default=default_precision,
                        help=f"digits after the leading digit (default {default_precision}, "
                             f"env {PRECISION_ENV})")

    parser = argparse.ArgumentParser(prog="qentropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("constants", parents=[common], help="fundamental constants and conductance quanta")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("staircase", parents=[common], help="conductance vs wire width")
    p.add_argument("--w-min", type=float, default=1e-9, help="smallest width, m (default 1e-9)")
    p.add_argument("--w-max", type=float, default=400e-9, help="largest width, m (default 4e-7)")
    p.add_argument("--steps", type=int, default=1000, help="number of widths (default 1000)")
    p.add_argument("--lambda-f", type=float, default=40e-9, help="Fermi wavelength, m (default 4e-8)")
    p.add_argument("--single-spin", action="store_true", help="use e^2/h per channel instead of 2e^2/h")
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("solve-heat", parents=[common], help="evolve a periodic temperature field")
    p.add_argument("--modes", default="1:0.1", help="cosine modes as N:AMPLITUDE[,...], amplitudes in K")
    p.add_argument("--length", type=float, default=1e-6, help="period of the domain, m (default 1e-6)")
    p.add_argument("--t0", type=float, default=1.0, help="reference temperature, K (default 1)")
    p.add_argument("--diffusivity", type=float, help="thermal diffusivity, m^2/s (overrides material)")
    p.add_argument("--conductivity", type=float, default=150.0, help="thermal conductivity, W/(m K)")
    p.add_argument("--density", type=float, default=2330.0, help="mass density, kg/m^3")
    p.add_argument("--specific-heat", type=float, default=700.0, help="specific heat, J/(kg K)")
    p.add_argument("--t-end", type=float, help="final time, s (default 1/(D k_1^2))")
    p.add_argument("--nt", type=int, default=11, help="number of output times")
    p.add_argument("--nx", type=int, default=32, help="number of output positions")
    p.add_argument("--potential", action="store_true", help="emit potential branch amplitudes instead")
    p.add_argument("--growing", help="growing-branch amplitudes N:B[,...] for --potential, K s")
    p.set_defaults(func=cmd_solve_heat)

    p = sub.add_parser("action-check", parents=[common], help="action of perturbed solutions vs epsilon")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--n-modes", type=int, default=4, help="number of potential modes")
    p.add_argument("--diffusivity", type=float, default=1.0, help="thermal diffusivity, m^2/s")
    p.add_argument("--length", type=float, default=2 * np.pi, help="domain period, m")
    p.add_argument("--span", type=float, default=2.0, help="time window in units of 1/(D k_max^2)")
    p.add_argument("--step-factor", type=float, default=heatfield.DEFAULT_STEP_FACTOR,
                   help="D k_max^2 dt (dimensionless)")
    p.add_argument("--eps-max", type=float, default=1.0, help="scan covers [-eps_max, eps_max]")
    p.add_argument("--points", type=int, default=11, help="number of epsilon values")
    p.set_defaults(func=cmd_action_check)

    p = sub.add_parser("pendry", parents=[common], help="single-channel heat and entropy bounds")
    p.add_argument("--temp", type=float, required=True, help="temperature, K")
    p.set_defaults(func=cmd_pendry)

    p = sub.add_parser("packet", parents=[common], help="entropy current and production of one quantum")
    p.add_argument("--nu", type=float, required=True, help="frequency, Hz")
    p.add_argument("--temp", type=float, required=True, help="temperature of the absorbing medium, K")
    p.set_defaults(func=cmd_packet)

    p = sub.add_parser("transfer", parents=[common], help="entropy ledger for one packet from 1 to 2")
    p.add_argument("--t1", type=float, required=True, help="emitter temperature, K")
    p.add_argument("--t2", type=float, required=True, help="absorber temperature, K")
    p.add_argument("--nu", type=float, required=True, help="packet frequency, Hz")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("spin", parents=[common], help="spin-lattice relaxation entropy")
    p.add_argument("--gamma", type=float, required=True, help="gyromagnetic ratio, rad/(s T)")
    p.add_argument("--b0", type=float, required=True, help="static field, T")
    p.add_argument("--temp", type=float, required=True, help="lattice temperature, K")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("verify", help="run every acceptance check, print PASS/FAIL")
    p.set_defaults(func=None)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "verify":
        ok = True
        for check in verify.CHECKS:
            result = verify.run_check(check)
            print(result.line(), flush=True)
            ok &= result.passed
        return 0 if ok else 1

    try:
        header, rows = args.func(args)
        rows = list(rows)
    except heatfield.NumericalRangeError as exc:
        print(f"qentropy {args.command}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"qentropy {args.command}: {exc}", file=sys.stderr)
        return 2
    try:
        emit_csv(header, rows, args.out, args.precision)
    except OSError as exc:
        print(f"qentropy {args.command}: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
