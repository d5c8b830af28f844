"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 state not found, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import report
from .config import load_settings
from .errors import DomainError, StateNotFound
from .model import MAX_DIMENSION, hartree_to_ev
from .observables import mean_radius_mc
from .reference import lookup_energy

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dimension(text):
    value = int(text)
    if not 3 <= value <= MAX_DIMENSION:
        raise argparse.ArgumentTypeError(f"D must lie in [3, {MAX_DIMENSION}]")
    return value


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _d_range(text):
    lo, sep, hi = text.partition(":")
    try:
        values = list(range(int(lo), int(hi) + 1)) if sep else _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or a list, got {text!r}") from None
    if not values or any(not 3 <= d <= MAX_DIMENSION for d in values):
        raise argparse.ArgumentTypeError(f"dimensions must lie in [3, {MAX_DIMENSION}]")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value settings file")
    common.add_argument("--rmin", type=float, help="inner grid edge in Bohr")
    common.add_argument("--rmax", type=float, help="outer wall in Bohr")
    common.add_argument("--points", type=int, help="number of grid points")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")

    parser = _Parser(prog="dimhydrogen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="solve one state, print a CSV row")
    p.add_argument("--d", type=_dimension, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--charge-scale", type=float, default=1.0)
    p.add_argument("--compare", action="store_true", help="append the published energy")

    p = sub.add_parser("spectrum", parents=[common], help="energies over a (D, l, n) range")
    p.add_argument("--d", type=_d_range, required=True, help="e.g. 5:10 or 3,5,6")
    p.add_argument("--l", type=_int_list, default=[0])
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--output", default="-")

    p = sub.add_parser("observables", parents=[common], help="radius statistics for one state")
    p.add_argument("--d", type=_dimension, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("plotdata", parents=[common], help="write TSV data for one figure")
    p.add_argument("--figure", type=int, choices=range(1, 7), required=True)
    p.add_argument("--outdir", default=".")

    p = sub.add_parser("compare-paper", parents=[common], help="deviation report vs published tables")
    p.add_argument("--output", default="comparison", help="path prefix for .csv and .txt")
    return parser


def _settings(args):
    return load_settings(
        args.config, r_min=args.rmin, r_max=args.rmax, n_points=args.points, seed=args.seed,
        mc_samples=getattr(args, "samples", None),
    )


def _emit(table, output):
    if output == "-":
        report.write_csv(sys.stdout, table)
    else:
        report.write_csv(output, table)


def cmd_solve(args, settings):
    state = report.solve_state(args.d, args.l, args.n, settings, charge_scale=args.charge_scale)
    header = ["D", "l", "n", "E_hartree", "E_eV", "nodes", "defect", "r_min", "r_max", "n_points"]
    g = state.grid
    row = [args.d, args.l, args.n, state.energy, hartree_to_ev(state.energy), state.node_count,
           state.defect_residual, g.r_min, g.r_max, g.n_points]
    if args.compare:
        ref = lookup_energy(args.d, args.l, args.n)
        header += ["paper_E_eV", "paper_table"]
        row += [None, None] if ref is None else [ref.value, ref.table]
    report.write_csv(sys.stdout, [header, [report.fmt(v) for v in row]])


def cmd_spectrum(args, settings):
    rows = report.spectrum_rows(args.d, args.l, args.nmax, settings)
    header = ["D", "l", "n", "E_hartree", "E_eV", "nodes", "U_m_hartree", "E_over_Um"]
    _emit([header] + [[report.fmt(v) for v in r] for r in rows], args.output)


def cmd_observables(args, settings):
    state = report.solve_state(args.d, args.l, args.n, settings)
    stats = mean_radius_mc(state, settings.mc_samples, settings.seed)
    header = ["D", "l", "n", "r_mean_quad", "r_mean_mc", "mc_sigma", "r_most_probable",
              "n_samples", "seed"]
    row = [args.d, args.l, args.n, stats.mean_quadrature, stats.mean_mc, stats.mc_sigma,
           stats.most_probable, stats.n_samples, stats.seed]
    report.write_csv(sys.stdout, [header, [report.fmt(v) for v in row]])


def cmd_plotdata(args, settings):
    header, rows = report.plot_data(args.figure, settings)
    os.makedirs(args.outdir, exist_ok=True)
    path = os.path.join(args.outdir, f"fig{args.figure}.tsv")
    report.write_tsv(path, header, rows)
    print(path)


def cmd_compare_paper(args, settings):
    rows = report.compare_paper(settings)
    report.write_csv(args.output + ".csv", report.comparison_table(rows))
    text = report.summary_text(rows, settings)
    with open(args.output + ".txt", "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text)


COMMANDS = {
    "solve": cmd_solve,
    "spectrum": cmd_spectrum,
    "observables": cmd_observables,
    "plotdata": cmd_plotdata,
    "compare-paper": cmd_compare_paper,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
        COMMANDS[args.command](args, settings)
    except StateNotFound as exc:
        print(f"state not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
