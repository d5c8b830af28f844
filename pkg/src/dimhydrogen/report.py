"""Batch solves, figure data and the deviation report against published values."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import StateNotFound
from .model import hartree_to_ev, make_problem
from .numerov import (
    default_config, default_grid, find_eigenvalue, find_state, scan_spectrum, with_window,
)
from .observables import mean_radius_mc
from .potential import barrier, coulomb_energy, effective_potential, inverse_square_coefficient
from .reference import ENERGY, MEAN_R, load_reference

ENERGY_REL_TOL = 0.10
RADIUS_SIGMAS = 3.0
SENSITIVITY = (0.5, 2.0)


def setup(D, l, settings, r_min_factor=1.0, charge_scale=1.0):
    spec = make_problem(D, l, charge_scale)
    grid = default_grid(spec, settings.r_min, settings.r_max, settings.n_points)
    if r_min_factor != 1.0:
        grid = default_grid(spec, grid.r_min * r_min_factor, grid.r_max, grid.n_points)
    cfg = default_config(
        spec, grid, scan_points=settings.scan_points, bisection_rel_tol=settings.bisection_rel_tol
    )
    return spec, grid, cfg


def solve_state(D, l, n, settings, r_min_factor=1.0, charge_scale=1.0):
    spec, grid, cfg = setup(D, l, settings, r_min_factor, charge_scale)
    return find_state(spec, grid, cfg, n)


def solve_spectrum(D, l, n_max, settings, r_min_factor=1.0):
    spec, grid, cfg = setup(D, l, settings, r_min_factor)
    return scan_spectrum(spec, grid, cfg, n_max)


def fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.10g}"


def spectrum_rows(dimensions, ls, n_max, settings):
    """Rows D,l,n,E_hartree,E_eV,nodes,U_m_hartree,E_over_Um sorted by (D, l, n)."""
    rows = []
    for D in sorted(dimensions):
        for l in sorted(ls):
            spec = make_problem(D, l)
            info = barrier(spec)
            u_m = info.u_max if info.exists else None
            states = solve_spectrum(D, l, n_max, settings)
            for n, state in enumerate(states, 1):
                if state is None:
                    rows.append([D, l, n, None, None, None, u_m, None])
                    continue
                ratio = state.energy / u_m if u_m else None
                rows.append([D, l, n, state.energy, hartree_to_ev(state.energy),
                             state.node_count, u_m, ratio])
    return rows


@dataclass
class ComparisonRow:
    table: int
    kind: str
    D: int
    l: int
    n: int
    paper: float
    paper_sigma: Optional[float]
    computed: Optional[float] = None
    computed_sigma: Optional[float] = None
    rmin_half: Optional[float] = None
    rmin_double: Optional[float] = None
    status: str = ""

    @property
    def abs_dev(self):
        return None if self.computed is None else self.computed - self.paper

    @property
    def rel_dev(self):
        return None if self.computed is None else (self.computed - self.paper) / self.paper

    def delta(self, other):
        if other is None or self.computed is None:
            return None
        return other - self.computed


COMPARISON_HEADER = [
    "table", "kind", "D", "l", "n", "paper", "paper_sigma", "computed", "computed_sigma",
    "abs_dev", "rel_dev", "computed_rmin_half", "computed_rmin_double",
    "delta_rmin_half", "delta_rmin_double", "status",
]


class _Cache:
    """Memoizes spectra and radius statistics by (D, l, r_min factor)."""

    def __init__(self, settings):
        self.settings = settings
        self.spectra = {}
        self.radii = {}

    def energy(self, D, l, n, factor):
        key = (D, l, factor)
        if key not in self.spectra:
            self.spectra[key] = solve_spectrum(D, l, 4, self.settings, factor)
        states = self.spectra[key]
        state = states[n - 1] if n <= len(states) else None
        return None if state is None else hartree_to_ev(state.energy)

    def radius(self, D, l, n, factor):
        key = (D, l, n, factor)
        if key not in self.radii:
            self.radii[key] = None
            self.energy(D, l, min(n, 4), factor)
            states = self.spectra[(D, l, factor)]
            state = states[n - 1] if n <= len(states) else None
            if state is not None:
                self.radii[key] = mean_radius_mc(state, self.settings.mc_samples, self.settings.seed)
        return self.radii[key]


def compare_paper(settings, reference=None):
    """One comparison row per bundled reference row, never dropping a row."""
    reference = reference if reference is not None else load_reference()
    cache = _Cache(settings)
    out = []
    for ref in reference:
        row = ComparisonRow(ref.table, ref.kind, ref.D, ref.l, ref.n, ref.value, ref.sigma)
        try:
            if ref.kind == ENERGY:
                row.computed = cache.energy(ref.D, ref.l, ref.n, 1.0)
                row.rmin_half = cache.energy(ref.D, ref.l, ref.n, SENSITIVITY[0])
                row.rmin_double = cache.energy(ref.D, ref.l, ref.n, SENSITIVITY[1])
            elif ref.kind == MEAN_R:
                stats = cache.radius(ref.D, ref.l, ref.n, 1.0)
                if stats is not None:
                    row.computed, row.computed_sigma = stats.mean_mc, stats.mc_sigma
                half = cache.radius(ref.D, ref.l, ref.n, SENSITIVITY[0])
                double = cache.radius(ref.D, ref.l, ref.n, SENSITIVITY[1])
                row.rmin_half = half.mean_mc if half else None
                row.rmin_double = double.mean_mc if double else None
        except Exception as exc:  # recorded per cell, never fatal
            row.status = f"error: {type(exc).__name__}: {exc}"
            out.append(row)
            continue
        row.status = _status(row)
        out.append(row)
    return out


def _status(row):
    if row.computed is None:
        return "no state found"
    if row.kind == ENERGY:
        return "pass" if abs(row.rel_dev) <= ENERGY_REL_TOL else "flag"
    spread = math.hypot(row.paper_sigma or 0.0, row.computed_sigma or 0.0)
    return "pass" if abs(row.abs_dev) <= RADIUS_SIGMAS * spread else "flag"


def comparison_table(rows):
    table = [COMPARISON_HEADER]
    for r in rows:
        table.append([fmt(v) for v in (
            r.table, r.kind, r.D, r.l, r.n, r.paper, r.paper_sigma, r.computed, r.computed_sigma,
            r.abs_dev, r.rel_dev, r.rmin_half, r.rmin_double,
            r.delta(r.rmin_half), r.delta(r.rmin_double),
        )] + [r.status])
    return table


def barrier_ratios(settings, dimensions=range(5, 11), l=1):
    out = []
    for D in dimensions:
        info = barrier(make_problem(D, l))
        try:
            energy = solve_state(D, l, 1, settings).energy
        except StateNotFound:
            energy = None
        out.append((D, energy, info.u_max, None if energy is None else energy / info.u_max))
    return out


def four_dimensional_check(settings, ls=(0, 1)):
    out = []
    for l in ls:
        spec, grid, cfg = setup(4, l, settings)
        try:
            find_eigenvalue(spec, grid, with_window(cfg, (0.0, 1e3)), 0)
            found = True
        except StateNotFound:
            found = False
        out.append((l, inverse_square_coefficient(spec), found))
    return out


def summary_text(rows, settings):
    lines = ["Deviation report against the bundled published tables", ""]
    lines.append(f"settings: {settings}")
    lines.append(f"tolerance classes: energies pass within {ENERGY_REL_TOL:.0%} relative; "
                 f"radii pass within {RADIUS_SIGMAS:g} combined sigma")
    lines.append("")
    for table in sorted({r.table for r in rows}):
        sub = [r for r in rows if r.table == table]
        rel = [r.rel_dev for r in sub if r.rel_dev is not None]
        counts = {s: sum(1 for r in sub if r.status == s) for s in ("pass", "flag", "no state found")}
        errors = sum(1 for r in sub if r.status.startswith("error"))
        if rel:
            span = f"relative deviation {min(rel):+.1%} .. {max(rel):+.1%}"
        else:
            span = "no computed values"
        lines.append(f"table {table}: {len(sub)} rows, {span}; "
                     f"pass {counts['pass']}, flag {counts['flag']}, "
                     f"missing {counts['no state found']}, errors {errors}")
        first = [r.rel_dev for r in sub if r.n == 1 and r.rel_dev is not None]
        if first and table != 4:
            lines.append(f"  n = 1 rows only: {min(first):+.1%} .. {max(first):+.1%}")
    lines.append("")
    lines.append("barrier ratio E_1 / U_m for l = 1 (published claim: 0.1% .. 0.6%)")
    for D, energy, u_m, ratio in barrier_ratios(settings):
        shown = "no state" if ratio is None else f"{ratio:.3e} ({ratio:.4%})"
        lines.append(f"  D={D}: U_m = {u_m:.6g} Ha, E_1/U_m = {shown}")
    lines.append("")
    lines.append("D = 4 (net potential k/r^2; published claim: no solutions)")
    for l, coeff, found in four_dimensional_check(settings):
        lines.append(f"  l={l}: k = {coeff:+.6f}, state in (0, 1e3) Ha: {'found' if found else 'no state found'}")
    return "\n".join(lines) + "\n"


def write_csv(path_or_file, table):
    if hasattr(path_or_file, "write"):
        csv.writer(path_or_file, lineterminator="\n").writerows(table)
        return
    with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
        csv.writer(fh, lineterminator="\n").writerows(table)


def write_tsv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# " + "\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(fmt(v) for v in row) + "\n")


FIG_WAVEFUNCTION_L = {3: 0, 4: 1, 5: 3}


def plot_data(figure, settings):
    """(header, rows) for one figure. Energies in eV, radii in Bohr, potentials in Hartree."""
    if figure == 1:
        r = np.arange(1, 301) * 0.01
        header = ["r_over_aB"]
        columns = []
        for D in range(3, 11):
            spec = make_problem(D, 1)
            header.append(f"U_eff_D{D}_hartree")
            columns.append(effective_potential(r, spec))
        for D in range(3, 11):
            header.append(f"U_coulomb_D{D}_hartree")
            columns.append(coulomb_energy(r, make_problem(D, 1)))
        return header, [[r[i]] + [c[i] for c in columns] for i in range(r.size)]
    if figure == 2:
        header = ["D", "E1_eV", "E2_eV", "E3_eV", "E4_eV"]
        rows = []
        for D in range(5, 11):
            states = solve_spectrum(D, 1, 4, settings)
            rows.append([D] + [None if s is None else hartree_to_ev(s.energy) for s in states])
        return header, rows
    if figure in FIG_WAVEFUNCTION_L:
        l = FIG_WAVEFUNCTION_L[figure]
        states = solve_spectrum(6, l, 4, settings)
        present = [s for s in states if s is not None]
        if not present:
            raise StateNotFound(0, [], (float("nan"), float("nan")), reason="no D=6 states")
        r = present[0].r_samples
        stride = max(1, (r.size - 1) // 2000)
        header = ["r_over_aB"] + [f"R_n{n}" for n in range(1, 5)]
        rows = []
        for i in range(0, r.size, stride):
            rows.append([r[i]] + [None if s is None else s.radial_samples[i] for s in states])
        return header, rows
    if figure == 6:
        header = ["D", "r_mean_over_aB", "sigma"]
        rows = []
        for D in range(5, 11):
            state = solve_state(D, 1, 1, settings)
            stats = mean_radius_mc(state, settings.mc_samples, settings.seed)
            rows.append([D, stats.mean_mc, stats.mc_sigma])
        return header, rows
    raise ValueError(f"unknown figure {figure}")
