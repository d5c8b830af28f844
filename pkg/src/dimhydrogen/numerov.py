"""Numerov shooting solver for the reduced radial equation u'' = f(r) u.

With u = r^((D-1)/2) R the D-dimensional radial equation loses its first
derivative term and becomes u'' = 2 (U_eff(r) - E) u in atomic units.
Eigenvalues are located by integrating inward from both ends of the grid,
stitching the two pieces at a matching index and bisecting on the mismatch of their
slopes, using the node count of the stitched function to pick the state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from .errors import DomainError, StateNotFound, StepFailure
from .potential import barrier, confinement_threshold, effective_potential, zero_crossing

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda fn: fn

OVERFLOW_LIMIT = 1e250
OVERFLOW_RESCALE = 1e-250
TINY_MATCH = 1e-280
REFINE_POINTS = 64

# outer wall for D >= 4; D = 3 keeps the classic 60 Bohr box
DEFAULT_OUTER_WALL = 30.0
DEFAULT_OUTER_WALL_3D = 60.0
DEFAULT_INNER_WALL = 1e-3
DEFAULT_POINTS = 20001


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n_points: int

    @property
    def h(self):
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def r(self):
        return self.r_min + np.arange(self.n_points) * self.h


def build_grid(r_min, r_max, n_points):
    if not r_min > 0:
        raise DomainError("r_min", f"must be > 0 (origin is singular), got {r_min}")
    if not r_max > r_min:
        raise DomainError("r_max", f"must exceed r_min={r_min}, got {r_max}")
    if int(n_points) != n_points or n_points < 16:
        raise DomainError("n_points", f"must be an integer >= 16, got {n_points}")
    return RadialGrid(float(r_min), float(r_max), int(n_points))


@dataclass(frozen=True)
class ShootingConfig:
    energy_window: tuple
    scan_points: int = 400
    bisection_rel_tol: float = 1e-10
    max_bisections: int = 200
    match_fraction: Union[float, str] = "auto"
    # "auto": regular power-law start where the origin allows one, else a hard wall
    inner_boundary: str = "auto"
    # restrict the search to energies below the confinement threshold
    confined_only: bool = True

    def __post_init__(self):
        lo, hi = self.energy_window
        if not lo < hi:
            raise DomainError("energy_window", f"need E_lo < E_hi, got {self.energy_window}")
        if self.scan_points < 2:
            raise DomainError("scan_points", "need at least 2 scan points")
        if not self.bisection_rel_tol > 0:
            raise DomainError("bisection_rel_tol", "must be positive")
        if self.max_bisections < 1:
            raise DomainError("max_bisections", "must be positive")
        if self.match_fraction != "auto" and not 0 < float(self.match_fraction) < 1:
            raise DomainError("match_fraction", "must be 'auto' or lie in (0, 1)")
        if self.inner_boundary not in ("auto", "dirichlet"):
            raise DomainError("inner_boundary", "must be 'auto' or 'dirichlet'")
        object.__setattr__(self, "energy_window", (float(lo), float(hi)))


@dataclass(frozen=True, eq=False)
class EigenSolution:
    energy: float
    u_samples: np.ndarray
    r_samples: np.ndarray
    radial_samples: np.ndarray
    node_count: int
    defect_residual: float
    spec: object
    grid: RadialGrid
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.diagnostics.get("label", self.node_count + 1)


def default_grid(spec, r_min=None, r_max=None, n_points=None):
    """Grid used when the caller does not override it.

    D = 3 and D = 4 start at 1e-3 Bohr, where the regular solution is
    seeded. For D >= 5 the Coulomb core is more singular than -1/r^2 and has
    no ground state, so a hard wall sits at the inner foot of the barrier
    where U_eff = 0: the collapse region is excised and every state on the
    grid has E > 0. The outer wall is 60 Bohr for D = 3 and 30 Bohr above.
    """
    if r_min is None:
        r0 = zero_crossing(spec)
        r_min = r0 if np.isfinite(r0) else DEFAULT_INNER_WALL
    if r_max is None:
        r_max = DEFAULT_OUTER_WALL_3D if spec.dimension == 3 else DEFAULT_OUTER_WALL
    return build_grid(r_min, r_max, DEFAULT_POINTS if n_points is None else n_points)


def default_window(spec, grid):
    info = barrier(spec)
    if info.exists:
        return (1e-6, 0.999 * info.u_max)
    u_min = float(np.min(effective_potential(grid.r, spec)))
    if u_min < 0:
        # keep h^2 |f| / 12 <= 1/2 where U ~ 0, or the floor scan turns unstable
        return (max(1.1 * u_min, -3.0 / grid.h**2), -1e-6)
    return (1e-6, 1e3)


def default_config(spec, grid, **overrides):
    overrides.setdefault("energy_window", default_window(spec, grid))
    return ShootingConfig(**overrides)


def local_f(E, r, spec):
    """Coefficient f in u'' = f u; negative where the motion is classically allowed."""
    return 2.0 * (effective_potential(r, spec) - E)


def origin_exponent(spec):
    """Exponent s of the regular solution u ~ r^s at the origin, or None.

    The origin is a regular singular point for D = 3 (s = l + 1) and for
    D = 4, where U_eff = k/r^2 gives s(s-1) = 2k. For D >= 5 the core is
    more singular than 1/r^2 and no regular solution exists.
    """
    if spec.dimension == 3:
        return spec.angular_momentum + 1.0
    if spec.dimension == 4:
        disc = 0.25 + 2.0 * (0.5 * spec.centrifugal - spec.coupling)
        return 0.5 + np.sqrt(disc) if disc >= 0 else None
    return None


def inner_seeds(spec, grid, boundary="auto", E=0.0, terms=10):
    """First two forward values: u(r_min) and u(r_min + h).

    A hard wall gives (0, h). Otherwise the values come from the Frobenius
    series u = r^s sum_k a_k r^k of the regular solution, which for D = 3
    and D = 4 obeys a_k k (2s + k - 1) = -b a_(k-1) - 2E a_(k-2) with
    b = 2c in three dimensions and 0 in four. Values are scaled so that
    u(r_min) is of order one.
    """
    s = origin_exponent(spec) if boundary == "auto" else None
    if s is None:
        return 0.0, grid.h
    b = 2.0 * spec.coupling if spec.dimension == 3 else 0.0
    coeffs = [1.0, -b / (2.0 * s)]
    for k in range(2, terms):
        coeffs.append((-b * coeffs[k - 1] - 2.0 * E * coeffs[k - 2]) / (k * (2.0 * s + k - 1.0)))
    r0, r1 = grid.r_min, grid.r_min + grid.h
    series0 = np.polynomial.polynomial.polyval(r0, coeffs)
    series1 = np.polynomial.polynomial.polyval(r1, coeffs)
    return series0, (r1 / r0) ** s * series1


def reconstruct_R(u_samples, grid, D):
    r = grid.r if isinstance(grid, RadialGrid) else np.asarray(grid, dtype=float)
    return np.asarray(u_samples, dtype=float) / r ** ((D - 1) / 2.0)


@njit(cache=True)
def _numerov_kernel(f, h, seed0, seed1, forward):
    n = f.shape[0]
    u = np.zeros(n)
    w = 1.0 - h * h * f / 12.0
    if forward:
        start, step = 0, 1
    else:
        start, step = n - 1, -1
    u[start] = seed0
    u[start + step] = seed1
    for k in range(1, n - 1):
        cur = start + k * step
        nxt = cur + step
        if abs(w[nxt]) < 1e-300:
            return u, nxt
        u[nxt] = ((12.0 - 10.0 * w[cur]) * u[cur] - w[cur - step] * u[cur - step]) / w[nxt]
        if abs(u[nxt]) > OVERFLOW_LIMIT:
            if forward:
                u[: nxt + 1] *= OVERFLOW_RESCALE
            else:
                u[nxt:] *= OVERFLOW_RESCALE
    return u, -1


@njit(cache=True)
def _sign_changes(u):
    count = 0
    prev = 0.0
    for x in u:
        if x == 0.0:
            continue
        if prev != 0.0 and (x > 0.0) != (prev > 0.0):
            count += 1
        prev = x
    return count


def numerov_propagate(f_samples, h, seed0, seed1, direction="forward"):
    """Integrate u'' = f u with the three-term Numerov recurrence.

    ``seed0``/``seed1`` are the first two values in the direction of travel,
    so a backward run takes u[-1] and u[-2]. The result is always returned
    in grid order.
    """
    f = np.ascontiguousarray(f_samples, dtype=float)
    if f.ndim != 1 or f.size < 3:
        raise DomainError("f_samples", "need a 1-D sequence of at least 3 samples")
    if not h > 0:
        raise DomainError("h", f"must be positive, got {h}")
    if not (np.isfinite(seed0) and np.isfinite(seed1)):
        raise DomainError("seeds", "must be finite")
    if direction not in ("forward", "backward"):
        raise DomainError("direction", f"expected 'forward' or 'backward', got {direction!r}")
    u, failed = _numerov_kernel(f, float(h), float(seed0), float(seed1), direction == "forward")
    if failed >= 0:
        raise StepFailure(int(failed))
    return u


def count_nodes(u_samples):
    """Sign changes among interior samples; exact zeros are skipped."""
    u = np.ascontiguousarray(u_samples, dtype=float)
    if u.size < 3:
        raise DomainError("u_samples", "need at least 3 samples")
    return int(_sign_changes(u[1:-1]))


class _Shooter:
    """Evaluates the matching defect for one (spec, grid, config) triple."""

    def __init__(self, spec, grid, cfg):
        self.spec = spec
        self.grid = grid
        self.cfg = cfg
        self.r = grid.r
        self.h = grid.h
        self.potential = effective_potential(self.r, spec)
        self.scans = {}

    def match_index(self, f):
        n = f.size
        if self.cfg.match_fraction == "auto":
            flips = np.nonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))[0]
            m = int(flips[-1]) + 1 if flips.size else n // 2
        else:
            m = int(round(float(self.cfg.match_fraction) * (n - 1)))
        return min(max(m, 2), n - 3)

    def shoot(self, E):
        f = 2.0 * (self.potential - E)
        n = f.size
        h = self.h
        m0 = self.match_index(f)
        for shift in (0, 1, -1, 2, -2, 3, -3, 5, -5, 8, -8):
            m = min(max(m0 + shift, 2), n - 3)
            seeds = inner_seeds(self.spec, self.grid, self.cfg.inner_boundary, E)
            left = numerov_propagate(f[: m + 2], h, *seeds, "forward")
            right = numerov_propagate(f[m - 1:], h, 0.0, h, "backward")
            ul, ur = left[m], right[1]
            if abs(ul) >= TINY_MATCH and abs(ur) >= TINY_MATCH:
                break
        else:
            raise StepFailure(m0)
        w = 1.0 - h * h * f / 12.0
        below = left[m - 1] / ul
        above = right[2] / ur
        defect = (w[m + 1] * above + w[m - 1] * below - (12.0 - 10.0 * w[m])) / h
        nodes = int(_sign_changes(left[1: m + 1])) + int(_sign_changes(right[1:-1]))
        return defect, nodes, m, left[: m + 1] / ul, right[1:] / ur

    def defect(self, E):
        d, nodes, *_ = self.shoot(E)
        return d, nodes

    def states_below(self, E):
        """Sturm count: zeros of the forward solution across the whole grid.

        Equals the number of eigenvalues below E with a wall at r_max. Unlike
        the stitched count it does not depend on where the match sits.
        """
        f = 2.0 * (self.potential - E)
        seeds = inner_seeds(self.spec, self.grid, self.cfg.inner_boundary, E)
        return count_nodes(numerov_propagate(f, self.h, *seeds, "forward"))

    def stitched(self, E):
        d, nodes, m, left, right = self.shoot(E)
        return d, nodes, m, np.concatenate([left[:-1], right])


def matching_defect(E, spec, grid, cfg):
    """Slope mismatch at the matching index and node count of the stitched solution.

    Returns ``(defect, nodes)``. The defect is the Numerov residual at the
    match point divided by h u(match), i.e. the jump in u'/u there; it
    vanishes at an eigenvalue and is continuous in E between node jumps.
    """
    lo, hi = cfg.energy_window
    if not lo <= E <= hi:
        raise DomainError("E", f"{E} lies outside the energy window ({lo}, {hi})")
    return _Shooter(spec, grid, cfg).defect(E)


def search_window(spec, cfg):
    lo, hi = cfg.energy_window
    if cfg.confined_only:
        hi = min(hi, confinement_threshold(spec))
    return lo, hi


def _scan(shooter, lo, hi, points):
    key = (lo, hi, points)
    if key not in shooter.scans:
        energies = np.linspace(lo, hi, points)
        defects, nodes = zip(*(shooter.defect(E) for E in energies))
        shooter.scans[key] = (energies, np.array(defects), np.array(nodes))
    return shooter.scans[key]


def _locate(shooter, lo, hi, target, points, depth, seen):
    energies, defects, nodes = _scan(shooter, lo, hi, points)
    seen.update(int(k) for k in nodes)
    for i in range(points - 1):
        if nodes[i] == target and nodes[i + 1] == target and defects[i] * defects[i + 1] <= 0:
            return energies[i], energies[i + 1], defects[i], defects[i + 1]
    if depth == 0:
        return None
    for i in range(points - 1):
        if nodes[i] <= target <= nodes[i + 1] and nodes[i] != nodes[i + 1]:
            found = _locate(shooter, energies[i], energies[i + 1], target, REFINE_POINTS, depth - 1, seen)
            if found is not None:
                return found
    return None


def find_eigenvalue(spec, grid, cfg, target_nodes):
    """Eigenvalue whose stitched eigenfunction has ``target_nodes`` interior nodes.

    The window is scanned on ``scan_points`` energies; a sign change of the
    defect between two energies with the target node count brackets the
    state. Scan cells where the node count jumps across the target are
    rescanned a few levels deep, which resolves closely spaced levels near
    a continuum edge. The bracket is then bisected and the root polished by
    linear interpolation inside the final bracket.
    """
    return _find(_Shooter(spec, grid, cfg), target_nodes)


def _find(shooter, target_nodes):
    spec, grid, cfg = shooter.spec, shooter.grid, shooter.cfg
    if target_nodes < 0:
        raise DomainError("target_nodes", f"must be >= 0, got {target_nodes}")
    lo, hi = search_window(spec, cfg)
    if not lo < hi:
        raise StateNotFound(
            target_nodes, [], cfg.energy_window,
            reason=f"window lies above the confinement threshold {confinement_threshold(spec):.6g} Ha",
        )
    seen = set()
    bracket = _locate(shooter, lo, hi, target_nodes, cfg.scan_points, 4, seen)
    if bracket is None:
        raise StateNotFound(target_nodes, seen, (lo, hi))
    a, b, da, db = bracket
    steps = 0
    if da == 0:
        b, db = a, da
    elif db == 0:
        a, da = b, db
    while steps < cfg.max_bisections and b - a > cfg.bisection_rel_tol * max(abs(a), abs(b), 1e-300):
        mid = 0.5 * (a + b)
        dm, _ = shooter.defect(mid)
        steps += 1
        if dm == 0:
            a = b = mid
            da = db = 0.0
            break
        if (dm < 0) == (da < 0):
            a, da = mid, dm
        else:
            b, db = mid, dm
    energy = a if da == db else a - da * (b - a) / (db - da)
    defect, nodes, m, u = shooter.stitched(energy)
    from .observables import normalize

    solution = EigenSolution(
        energy=float(energy),
        u_samples=u,
        r_samples=shooter.r.copy(),
        radial_samples=reconstruct_R(u, shooter.r, spec.dimension),
        node_count=nodes,
        defect_residual=float(defect),
        spec=spec,
        grid=grid,
        diagnostics={
            "match_index": m,
            "bisections": steps,
            "bracket": (float(a), float(b)),
            "window": (float(lo), float(hi)),
        },
    )
    return normalize(solution)


def _baseline(shooter):
    lo, hi = search_window(shooter.spec, shooter.cfg)
    if not lo < hi:
        return 0
    return shooter.states_below(lo)


def baseline_nodes(spec, grid, cfg):
    """Node count of the lowest state inside the search window.

    Equals zero at default numerics; it becomes positive when a deeper inner
    wall lets the attractive core hold states below the window.
    """
    return _baseline(_Shooter(spec, grid, cfg))


def _find_state(shooter, n, baseline):
    if n < 1:
        raise DomainError("n", f"must be >= 1, got {n}")
    solution = _find(shooter, baseline + n - 1)
    solution.diagnostics["label"] = n
    return solution


def find_state(spec, grid, cfg, n):
    """The n-th state (n = 1, 2, ...) inside the search window."""
    shooter = _Shooter(spec, grid, cfg)
    return _find_state(shooter, n, _baseline(shooter))


def scan_spectrum(spec, grid, cfg, n_max):
    """States n = 1..n_max in the window; a missing state is a ``None`` gap."""
    if n_max < 1:
        raise DomainError("n_max", f"must be >= 1, got {n_max}")
    shooter = _Shooter(spec, grid, cfg)
    baseline = _baseline(shooter)
    states = []
    for n in range(1, n_max + 1):
        try:
            states.append(_find_state(shooter, n, baseline))
        except StateNotFound:
            states.append(None)
    return states


def with_window(cfg, window):
    return replace(cfg, energy_window=window)
