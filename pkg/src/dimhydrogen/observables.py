"""Normalization and radius statistics under the D-dimensional radial measure.

The probability density in r is p(r) = R(r)^2 r^(D-1) = u(r)^2; the solid
angle factor cancels between normalization and expectation values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import ContractError, DegenerateSolution, DomainError, SamplingFailure
from .numerov import reconstruct_R

NORM_TOLERANCE = 1e-3
MC_CHUNK = 1 << 18


class BoundaryPeakWarning(UserWarning):
    """The density maximum sits on the first or last grid point."""


@dataclass(frozen=True)
class RadiusStats:
    mean_quadrature: float
    mean_mc: float
    mc_sigma: float
    most_probable: float
    n_samples: int
    n_accepted: int
    seed: int

    @property
    def healthy(self):
        return abs(self.mean_mc - self.mean_quadrature) <= 4.0 * self.mc_sigma


def density(solution):
    return np.asarray(solution.u_samples, dtype=float) ** 2


def norm(solution):
    return float(np.trapezoid(density(solution), solution.r_samples))


def normalize(solution):
    """Rescale so that the trapezoidal integral of R^2 r^(D-1) dr is one."""
    total = norm(solution)
    if not total > 0 or not np.isfinite(total):
        raise DegenerateSolution("cannot normalize a solution with zero norm")
    scale = 1.0 / np.sqrt(total)
    u = np.asarray(solution.u_samples, dtype=float) * scale
    return replace(
        solution,
        u_samples=u,
        radial_samples=reconstruct_R(u, solution.r_samples, solution.spec.dimension),
    )


def _require_normalized(solution):
    total = norm(solution)
    if abs(total - 1.0) > NORM_TOLERANCE:
        raise ContractError(f"solution is not normalized (norm = {total:.6g})")


def mean_radius_quadrature(solution):
    _require_normalized(solution)
    r = solution.r_samples
    return float(np.trapezoid(r * density(solution), r))


def mean_radius_mc(solution, n_samples=1_000_000, seed=0):
    """<r> by rejection sampling of the radial density.

    Proposals are uniform on [r_min, r_max] and accepted with probability
    p(r)/p_max, p linearly interpolated between grid samples. The error is
    the standard error of the accepted-sample mean. Draws come from a
    PCG64 stream owned by this call, so equal seeds give identical stats.
    """
    if n_samples < 1000:
        raise DomainError("n_samples", f"must be >= 1000, got {n_samples}")
    _require_normalized(solution)
    r = solution.r_samples
    p = density(solution)
    p_max = float(p.max())
    rng = np.random.Generator(np.random.PCG64(seed))
    accepted = []
    remaining = int(n_samples)
    while remaining:
        batch = min(remaining, MC_CHUNK)
        proposals = rng.uniform(r[0], r[-1], batch)
        keep = rng.uniform(0.0, p_max, batch) < np.interp(proposals, r, p)
        accepted.append(proposals[keep])
        remaining -= batch
    sample = np.concatenate(accepted)
    if sample.size == 0:
        raise SamplingFailure("rejection sampler accepted no proposals")
    sigma = float(sample.std(ddof=1) / np.sqrt(sample.size)) if sample.size > 1 else float("nan")
    return RadiusStats(
        mean_quadrature=mean_radius_quadrature(solution),
        mean_mc=float(sample.mean()),
        mc_sigma=sigma,
        most_probable=most_probable_radius(solution),
        n_samples=int(n_samples),
        n_accepted=int(sample.size),
        seed=int(seed),
    )


def most_probable_radius(solution):
    """Maximum of R^2 r^(D-1), refined by a parabola through the peak sample.

    Ties go to the smaller radius. A peak on the grid edge is returned as is
    with a :class:`BoundaryPeakWarning`.
    """
    r = solution.r_samples
    p = density(solution)
    k = int(np.argmax(p))
    if k == 0 or k == p.size - 1:
        warnings.warn(
            f"density peaks at the grid boundary r = {r[k]:.6g}", BoundaryPeakWarning, stacklevel=2
        )
        return float(r[k])
    lower, mid, upper = p[k - 1], p[k], p[k + 1]
    curvature = lower - 2.0 * mid + upper
    if curvature >= 0:
        return float(r[k])
    offset = 0.5 * (lower - upper) / curvature
    return float(r[k] + offset * (r[k + 1] - r[k]))
