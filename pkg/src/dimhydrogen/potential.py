"""Gauss-law Coulomb energy, effective potential and barrier diagnostics.

All functions accept scalars or numpy arrays for ``r`` and return the same
shape. Energies are in Hartree, lengths in Bohr.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def _positive_radius(r):
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("r", "radius must be strictly positive")
    return arr


def _like(value, r):
    return float(value) if np.ndim(r) == 0 else value


def coulomb_energy(r, spec):
    """Electron potential energy -c_D / r^(D-2)."""
    arr = _positive_radius(r)
    return _like(-spec.coupling / arr ** (spec.dimension - 2), r)


def centrifugal_energy(r, spec):
    arr = _positive_radius(r)
    return _like(0.5 * spec.centrifugal / arr**2, r)


def effective_potential(r, spec):
    """Coulomb energy plus the generalized centrifugal term j(j+1)/(2 r^2)."""
    arr = _positive_radius(r)
    u = -spec.coupling / arr ** (spec.dimension - 2) + 0.5 * spec.centrifugal / arr**2
    return _like(u, r)


@dataclass(frozen=True)
class BarrierInfo:
    r_peak: float
    u_max: float
    exists: bool


def barrier(spec):
    """Location and height of the centrifugal barrier maximum.

    For D >= 5 the Coulomb core is more singular than the centrifugal term,
    so U_eff rises from -inf to a single positive maximum and decays to 0+.
    The stationary point satisfies r^(D-4) = (D-2) c_D / (j(j+1)).
    """
    d = spec.dimension
    j = spec.j_index
    if d < 5 or j <= 0 or spec.coupling <= 0:
        return BarrierInfo(r_peak=float("nan"), u_max=float("nan"), exists=False)
    r_peak = ((d - 2) * spec.coupling / spec.centrifugal) ** (1.0 / (d - 4))
    return BarrierInfo(r_peak=r_peak, u_max=effective_potential(r_peak, spec), exists=True)


def zero_crossing(spec):
    """Inner radius where U_eff changes sign (D >= 5), i.e. the inner foot of the barrier.

    Solves c_D / r^(D-2) = j(j+1) / (2 r^2). Returns nan when there is no barrier.
    """
    if not barrier(spec).exists:
        return float("nan")
    d = spec.dimension
    return (2.0 * spec.coupling / spec.centrifugal) ** (1.0 / (d - 4))


def inverse_square_coefficient(spec):
    """Net coefficient k of U_eff = k / r^2 in four dimensions.

    k = j(j+1)/2 - c_4. A positive value means the potential is purely
    repulsive, so no state can sit below the continuum threshold.
    """
    if spec.dimension != 4:
        raise DomainError("dimension", "the potential is a pure inverse square only for D = 4")
    return 0.5 * spec.centrifugal - spec.coupling


def confinement_threshold(spec):
    """Highest energy at which a state still counts as confined.

    Behind a barrier that is the barrier top U_m; for an open potential that
    decays to zero it is the continuum edge 0.
    """
    info = barrier(spec)
    return info.u_max if info.exists else 0.0


def ehrenfest_energy(D, n):
    """Semiclassical circular-orbit energy in D dimensions, atomic units.

    E = (D-4) / (2(D-2)) * n^(-(2D-4)/(4-D)); reduces to -1/(2n^2) for D = 3.
    """
    if D < 3:
        raise DomainError("D", f"must be >= 3, got {D}")
    if D == 4:
        raise DomainError("D", "D = 4 makes the exponent 4/(4-D) singular")
    if n < 1:
        raise DomainError("n", f"must be >= 1, got {n}")
    return (D - 4) / (2.0 * (D - 2)) * float(n) ** (-(2.0 * D - 4.0) / (4.0 - D))
