"""Physical constants, unit conversion and validated problem definitions.

Everything internal is in Hartree atomic units (hbar = m_e = e = 1, lengths
in Bohr radii). Conversions to eV and cm happen only at the reporting edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

MAX_DIMENSION = 30


@dataclass(frozen=True)
class PhysicalConstants:
    hartree_in_ev: float = 27.211386
    bohr_in_cm: float = 0.529177e-8


CONSTANTS = PhysicalConstants()


def hartree_to_ev(energy):
    return energy * CONSTANTS.hartree_in_ev


def ev_to_hartree(energy):
    return energy / CONSTANTS.hartree_in_ev


def coupling_constant(dimension, charge_scale=1.0):
    """Strength c_D of the Gauss-law potential energy -c_D / r^(D-2).

    c_D = 2 Gamma(D/2) / (pi^((D-2)/2) (D-2)) * charge_scale^2, which is
    exactly 1 in three dimensions.
    """
    d = dimension
    return (
        2.0 * math.gamma(d / 2.0) / (math.pi ** ((d - 2) / 2.0) * (d - 2))
        * charge_scale**2
    )


@dataclass(frozen=True)
class ProblemSpec:
    """One radial problem: dimension D, angular momentum l, charge scale.

    ``j_index`` and ``coupling`` are derived on construction; use
    :func:`make_problem` rather than building this directly.
    """

    dimension: int
    angular_momentum: int
    charge_scale: float = 1.0
    j_index: float = field(init=False)
    coupling: float = field(init=False)

    def __post_init__(self):
        _validate(self.dimension, self.angular_momentum, self.charge_scale)
        object.__setattr__(self, "dimension", int(self.dimension))
        object.__setattr__(self, "angular_momentum", int(self.angular_momentum))
        object.__setattr__(self, "charge_scale", float(self.charge_scale))
        object.__setattr__(
            self, "j_index", self.angular_momentum + (self.dimension - 3) / 2.0
        )
        object.__setattr__(
            self, "coupling", coupling_constant(self.dimension, self.charge_scale)
        )

    @property
    def centrifugal(self):
        """j(j+1), the numerator of the generalized centrifugal term."""
        return self.j_index * (self.j_index + 1.0)


def _validate(dimension, angular_momentum, charge_scale):
    if isinstance(dimension, bool) or not float(dimension).is_integer():
        raise DomainError("dimension", f"must be an integer, got {dimension!r}")
    if dimension == 2:
        raise DomainError("dimension", "D = 2 makes the potential singular (D - 2 = 0)")
    if dimension < 3:
        raise DomainError("dimension", f"must be >= 3, got {dimension}")
    if dimension > MAX_DIMENSION:
        raise DomainError("dimension", f"must be <= {MAX_DIMENSION}, got {dimension}")
    if isinstance(angular_momentum, bool) or not float(angular_momentum).is_integer():
        raise DomainError("angular_momentum", f"must be an integer, got {angular_momentum!r}")
    if angular_momentum < 0:
        raise DomainError("angular_momentum", f"must be >= 0, got {angular_momentum}")
    if not (charge_scale > 0 and math.isfinite(charge_scale)):
        raise DomainError("charge_scale", f"must be a positive finite number, got {charge_scale!r}")


def make_problem(D, l, charge_scale=1.0):
    """Validated problem for dimension ``D`` and angular momentum ``l``."""
    return ProblemSpec(D, l, charge_scale)
