"""Pull capacity of permanent ring magnets and magnet arrays.

All lengths are SI metres, masses kilograms. The report layer converts
to cm/mm where needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    gravity_g: float = 9.81  # m/s^2
    permeability_mu0: float = 1.25663753e-6  # T*m/A

    def __post_init__(self):
        if not (self.gravity_g > 0 and self.permeability_mu0 > 0):
            raise DomainError("gravity_g and permeability_mu0 must be positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class MagnetSpec:
    """A single ring (or solid disc, ``inner_diameter=0``) magnet.

    ``empirical_pull_mass`` is the measured holding mass on the target
    surface; when given it overrides the ideal-contact estimate.
    """

    flux_density_B: float  # T
    outer_diameter: float  # m
    inner_diameter: float  # m
    thickness: float  # m
    grade_label: str = ""
    empirical_pull_mass: Optional[float] = None  # kg

    def __post_init__(self):
        if not self.flux_density_B > 0:
            raise DomainError(f"flux_density_B must be positive, got {self.flux_density_B}")
        if not self.outer_diameter > self.inner_diameter >= 0:
            raise DomainError(
                "require outer_diameter > inner_diameter >= 0, got "
                f"{self.outer_diameter} / {self.inner_diameter}"
            )
        if not self.thickness > 0:
            raise DomainError(f"thickness must be positive, got {self.thickness}")
        if self.empirical_pull_mass is not None and not self.empirical_pull_mass > 0:
            raise DomainError(
                f"empirical_pull_mass must be positive when given, got {self.empirical_pull_mass}"
            )

    @property
    def face_area(self) -> float:
        """Annular pole-face area in m^2."""
        return math.pi / 4.0 * (self.outer_diameter**2 - self.inner_diameter**2)


@dataclass(frozen=True)
class MagnetArray:
    magnet: MagnetSpec
    count: int
    spacing: float  # m, side of the placement polygon
    layout_label: str = ""

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f"count must be a positive integer, got {self.count}")
        if not self.spacing > 0:
            raise DomainError(f"spacing must be positive, got {self.spacing}")


@dataclass(frozen=True)
class EffectivePull:
    mass: float  # kg, the value used for sizing
    theoretical: float  # kg
    derate_ratio: float  # effective / theoretical (nan if theoretical is 0)
    measured: bool


@dataclass(frozen=True)
class PayloadMargin:
    capacity: float
    payload: float
    ratio: float  # math.inf when payload is zero
    passed: bool

    @property
    def infinite_margin(self) -> bool:
        return math.isinf(self.ratio)


def pull_mass(flux_density_B: float, face_area: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Holding mass ``B^2 A / (2 g mu0)`` of an ideal pole face in full contact."""
    if flux_density_B < 0:
        raise DomainError(f"flux density must be non-negative, got {flux_density_B}")
    if not face_area > 0:
        raise DomainError(f"face area must be positive, got {face_area}")
    return flux_density_B**2 * face_area / (2.0 * constants.gravity_g * constants.permeability_mu0)


def theoretical_pull_mass(magnet: MagnetSpec, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return pull_mass(magnet.flux_density_B, magnet.face_area, constants)


def effective_pull(magnet: MagnetSpec, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> EffectivePull:
    theoretical = theoretical_pull_mass(magnet, constants)
    if magnet.empirical_pull_mass is None:
        return EffectivePull(theoretical, theoretical, 1.0 if theoretical > 0 else math.nan, False)
    mass = magnet.empirical_pull_mass
    ratio = mass / theoretical if theoretical > 0 else math.nan
    return EffectivePull(mass, theoretical, ratio, True)


def effective_pull_mass(magnet: MagnetSpec, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Measured pull mass if known, otherwise the theoretical value."""
    return effective_pull(magnet, constants).mass


def array_capacity(array: MagnetArray, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    # Magnets are treated as independent; spacing does not modify capacity.
    return array.count * effective_pull_mass(array.magnet, constants)


def payload_margin(
    array: MagnetArray, payload_mass: float, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> PayloadMargin:
    if payload_mass < 0:
        raise DomainError(f"payload_mass must be non-negative, got {payload_mass}")
    capacity = array_capacity(array, constants)
    ratio = math.inf if payload_mass == 0 else capacity / payload_mass
    return PayloadMargin(capacity, payload_mass, ratio, payload_mass <= capacity)
