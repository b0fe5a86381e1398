"""Scotch-yoke kinematics, quasi-static joint forces and the impulse model.

Link numbering: 1 ground, 2 rotating disk (crank of radius ``r2``),
3 pin block sliding in the yoke slot, 4 slider of length ``r4a``.
``r3`` is the pin offset along the slot and ``r4`` the slider stroke.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, astuple

import numpy as np

from .errors import DomainError, NumericalError
from .magnetics import DEFAULT_CONSTANTS, PhysicalConstants

KGCM_TO_NM = 0.0980665  # 1 kg*cm in N*m

PAPER_FORM = "paper-form"
FULL_DERIVATIVE = "full-derivative"
ACCELERATION_MODES = (PAPER_FORM, FULL_DERIVATIVE)

FORCE_NAMES = ("F34", "F14", "F23x", "F23y", "F12x", "F12y", "T2")


@dataclass(frozen=True)
class YokeGeometry:
    disk_radius_r2: float
    slider_length_r4a: float

    def __post_init__(self):
        if not self.disk_radius_r2 > 0:
            raise DomainError(f"disk_radius_r2 must be positive, got {self.disk_radius_r2}")
        if not self.slider_length_r4a > 0:
            raise DomainError(f"slider_length_r4a must be positive, got {self.slider_length_r4a}")

    @property
    def slot_length(self) -> float:
        return 2.0 * self.disk_radius_r2


@dataclass(frozen=True)
class KinematicState:
    theta2: float
    theta2_dot: float = 0.0
    theta2_ddot: float = 0.0


@dataclass(frozen=True)
class KinematicSolution:
    r3: float
    r4: float
    r3_dot: float
    r4_dot: float
    r3_ddot: float
    r4_ddot: float
    mode: str


@dataclass(frozen=True)
class ForceSolution:
    F34: float
    F14: float
    F23x: float
    F23y: float
    F12x: float
    F12y: float
    T2: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values) -> "ForceSolution":
        return cls(*(float(v) for v in values))


def position(geom: YokeGeometry, theta2: float) -> tuple[float, float]:
    """Return ``(r3, r4)`` from the loop closure with theta3 = 0, theta4 = -pi/2."""
    r2 = geom.disk_radius_r2
    return r2 * math.cos(theta2), -r2 * math.sin(theta2)


def velocity(geom: YokeGeometry, state: KinematicState) -> tuple[float, float]:
    """Return ``(r3_dot, r4_dot)``."""
    r2, th, w = geom.disk_radius_r2, state.theta2, state.theta2_dot
    return -r2 * math.sin(th) * w, -r2 * math.cos(th) * w


def acceleration(geom: YokeGeometry, state: KinematicState, mode: str = FULL_DERIVATIVE) -> tuple[float, float]:
    """Return ``(r3_ddot, r4_ddot)``.

    ``mode="paper-form"`` keeps only the angular-acceleration terms, in the
    form used for the original design; ``mode="full-derivative"`` (default)
    is the exact time derivative of :func:`velocity`, including the
    centripetal ``theta2_dot**2`` terms.
    """
    r2, th = geom.disk_radius_r2, state.theta2
    w, a = state.theta2_dot, state.theta2_ddot
    s, c = math.sin(th), math.cos(th)
    if mode == PAPER_FORM:
        return -r2 * c * a, r2 * s * a
    if mode == FULL_DERIVATIVE:
        return -r2 * c * w * w - r2 * s * a, r2 * s * w * w - r2 * c * a
    raise ValueError(f"unknown acceleration mode {mode!r}; expected one of {ACCELERATION_MODES}")


def kinematics(geom: YokeGeometry, state: KinematicState, mode: str = FULL_DERIVATIVE) -> KinematicSolution:
    r3, r4 = position(geom, state.theta2)
    r3d, r4d = velocity(geom, state)
    r3dd, r4dd = acceleration(geom, state, mode)
    return KinematicSolution(r3, r4, r3d, r4d, r3dd, r4dd, mode)


def newton_euler_matrix(geom: YokeGeometry, theta2: float) -> np.ndarray:
    """Coefficient matrix of the link force/moment balance.

    Unknown ordering is ``FORCE_NAMES``. Row 2 is the slider moment balance
    ``F14*r4a - F34*r3 = 0`` with ``r3 = r2*cos(theta2)``.
    """
    r2, r4a = geom.disk_radius_r2, geom.slider_length_r4a
    r3, _ = position(geom, theta2)
    c, s = math.cos(theta2), math.sin(theta2)
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [-r3, r4a, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, r2 * c, r2 * s, 0.0, 0.0, 1.0],
        ]
    )


def newton_euler_rhs(applied_force_F: float) -> np.ndarray:
    rhs = np.zeros(7)
    rhs[0] = applied_force_F
    return rhs


def solve_forces(geom: YokeGeometry, theta2: float, applied_force_F: float) -> ForceSolution:
    """Solve the 7x7 force balance numerically."""
    if not math.isfinite(applied_force_F):
        raise DomainError(f"applied force must be finite, got {applied_force_F}")
    A = newton_euler_matrix(geom, theta2)
    try:
        x = np.linalg.solve(A, newton_euler_rhs(applied_force_F))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"singular force matrix at theta2={theta2}, r2={geom.disk_radius_r2}, "
            f"r4a={geom.slider_length_r4a}, det={np.linalg.det(A)}"
        ) from exc
    return ForceSolution.from_array(x)


def closed_form_forces(geom: YokeGeometry, theta2: float, applied_force_F: float) -> ForceSolution:
    r2, r4a = geom.disk_radius_r2, geom.slider_length_r4a
    F = applied_force_F
    r3, _ = position(geom, theta2)
    return ForceSolution(
        F34=F,
        F14=r3 * F / r4a,
        F23x=0.0,
        F23y=F,
        F12x=0.0,
        F12y=F,
        T2=-r2 * math.sin(theta2) * F,
    )


def driving_torque_profile(geom: YokeGeometry, applied_force_F: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Driving torque on a uniform grid over ``[0, 2*pi)``.

    Returns ``(theta2, T2)`` arrays sorted by angle.
    """
    if int(samples) != samples or samples < 2:
        raise DomainError(f"samples must be an integer >= 2, got {samples}")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    torque = -geom.disk_radius_r2 * np.sin(theta) * applied_force_F + 0.0  # no negative zeros
    return theta, torque


def peak_torque(geom: YokeGeometry, applied_force_F: float) -> float:
    """Largest ``|T2|`` over a revolution, reached at theta2 = pi/2 and 3*pi/2."""
    return geom.disk_radius_r2 * abs(applied_force_F)


def impulse_average_force(mass: float, v_initial: float, v_final: float, t_initial: float, t_final: float) -> float:
    """Average contact force from the momentum change over a time window."""
    if mass < 0:
        raise DomainError(f"mass must be non-negative, got {mass}")
    if not t_final > t_initial:
        raise DomainError(f"t_final ({t_final}) must exceed t_initial ({t_initial})")
    return (mass * v_final - mass * v_initial) / (t_final - t_initial)


def required_release_force(
    total_grasped_mass: float, constants: PhysicalConstants = DEFAULT_CONSTANTS, factor: float = 1.2
) -> float:
    """Force needed to push a held mass off the magnets.

    A factor below 1 cannot overcome the holding force; it is computed
    anyway and a ``RuntimeWarning`` is issued.
    """
    if total_grasped_mass < 0:
        raise DomainError(f"total_grasped_mass must be non-negative, got {total_grasped_mass}")
    if factor < 1:
        warnings.warn(f"release factor {factor} < 1 will not detach the held mass", RuntimeWarning, stacklevel=2)
    return factor * total_grasped_mass * constants.gravity_g
