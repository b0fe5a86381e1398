"""From optimal lengths to fabricable gripper dimensions.

Pipeline: magnet capacity -> release force -> weighted GP radius/length
-> safety factor and rounding -> disk/slider thickness -> mount box ->
actuator torque check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import gp, magnetics, mechanism
from .errors import DomainError, GripperError, StageError
from .magnetics import DEFAULT_CONSTANTS, MagnetArray, PhysicalConstants
from .mechanism import KGCM_TO_NM, YokeGeometry

ROUNDING_STEP = 0.005  # m, dimensions are rounded to the nearest half centimetre


@dataclass(frozen=True)
class MaterialSpec:
    density_rho: float  # kg/m^3
    name: str = ""

    def __post_init__(self):
        if not self.density_rho > 0:
            raise DomainError(f"density_rho must be positive, got {self.density_rho}")


@dataclass(frozen=True)
class ActuatorSpec:
    torque_rating: float  # N*m
    body_length_Al: float  # m
    angular_speed: float  # rad/s
    rated_voltage: float = 6.0

    def __post_init__(self):
        for name in ("torque_rating", "body_length_Al", "angular_speed"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_kgcm(cls, torque_kgcm: float, body_length_Al: float, angular_speed: float, rated_voltage: float = 6.0):
        return cls(torque_kgcm * KGCM_TO_NM, body_length_Al, angular_speed, rated_voltage)


@dataclass(frozen=True)
class ImpactModel:
    """Slider-on-object collision used to size the moving mass.

    The object starts at rest, so the velocity change defaults to the
    slider impact speed.
    """

    slider_impact_speed: float  # m/s
    contact_duration: float = 0.02  # s
    velocity_change: Optional[float] = None  # m/s

    def __post_init__(self):
        if not self.contact_duration > 0:
            raise DomainError(f"contact_duration must be positive, got {self.contact_duration}")
        if not self.slider_impact_speed > 0:
            raise DomainError(f"slider_impact_speed must be positive, got {self.slider_impact_speed}")
        if self.velocity_change is None:
            object.__setattr__(self, "velocity_change", self.slider_impact_speed)

    @classmethod
    def from_actuator(cls, r2: float, actuator: ActuatorSpec, contact_duration: float = 0.02):
        # Peak slider speed |r4_dot| = r2 * omega, reached at theta2 = 0.
        return cls(r2 * actuator.angular_speed, contact_duration)


@dataclass(frozen=True)
class SafetyFactored:
    raw: float
    rounded: float
    factor: float


@dataclass(frozen=True)
class ActuatorCheck:
    required: float  # N*m
    available: float  # N*m
    margin: float  # available / required, inf when nothing is required
    passed: bool

    @property
    def required_kgcm(self) -> float:
        return self.required / KGCM_TO_NM

    @property
    def available_kgcm(self) -> float:
        return self.available / KGCM_TO_NM


@dataclass(frozen=True)
class GripperDimensions:
    r2_final: float
    slot_length: float
    r4a: float
    actuator_length_Al: float
    disk_thickness_Dt: float
    slider_thickness_St: float
    magnet_diameter_md: float
    mount_length_Lgm: float
    mount_depth_Dgm: float
    mount_height_Hgm: float
    actuator_ok: bool
    payload_ok: bool

    def identity_errors(self) -> dict[str, float]:
        """Absolute mismatch of each mount/slot identity, recomputed."""
        Lgm, Hgm, Dgm = mount_dimensions(
            self.r2_final, self.r4a, self.actuator_length_Al, self.disk_thickness_Dt,
            self.slider_thickness_St, self.magnet_diameter_md,
        )
        return {
            "Lgm": abs(Lgm - self.mount_length_Lgm),
            "Hgm": abs(Hgm - self.mount_height_Hgm),
            "Dgm": abs(Dgm - self.mount_depth_Dgm),
            "slot": abs(2.0 * self.r2_final - self.slot_length),
        }


TABLE2_ROWS = (
    ("Radius of the rotating disk (r2)", "r2_final"),
    ("Length of the slot in the slider", "slot_length"),
    ("Length of the slider (r4a)", "r4a"),
    ("Length of the actuator (Al)", "actuator_length_Al"),
    ("Thickness of the disk (Dt)", "disk_thickness_Dt"),
    ("Thickness of the slider (St)", "slider_thickness_St"),
    ("Diameter of the permanent magnet (md)", "magnet_diameter_md"),
    ("Length of the gripper mount (Lgm)", "mount_length_Lgm"),
    ("Depth of the gripper mount (Dgm)", "mount_depth_Dgm"),
    ("Height of the gripper mount (Hgm)", "mount_height_Hgm"),
)


def moving_mass_from_impulse(required_force: float, impact: ImpactModel) -> float:
    """Mass that delivers ``required_force`` on average over the contact."""
    if required_force < 0:
        raise DomainError(f"required_force must be non-negative, got {required_force}")
    if not impact.velocity_change > 0:
        raise DomainError(f"velocity_change must be positive, got {impact.velocity_change}")
    return required_force * impact.contact_duration / impact.velocity_change


def _thickness(mass: float, area: float, material: MaterialSpec) -> float:
    if mass < 0:
        raise DomainError(f"mass must be non-negative, got {mass}")
    if not area > 0:
        raise DomainError(f"footprint area must be positive, got {area}")
    return mass / (material.density_rho * area)


def disk_thickness(mass: float, r2: float, material: MaterialSpec) -> float:
    """Thickness of a solid disk of radius ``r2`` with the given mass."""
    if not r2 > 0:
        raise DomainError(f"r2 must be positive, got {r2}")
    return _thickness(mass, math.pi * r2 * r2, material)


def slider_thickness(mass: float, footprint_area: float, material: MaterialSpec) -> float:
    return _thickness(mass, footprint_area, material)


def round_to_step(length: float, step: float = ROUNDING_STEP) -> float:
    # Half-up; the final round() strips float noise such as 0.025000000000000001.
    return round(math.floor(length / step + 0.5) * step, 12)


def apply_safety_factor(optimal_length: float, factor: float = 2.0, step: float = ROUNDING_STEP) -> SafetyFactored:
    """Divide an optimal length by ``factor`` and round to the nearest ``step``.

    This mirrors the sizing convention used for the disk radius, where the
    factor shrinks the radius (and with it the torque demand); it is not a
    load factor.
    """
    if factor < 1:
        raise DomainError(f"safety factor must be >= 1, got {factor}")
    if not optimal_length > 0:
        raise DomainError(f"length must be positive, got {optimal_length}")
    raw = optimal_length / factor
    return SafetyFactored(raw, round_to_step(raw, step), factor)


def mount_dimensions(r2: float, r4a: float, Al: float, Dt: float, St: float, md: float) -> tuple[float, float, float]:
    """Return ``(Lgm, Hgm, Dgm)`` of the gripper mount box."""
    Lgm = 2.0 * r2 + 2.0 * md
    Hgm = 2.0 * r2 + r4a
    Dgm = Al + Dt + St + 2.0 * md
    return Lgm, Hgm, Dgm


def actuator_feasibility(geom: YokeGeometry, release_force: float, actuator: ActuatorSpec) -> ActuatorCheck:
    required = mechanism.peak_torque(geom, release_force)
    available = actuator.torque_rating
    margin = math.inf if required == 0 else available / required
    return ActuatorCheck(required, available, margin, required <= available)


# -- full pipeline -------------------------------------------------------------


@dataclass(frozen=True)
class DesignInputs:
    array: MagnetArray
    payload_mass: float
    actuator: ActuatorSpec
    material: MaterialSpec = MaterialSpec(1250.0, "printed polymer")
    weights: tuple[float, float] = (0.9, 0.1)
    release_factor: float = 1.2
    design_force: Optional[float] = None  # N, overrides the computed release force
    recovery: str = gp.PAPER_RECIPE
    safety_factor: float = 2.0
    slider_factor: float = 1.0
    contact_duration: float = 0.02
    impact_speed: Optional[float] = None  # m/s, default r2 * angular_speed
    thickness_source: str = "fixed"  # "fixed" or "impulse"
    disk_thickness: float = 0.025  # m, used when thickness_source == "fixed"
    slider_thickness: float = 0.025
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        if self.recovery not in (gp.PAPER_RECIPE, gp.RIGOROUS):
            raise DomainError(f"recovery must be {gp.PAPER_RECIPE!r} or {gp.RIGOROUS!r}, got {self.recovery!r}")
        if self.thickness_source not in ("fixed", "impulse"):
            raise DomainError(f"thickness_source must be 'fixed' or 'impulse', got {self.thickness_source!r}")


@dataclass
class DesignReport:
    dimensions: GripperDimensions
    theoretical_pull: float
    effective_pull: magnetics.EffectivePull
    capacity: float
    payload: magnetics.PayloadMargin
    required_release_force: float
    design_force: float
    weights: tuple[float, float]
    gp_dual: gp.DualSolution
    gp_primal: gp.PrimalSolution
    rigorous_dual: gp.DualSolution
    rigorous_primal: gp.PrimalSolution
    radius: SafetyFactored
    slider: SafetyFactored
    moving_mass: float
    impact: ImpactModel
    computed_disk_thickness: float
    computed_slider_thickness: float
    actuator: ActuatorCheck
    notes: list[str] = field(default_factory=list)

    def table_cm(self) -> list[tuple[str, float]]:
        return [(label, getattr(self.dimensions, attr) * 100.0) for label, attr in TABLE2_ROWS]

    def feasibility(self) -> dict[str, object]:
        return {
            "payload_pass": self.payload.passed,
            "payload_ratio": self.payload.ratio,
            "actuator_pass": self.actuator.passed,
            "actuator_required_kgcm": self.actuator.required_kgcm,
            "actuator_available_kgcm": self.actuator.available_kgcm,
            "actuator_margin": self.actuator.margin,
            "gp_point_feasible": self.gp_primal.feasible,
        }


class _stage:
    """Re-raise analysis errors tagged with the pipeline stage."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, (GripperError, ValueError, ArithmeticError)) and not isinstance(
            exc, StageError
        ):
            raise StageError(self.name, exc) from exc
        return False


def full_design_report(inputs: DesignInputs) -> DesignReport:
    notes = []
    const = inputs.constants
    with _stage("magnetics"):
        theo = magnetics.theoretical_pull_mass(inputs.array.magnet, const)
        eff = magnetics.effective_pull(inputs.array.magnet, const)
        capacity = magnetics.array_capacity(inputs.array, const)
        payload = magnetics.payload_margin(inputs.array, inputs.payload_mass, const)

    with _stage("release"):
        required = mechanism.required_release_force(capacity, const, inputs.release_factor)
        force = required if inputs.design_force is None else inputs.design_force
        if force < required:
            notes.append(f"design force {force:.6g} N is below the required release force {required:.6g} N")

    with _stage("gp"):
        paper_dual, paper_primal = gp.paper_lambda_recipe(inputs.weights, force)
        rig_dual, rig_primal = gp.gripper_optimum(inputs.weights, force)
        chosen = paper_primal if inputs.recovery == gp.PAPER_RECIPE else rig_primal
        chosen_dual = paper_dual if inputs.recovery == gp.PAPER_RECIPE else rig_dual

    with _stage("safety-factor"):
        radius = apply_safety_factor(chosen[gp.R2], inputs.safety_factor)
        slider = apply_safety_factor(chosen[gp.R4A], inputs.slider_factor)
        notes.append(
            f"disk radius {chosen[gp.R2] * 100:.6g} cm divided by safety factor {inputs.safety_factor:g} "
            f"and rounded to {radius.rounded * 100:.6g} cm (length-division convention)"
        )
        geom = YokeGeometry(radius.rounded, slider.rounded)

    with _stage("thickness"):
        impact = (
            ImpactModel.from_actuator(geom.disk_radius_r2, inputs.actuator, inputs.contact_duration)
            if inputs.impact_speed is None
            else ImpactModel(inputs.impact_speed, inputs.contact_duration)
        )
        mass = moving_mass_from_impulse(force, impact)
        material = inputs.material
        dt_calc = disk_thickness(mass, geom.disk_radius_r2, material)
        st_calc = slider_thickness(mass, geom.slider_length_r4a * geom.slot_length, material)
        if inputs.thickness_source == "fixed":
            Dt, St = inputs.disk_thickness, inputs.slider_thickness
            if dt_calc > Dt or st_calc > St:
                notes.append(
                    f"impulse-derived thicknesses (disk {dt_calc * 100:.6g} cm, slider {st_calc * 100:.6g} cm) "
                    f"exceed the fixed values ({Dt * 100:.6g} / {St * 100:.6g} cm)"
                )
        else:
            Dt, St = dt_calc, st_calc

    with _stage("mount"):
        md = inputs.array.magnet.outer_diameter
        Al = inputs.actuator.body_length_Al
        Lgm, Hgm, Dgm = mount_dimensions(geom.disk_radius_r2, geom.slider_length_r4a, Al, Dt, St, md)

    with _stage("actuator"):
        act = actuator_feasibility(geom, force, inputs.actuator)

    dims = GripperDimensions(
        r2_final=geom.disk_radius_r2,
        slot_length=geom.slot_length,
        r4a=geom.slider_length_r4a,
        actuator_length_Al=Al,
        disk_thickness_Dt=Dt,
        slider_thickness_St=St,
        magnet_diameter_md=md,
        mount_length_Lgm=Lgm,
        mount_depth_Dgm=Dgm,
        mount_height_Hgm=Hgm,
        actuator_ok=act.passed,
        payload_ok=payload.passed,
    )
    return DesignReport(
        dimensions=dims,
        theoretical_pull=theo,
        effective_pull=eff,
        capacity=capacity,
        payload=payload,
        required_release_force=required,
        design_force=force,
        weights=tuple(inputs.weights),
        gp_dual=chosen_dual,
        gp_primal=chosen,
        rigorous_dual=rig_dual,
        rigorous_primal=rig_primal,
        radius=radius,
        slider=slider,
        moving_mass=mass,
        impact=impact,
        computed_disk_thickness=dt_calc,
        computed_slider_thickness=st_calc,
        actuator=act,
        notes=notes,
    )
