"""Flat ``section.key = value`` design configuration.

One assignment per line, ``#`` starts a comment. Keys carry their unit
in the name (``magnet.outer_diameter_mm``); values are converted to SI on
load. Unknown and duplicate keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional

from . import gp
from .errors import ConfigError, DomainError
from .magnetics import MagnetArray, MagnetSpec, PhysicalConstants
from .sizing import ActuatorSpec, DesignInputs, MaterialSpec

REQUIRED = object()


def _int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {text!r}")
        return text

    return parse


# key -> (parser, default)
SCHEMA: dict[str, tuple[Callable[[str], Any], Any]] = {
    "magnet.flux_density_T": (float, REQUIRED),
    "magnet.outer_diameter_mm": (float, REQUIRED),
    "magnet.inner_diameter_mm": (float, REQUIRED),
    "magnet.thickness_mm": (float, REQUIRED),
    "magnet.empirical_pull_kg": (float, None),
    "magnet.grade": (str, ""),
    "magnet.count": (_int, REQUIRED),
    "magnet.spacing_mm": (float, REQUIRED),
    "magnet.layout": (str, ""),
    "payload.mass_kg": (float, REQUIRED),
    "release.factor": (float, 1.2),
    "release.design_force_N": (float, None),
    "actuator.torque_kgcm": (float, REQUIRED),
    "actuator.voltage_V": (float, 6.0),
    "actuator.length_cm": (float, REQUIRED),
    "actuator.speed_rad_s": (float, REQUIRED),
    "material.density_kg_m3": (float, 1250.0),
    "material.name": (str, "printed polymer"),
    "gp.w1": (float, 0.9),
    "gp.recovery": (_choice(gp.PAPER_RECIPE, gp.RIGOROUS), gp.PAPER_RECIPE),
    "impact.contact_duration_s": (float, 0.02),
    "impact.speed_m_s": (float, None),
    "sizing.safety_factor": (float, 2.0),
    "sizing.slider_factor": (float, 1.0),
    "sizing.thickness_source": (_choice("fixed", "impulse"), "fixed"),
    "sizing.disk_thickness_cm": (float, 2.5),
    "sizing.slider_thickness_cm": (float, 2.5),
    "constants.g": (float, 9.81),
    "constants.mu0": (float, 1.25663753e-6),
}


@dataclass(frozen=True)
class DesignConfig:
    values: dict[str, Any]
    source: str = "<string>"

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    @property
    def weights(self) -> tuple[float, float]:
        try:
            return gp.weight_pair(self["gp.w1"])
        except DomainError as exc:
            raise ConfigError(str(exc), "gp.w1") from exc

    def constants(self) -> PhysicalConstants:
        return _build("constants", lambda: PhysicalConstants(self["constants.g"], self["constants.mu0"]))

    def magnet_array(self) -> MagnetArray:
        v = self.values
        magnet = _build(
            "magnet",
            lambda: MagnetSpec(
                flux_density_B=v["magnet.flux_density_T"],
                outer_diameter=v["magnet.outer_diameter_mm"] / 1000.0,
                inner_diameter=v["magnet.inner_diameter_mm"] / 1000.0,
                thickness=v["magnet.thickness_mm"] / 1000.0,
                grade_label=v["magnet.grade"],
                empirical_pull_mass=v["magnet.empirical_pull_kg"],
            ),
        )
        return _build(
            "magnet",
            lambda: MagnetArray(magnet, v["magnet.count"], v["magnet.spacing_mm"] / 1000.0, v["magnet.layout"]),
        )

    def actuator(self) -> ActuatorSpec:
        v = self.values
        return _build(
            "actuator",
            lambda: ActuatorSpec.from_kgcm(
                v["actuator.torque_kgcm"], v["actuator.length_cm"] / 100.0, v["actuator.speed_rad_s"],
                v["actuator.voltage_V"],
            ),
        )

    def design_inputs(self) -> DesignInputs:
        v = self.values
        if v["payload.mass_kg"] < 0:
            raise ConfigError("must be non-negative", "payload.mass_kg")
        array, actuator, weights, constants = self.magnet_array(), self.actuator(), self.weights, self.constants()
        material = _build("material", lambda: MaterialSpec(v["material.density_kg_m3"], v["material.name"]))
        return _build(
            "sizing",
            lambda: DesignInputs(
                array=array,
                payload_mass=v["payload.mass_kg"],
                actuator=actuator,
                material=material,
                weights=weights,
                release_factor=v["release.factor"],
                design_force=v["release.design_force_N"],
                recovery=v["gp.recovery"],
                safety_factor=v["sizing.safety_factor"],
                slider_factor=v["sizing.slider_factor"],
                contact_duration=v["impact.contact_duration_s"],
                impact_speed=v["impact.speed_m_s"],
                thickness_source=v["sizing.thickness_source"],
                disk_thickness=v["sizing.disk_thickness_cm"] / 100.0,
                slider_thickness=v["sizing.slider_thickness_cm"] / 100.0,
                constants=constants,
            ),
        )

    def release_force(self) -> Optional[float]:
        return self.values["release.design_force_N"]


def _build(section: str, make):
    try:
        return make()
    except DomainError as exc:
        raise ConfigError(str(exc), section) from exc


def parse_config(text: str, source: str = "<string>") -> DesignConfig:
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}", source)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError(f"unknown key (line {lineno})", key)
        if key in raw:
            raise ConfigError(f"duplicate key (lines {raw[key][1]} and {lineno})", key)
        raw[key] = (value, lineno)

    values: dict[str, Any] = {}
    missing = []
    for key, (parser, default) in SCHEMA.items():
        if key not in raw:
            if default is REQUIRED:
                missing.append(key)
            values[key] = default
            continue
        text_value, lineno = raw[key]
        try:
            values[key] = parser(text_value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}", key) from exc
    if missing:
        raise ConfigError("missing required field" + ("s " if len(missing) > 1 else " ") + ", ".join(missing),
                          missing[0])
    return DesignConfig(values, source)


def load_config(path: Optional[str | Path] = None) -> DesignConfig:
    """Read a config file, or the bundled reference design when ``path`` is None."""
    if path is None:
        return parse_config(paper_config_text(), "paper.cfg")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    return parse_config(text, str(path))


def paper_config_text() -> str:
    return resources.files("gripperopt").joinpath("data/paper.cfg").read_text(encoding="utf-8")
