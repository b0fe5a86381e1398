"""Design optimisation for a passive-magnet, scotch-yoke release aerial gripper."""

from .errors import (
    ConfigError,
    DomainError,
    GripperError,
    InfeasibleError,
    NumericalError,
    StageError,
    UnsupportedProblemError,
)
from .magnetics import MagnetArray, MagnetSpec, PhysicalConstants
from .mechanism import ForceSolution, KinematicState, YokeGeometry
from .sizing import ActuatorSpec, DesignInputs, GripperDimensions, MaterialSpec, full_design_report

__version__ = "0.1.0"
