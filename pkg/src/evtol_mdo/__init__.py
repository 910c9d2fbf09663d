"""Conceptual sizing, operations and multi-objective design of a
lift-plus-cruise eVTOL air taxi."""

from .config import ConfigError, ScenarioConfig, fingerprint, load_scenario, dump_scenario
from .design import BoundsError, DesignVector
from .optimize import OptimizationFailure, OptimizationProblem, optimize
from .pipeline import OBJECTIVES, EvaluationError, FullReport, evaluate

__all__ = [
    "ConfigError", "ScenarioConfig", "fingerprint", "load_scenario", "dump_scenario",
    "BoundsError", "DesignVector", "OptimizationFailure", "OptimizationProblem", "optimize",
    "OBJECTIVES", "EvaluationError", "FullReport", "evaluate",
]

__version__ = "0.1.0"
