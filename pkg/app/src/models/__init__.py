from .base import Base
from .signal import SignalKind, SignalModel
from .ensemble import EnsembleKind, EnsembleSpec
from .scenario import Distortion, Scenario, ScenarioSnapshot, diversity_count, round_half_up, sparsity_count
from .bound import UNBOUNDED, BoundResult, BoundUnit, CapacityBound, SensorRequirement
from .simulation_run import SimulationRun
