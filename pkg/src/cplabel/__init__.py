"""Core-periphery detection by greedy label switching."""

__version__ = "0.1.0"

from .errors import ConfigError, DegenerateGraphError, OracleCostError, ParseError
from .graph import Graph, GeneratorSpec, generate, load_edge_list, read_canonical, to_canonical
from .metric import MetricState, delta_bar, evaluate_full
from .optimizer import DetectionResult, OptimizerConfig, assert_local_optimum, detect
from .oracle import brute_force, ratio_experiment, submodularity_counterexample
from .bench import ExperimentConfig, accuracy, profile_network, run_sweep
