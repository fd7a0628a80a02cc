"""
The parchsh command-line front end:  strategy generation, game values, referee simulation,
certification, parameter sweeps, and question-set emission.
"""
from .config import ExperimentConfig, build_config
from .commands import EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_VALIDATION, SWEEP_COLUMNS
from .main import define_opts, main
