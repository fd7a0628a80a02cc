"""
assembly and validation of an experiment's configuration from the packaged defaults, an
optional configuration file, the environment, and the command line.

Precedence, highest first:  command-line flags, the ``--config`` file, the ``SEED`` environment
variable (seed only), the packaged defaults.
"""
import os, math
from dataclasses import dataclass, field
from typing import List, Mapping, Optional

from ..base.config import (ConfigurationException, default_config, merge_config,
                           resolve_configuration, hget_jp)
from ..strategy import NoiseSpec, NOISE_MODELS, StrategyError

__all__ = [ 'COMMANDS', 'FORMATS', 'COVERAGES', 'ExperimentConfig', 'build_config' ]

COMMANDS = ("value", "simulate", "certify", "sweep", "logset", "strategy")
FORMATS = ("csv", "text")
COVERAGES = ("exhaustive", "sampled")
DEF_ROUNDS = 100000

@dataclass
class ExperimentConfig:
    """
    the full description of one command-line run
    """
    command: str
    n: int = 2
    noise: str = "none"
    noise_param: float = 0.0
    strategy_file: Optional[str] = None
    rounds: int = DEF_ROUNDS
    seed: Optional[int] = None
    coverage: Optional[str] = None
    samples: Optional[int] = None
    out: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    ns: List[int] = field(default_factory=list)
    etas: List[float] = field(default_factory=list)
    settings: Mapping = field(default_factory=dict)

    def noise_spec(self, param: float=None) -> NoiseSpec:
        """
        return the NoiseSpec for this run (or for the given parameter value)
        :raises ConfigurationException:  if the model/parameter combination is illegal
        """
        try:
            return NoiseSpec(self.noise, self.noise_param if param is None else param)
        except StrategyError as ex:
            raise ConfigurationException(str(ex), ex)

    def validate(self):
        """
        check the configuration for consistency
        :raises ConfigurationException:  describing the first problem found
        """
        if self.command not in COMMANDS:
            raise ConfigurationException("unrecognized command: " + str(self.command))
        if self.format not in FORMATS:
            raise ConfigurationException("unrecognized output format: " + str(self.format))
        if self.coverage is not None and self.coverage not in COVERAGES:
            raise ConfigurationException("unrecognized coverage mode: " + str(self.coverage))
        if self.samples is not None and self.samples < 1:
            raise ConfigurationException("--samples must be positive")
        if self.workers < 1:
            raise ConfigurationException("--workers must be positive")
        if self.noise not in NOISE_MODELS:
            raise ConfigurationException("unrecognized noise model: " + str(self.noise))
        if not self.strategy_file:
            _check_n(self.n)
        if self.strategy_file and self.command in ("sweep", "logset", "strategy"):
            raise ConfigurationException("--strategy is not used by the %s command" % self.command)

        max_n = hget_jp(self.settings, "certify.max_n", 8)
        exact_max_n = hget_jp(self.settings, "game.exhaustive_max_n", 12)
        if self.command == "value" and not self.strategy_file and self.n > exact_max_n:
            raise ConfigurationException("value supports n <= %d" % exact_max_n)
        if self.command == "simulate":
            if self.rounds < 1:
                raise ConfigurationException("--rounds must be at least 1")
            if self.seed is None:
                raise ConfigurationException("simulate needs a seed (--seed or SEED)")
        if self.command == "certify" and not self.strategy_file and self.n > max_n:
            raise ConfigurationException("certify supports n <= %d" % max_n)
        if self.command == "sweep":
            for n in (self.ns or [self.n]):
                _check_n(n)
                if n > max_n:
                    raise ConfigurationException("sweep supports n <= %d" % max_n)
            for eta in self.etas:
                if not math.isfinite(eta):
                    raise ConfigurationException("noise parameters must be finite")
                if self.noise != "none":
                    self.noise_spec(eta)
        elif self.command in ("value", "simulate", "certify", "strategy") and \
             not self.strategy_file:
            self.noise_spec()

def _check_n(n):
    if not isinstance(n, int) or n < 2 or n % 2:
        raise ConfigurationException("n must be an even integer >= 2: %s" % str(n))

def _seed_from_env():
    val = os.environ.get("SEED")
    if val is None or val == "":
        return None
    try:
        return int(val)
    except ValueError as ex:
        raise ConfigurationException("SEED environment variable is not an integer: " + val, ex)

def build_config(opts) -> ExperimentConfig:
    """
    build the configuration for a run from parsed command-line options
    :raises ConfigurationException:  if the configuration file cannot be read or the result
                                     is inconsistent
    """
    settings = default_config()
    if getattr(opts, 'config', None):
        settings = merge_config(resolve_configuration(opts.config), settings)

    cfg = ExperimentConfig(opts.command)
    exp = settings.get('experiment', {})
    for name in "n noise noise_param rounds seed coverage samples format workers ns etas".split():
        if name in exp:
            setattr(cfg, name, exp[name])
    if 'workers' in settings and 'workers' not in exp:
        cfg.workers = settings['workers']
    if cfg.samples is None:
        cfg.samples = hget_jp(settings, "verify.samples", None)

    env_seed = _seed_from_env()
    if env_seed is not None and 'seed' not in exp:
        cfg.seed = env_seed

    for name, attr in (("n", "n"), ("noise", "noise"), ("noise_param", "noise_param"),
                       ("strategy", "strategy_file"), ("rounds", "rounds"), ("seed", "seed"),
                       ("coverage", "coverage"), ("samples", "samples"), ("out", "out"),
                       ("format", "format"), ("workers", "workers"), ("ns", "ns"),
                       ("etas", "etas")):
        val = getattr(opts, name, None)
        if val is not None:
            setattr(cfg, attr, val)

    if getattr(opts, 'logfile', None):
        settings['logfile'] = opts.logfile
    if getattr(opts, 'verbose', False):
        settings['loglevel'] = "DEBUG"
        settings['stderrlevel'] = "DEBUG"
    if getattr(opts, 'quiet', False):
        settings['stderrlevel'] = "CRITICAL"
    settings['workers'] = cfg.workers

    cfg.settings = settings
    cfg.validate()
    return cfg
