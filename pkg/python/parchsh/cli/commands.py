"""
the implementations of the parchsh subcommands.  Each takes a validated ExperimentConfig and an
output stream and returns the process exit code.
"""
import csv, logging
from typing import List, TextIO

from ..base.config import hget_jp, ConfigurationException
from ..strategy import (Strategy, NoiseSpec, StrategyError, noisy_strategy, load_strategy,
                        dump_strategy, validate)
from ..game import exact_value, referee_simulate
from ..extract import log_question_set
from ..verify import SelfTestReport, certify, scaling_ratios, dump_report
from .config import ExperimentConfig

__all__ = [ 'EXIT_OK', 'EXIT_VIOLATION', 'EXIT_CONFIG', 'EXIT_VALIDATION', 'SWEEP_COLUMNS',
            'cmd_value', 'cmd_simulate', 'cmd_certify', 'cmd_sweep', 'cmd_logset',
            'cmd_strategy', 'report_row' ]

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_VALIDATION = 3

SWEEP_COLUMNS = [ "n", "model", "param", "value", "epsilon", "delta_cert",
                  "eps1_meas", "eps1_cert", "eps2_meas", "eps2_cert", "eps3_meas", "eps3_cert",
                  "dist_fixed_max", "dist_opt_max", "junk_norm", "ratio_theorem" ]

# the settings bounding n for commands that accept a strategy file
_N_LIMITS = { "value": ("game.exhaustive_max_n", 12), "certify": ("certify.max_n", 8) }

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "%.12g" % x
    return str(x)

def get_strategy(cfg: ExperimentConfig) -> Strategy:
    """
    return the strategy a run operates on:  read from ``--strategy`` or generated from the
    noise settings.  A strategy read from a file must pass validation.
    :raises StrategyError:           if the file's strategy fails validation
    :raises ConfigurationException:  if the file's n is beyond what the command supports
    """
    if cfg.strategy_file:
        strat = load_strategy(cfg.strategy_file)
        if cfg.command in _N_LIMITS:
            max_n = hget_jp(cfg.settings, *_N_LIMITS[cfg.command])
            if strat.n > max_n:
                raise ConfigurationException("%s: %s supports n <= %d, got n = %d" %
                                             (cfg.strategy_file, cfg.command, max_n, strat.n))
        diag = validate(strat, hget_jp(cfg.settings, "tolerances.check", 1e-8))
        if not diag.passed:
            raise StrategyError("%s: strategy fails validation: %s" %
                                (cfg.strategy_file, ", ".join(diag.failures())),
                                diagnostics=diag)
        return strat
    return noisy_strategy(cfg.n, cfg.noise_spec())

def cmd_value(cfg: ExperimentConfig, out: TextIO) -> int:
    strat = get_strategy(cfg)
    gv = exact_value(strat, hget_jp(cfg.settings, "game.exhaustive_max_n", 12))
    out.write("%.12f\n" % gv.value)
    return EXIT_OK

def cmd_simulate(cfg: ExperimentConfig, out: TextIO) -> int:
    strat = get_strategy(cfg)
    gv = referee_simulate(strat, cfg.rounds, cfg.seed, cfg.workers)
    if cfg.format == "csv":
        wrtr = csv.writer(out, lineterminator="\n")
        wrtr.writerow(["value", "stderr", "win_rate", "rounds", "seed", "workers"])
        wrtr.writerow([_fmt(gv.value), _fmt(gv.stderr), _fmt(gv.win_probability), gv.rounds,
                       gv.seed, gv.workers])
    else:
        out.write("estimate: %.12f\nstderr:   %.12f\nwin rate: %.12f\n" %
                  (gv.value, gv.stderr, gv.win_probability))
        out.write("(%d rounds, seed %s, %d worker%s)\n" %
                  (gv.rounds, gv.seed, gv.workers, "s" if gv.workers > 1 else ""))
    return EXIT_OK

def report_row(report: SelfTestReport, model: str, param: float) -> List[str]:
    """
    return the sweep CSV fields for one report
    """
    m = report.measured
    c = report.certified
    return [ str(report.n), model, _fmt(float(param)), _fmt(report.value),
             _fmt(report.epsilon), _fmt(report.delta_cert),
             _fmt(m.eps1), _fmt(c["eps1"]), _fmt(m.eps2), _fmt(c["eps2"]),
             _fmt(m.eps3), _fmt(c["eps3"]), _fmt(report.dist_fixed_max),
             _fmt(report.dist_opt_max), _fmt(report.junk_norm),
             _fmt(scaling_ratios(report)["ratio_theorem"]) ]

def _certify(cfg: ExperimentConfig, strat: Strategy) -> SelfTestReport:
    return certify(strat, cfg.settings, cfg.coverage, cfg.samples, cfg.workers)

def cmd_certify(cfg: ExperimentConfig, out: TextIO) -> int:
    strat = get_strategy(cfg)
    report = _certify(cfg, strat)
    if cfg.format == "csv":
        wrtr = csv.writer(out, lineterminator="\n")
        wrtr.writerow(SWEEP_COLUMNS)
        model = "file" if cfg.strategy_file else cfg.noise
        wrtr.writerow(report_row(report, model, 0.0 if cfg.strategy_file else cfg.noise_param))
    else:
        dump_report(report, out)

    for v in report.violations:
        log.warning("violation: %s", v)
    return EXIT_OK if report.passed else EXIT_VIOLATION

def sweep_grid(cfg: ExperimentConfig) -> List[tuple]:
    """
    return the (n, NoiseSpec) grid points of a sweep in output order:  n outermost, then the
    noise parameters.  With the "none" model the parameters are ignored, and each n contributes
    a single point as long as some parameter was given.
    """
    ns = cfg.ns or [cfg.n]
    if cfg.noise == "none":
        return [(n, NoiseSpec()) for n in ns] if cfg.etas else []
    return [(n, cfg.noise_spec(eta)) for n in ns for eta in cfg.etas]

def cmd_sweep(cfg: ExperimentConfig, out: TextIO) -> int:
    grid = sweep_grid(cfg)
    log.info("sweeping %d grid point(s)", len(grid))

    reports = []
    for n, noise in grid:
        reports.append((noise, _certify(cfg, noisy_strategy(n, noise))))

    if cfg.format == "csv":
        wrtr = csv.writer(out, lineterminator="\n")
        wrtr.writerow(SWEEP_COLUMNS)
        for noise, rep in reports:
            wrtr.writerow(report_row(rep, noise.model, noise.param))
    else:
        rows = [SWEEP_COLUMNS] + [report_row(rep, noise.model, noise.param)
                                  for noise, rep in reports]
        widths = [max(len(r[i]) for r in rows) for i in range(len(SWEEP_COLUMNS))]
        for r in rows:
            out.write("  ".join(f.rjust(w) for f, w in zip(r, widths)).rstrip() + "\n")

    return EXIT_OK if all(rep.passed for noise, rep in reports) else EXIT_VIOLATION

def cmd_logset(cfg: ExperimentConfig, out: TextIO) -> int:
    for q in log_question_set(cfg.n):
        out.write(str(q) + "\n")
    return EXIT_OK

def cmd_strategy(cfg: ExperimentConfig, out: TextIO) -> int:
    dump_strategy(noisy_strategy(cfg.n, cfg.noise_spec()), out)
    out.write("\n")
    return EXIT_OK

COMMAND_FUNCS = {
    "value": cmd_value,
    "simulate": cmd_simulate,
    "certify": cmd_certify,
    "sweep": cmd_sweep,
    "logset": cmd_logset,
    "strategy": cmd_strategy
}
