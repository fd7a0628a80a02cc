"""
the end-to-end self-test:  from a strategy's game value to certified bounds on the condition
norms, the measured norms themselves, and the extraction distances.

The pipeline runs
  1. the exact game value and ε = max(0, 2√2 - value);
  2. the question search (canonicalization, per-subtest deficits, pair questions);
  3. δ_cert = nε and the certified bounds eps1 = 32(δ√2)^{1/4}, eps2 = 4(δ√2)^{1/4},
     eps3 = 4(δ√2)^{1/2};
  4. X'/Z' extraction on the canonical strategy, the measured condition norms, and the
     extraction distances under both junk policies.
A bound passes when the measured norm does not exceed the certified one by more than the
guarantee tolerance.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..base.config import hget_jp
from ..strategy import Strategy, BitString, StrategyError, all_bitstrings, validate
from ..game import TSIRELSON, exact_value
from ..extract import (ExtractedOperators, QuestionSearchResult, build_xz, search_questions,
                       few_question_delta, rigidity_pair_norms)
from .conditions import (ConditionNorms, measure_epsilons, measure_general_conditions,
                         DEF_EXHAUSTIVE_MAX_N, DEF_SAMPLES, DEF_SAMPLE_SEED)
from .isometry import DistanceEvaluator
from .exceptions import VerificationError

__all__ = [ 'DEF_MAX_N', 'SelfTestReport', 'certified_epsilons', 'certify', 'scaling_ratios',
            'distance_pairs' ]

log = logging.getLogger(__name__)

DEF_MAX_N = 8
DEF_DISTANCE_EXHAUSTIVE_MAX_N = 4
DEF_DISTANCE_SAMPLES = 256
DEF_GUARANTEE_TOL = 1e-9

def certified_epsilons(delta: float) -> Dict[str, float]:
    """
    return the certified bounds on eps1, eps2 and eps3 implied by a deficit δ
    """
    d = max(0.0, float(delta)) * np.sqrt(2.0)
    return { "eps1": float(32 * d**0.25), "eps2": float(4 * d**0.25), "eps3": float(4 * d**0.5) }

@dataclass
class SelfTestReport:
    """
    the results of :py:func:`certify`
    """
    n: int
    value: float
    epsilon: float
    delta_cert: float
    delta_per_subtest: List[float]
    certified: Dict[str, float]
    measured: ConditionNorms
    distances: Dict[Tuple[str, str], Dict[str, float]] = field(default_factory=dict)
    junk_norm: float = 0.0
    few_question_delta: Optional[float] = None
    search: Optional[QuestionSearchResult] = None
    pair_norms: List[dict] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def delta_in_range(self) -> bool:
        """
        whether δ_cert lies where the certified bounds are proven, 0 ≤ δ ≤ 1
        """
        return bool(0.0 <= self.delta_cert <= 1.0)

    @property
    def dist_fixed_max(self) -> float:
        return max([d["fixed"] for d in self.distances.values()], default=0.0)

    @property
    def dist_opt_max(self) -> float:
        return max([d["optimal"] for d in self.distances.values()], default=0.0)

    @property
    def passed(self) -> bool:
        return all(self.flags.values()) and not self.violations

def distance_pairs(n: int, exhaustive_max_n: int=DEF_DISTANCE_EXHAUSTIVE_MAX_N,
                   samples: int=DEF_DISTANCE_SAMPLES, seed: int=DEF_SAMPLE_SEED
                   ) -> List[Tuple[BitString, BitString]]:
    """
    return the (p, q) pairs at which extraction distances are evaluated:  all of them when
    n ≤ ``exhaustive_max_n``, otherwise (0…0, 0…0) followed by ``samples`` seeded uniform draws
    """
    if n <= exhaustive_max_n:
        return [(p, q) for p in all_bitstrings(n) for q in all_bitstrings(n)]
    rng = np.random.default_rng(seed)
    drawn = rng.integers(0, 2**n, size=(samples, 2))
    out = [(BitString.zeros(n), BitString.zeros(n))]
    out.extend((BitString.from_int(int(p), n), BitString.from_int(int(q), n)) for p, q in drawn)
    return out

def _cfg(config, path, default):
    return hget_jp(config, path, default) if config else default

def certify(strategy: Strategy, config: Mapping=None, coverage: str=None, samples: int=None,
            workers: int=None) -> SelfTestReport:
    """
    run the full self-test on a strategy and return its report.  Guarantee shortfalls and
    failed bounds are recorded in the report, not raised.
    :param config:    a configuration (as from :py:func:`parchsh.base.config.default_config`)
                      supplying tolerances, coverage thresholds and sample sizes
    :param coverage:  "exhaustive" or "sampled" for the general conditions; by default chosen
                      from n
    :param samples:   the number of sampled (s, t) pairs when coverage is sampled
    :param workers:   the number of threads used for the distance evaluations
    :raises StrategyError:       if the strategy fails validation
    :raises VerificationError:   if n exceeds the configured pipeline limit
    """
    max_n = _cfg(config, "certify.max_n", DEF_MAX_N)
    if strategy.n > max_n:
        raise VerificationError("certify: n = %d exceeds the pipeline limit %d" %
                                (strategy.n, max_n))
    check_tol = _cfg(config, "tolerances.check", 1e-8)
    guarantee_tol = _cfg(config, "tolerances.guarantee", DEF_GUARANTEE_TOL)
    tie_tol = _cfg(config, "tolerances.tie", 1e-12)
    zero_tol = _cfg(config, "linalg.zero_tol", 1e-10)
    if samples is None:
        samples = _cfg(config, "verify.samples", DEF_SAMPLES)
    seed = _cfg(config, "verify.sample_seed", DEF_SAMPLE_SEED)
    if workers is None:
        workers = _cfg(config, "workers", 1)

    diag = validate(strategy, check_tol)
    if not diag.passed:
        raise StrategyError("strategy fails validation: " + ", ".join(diag.failures()),
                            diagnostics=diag)

    n, h = strategy.n, strategy.half
    value = exact_value(strategy).value
    eps = max(0.0, TSIRELSON - value)
    log.info("certify n=%d: value %.12f, epsilon %.3g", n, value, eps)

    search = search_questions(strategy, tie_tol, guarantee_tol)
    canon = search.canonical
    delta_cert = n * eps
    certified = certified_epsilons(delta_cert)

    ops = build_xz(canon, zero_tol)
    measured = measure_epsilons(canon, ops)
    measure_general_conditions(canon, ops, coverage, measured, samples, seed,
                               _cfg(config, "verify.exhaustive_max_n", DEF_EXHAUSTIVE_MAX_N))

    report = SelfTestReport(n, value, eps, delta_cert, list(search.per_subtest_delta),
                            certified, measured, search=search,
                            violations=list(search.violations))
    for name in ops.singular:
        report.violations.append("extraction: %s built from a singular N0 +/- N1; its sign "
                                 "convention depends on the labeling" % name)
        log.warning("extraction: %s built from a singular Bob combination", name)
    report.pair_norms = [rigidity_pair_norms(canon, ops, k) for k in range(h)]
    for name in ("eps1", "eps2", "eps3"):
        ok = getattr(measured, name) <= certified[name] + guarantee_tol
        report.flags[name] = bool(ok)
        if not report.flags[name]:
            log.warning("measured %s = %.6g exceeds certified %.6g", name,
                        getattr(measured, name), certified[name])

    if h >= 2:
        report.few_question_delta = few_question_delta(strategy, tie_tol=tie_tol)[0]

    evaluator = DistanceEvaluator(canon, ops)
    report.junk_norm = evaluator.junk_norm
    pairs = distance_pairs(n, _cfg(config, "verify.distance_exhaustive_max_n",
                                   DEF_DISTANCE_EXHAUSTIVE_MAX_N),
                           _cfg(config, "verify.distance_samples", DEF_DISTANCE_SAMPLES), seed)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            dists = list(pool.map(lambda pq: evaluator.distances(*pq), pairs))
    else:
        dists = [evaluator.distances(p, q) for p, q in pairs]
    for (p, q), d in zip(pairs, dists):
        report.distances[(str(p), str(q))] = d

    log.info("certify n=%d: eps (%.3g, %.3g, %.3g), max distance %.3g, %s", n,
             measured.eps1, measured.eps2, measured.eps3, report.dist_fixed_max,
             "pass" if report.passed else "FAIL")
    return report

def scaling_ratios(report: SelfTestReport) -> Dict[str, Optional[float]]:
    """
    return the measured quantities divided by the asymptotic forms they are expected to follow
    (constants unspecified, so these are for inspection only):
      ratio_theorem  dist_fixed_max / (n^{9/8} ε^{1/8})
      ratio_general  general_anticommute_max / (n² max(eps1, eps2, eps3))
      ratio_sqrt     dist_fixed_max / (n √ε)
    A ratio is None where its denominator vanishes.
    """
    n, eps = report.n, report.epsilon
    m = report.measured

    def _div(num, den):
        if num is None or den <= 0:
            return None
        return float(num / den)

    return {
        "ratio_theorem": _div(report.dist_fixed_max, n**1.125 * eps**0.125),
        "ratio_general": _div(m.general_anticommute_max, n**2 * m.eps),
        "ratio_sqrt": _div(report.dist_fixed_max, n * np.sqrt(eps))
    }
