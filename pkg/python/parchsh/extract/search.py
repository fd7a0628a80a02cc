"""
the question searches that turn a good average game value into good individual questions.

  * pigeonhole:  some Bob question q_b has an average g(q_b) at least the game value; after
    relabeling it to 0…0, some Alice question is at least as good against it, and is relabeled
    to 0…0 in turn (:py:func:`canonicalize`).
  * per subtest:  once the canonical pair averages 2√2 - ε' over subtests, and no subtest can
    exceed 2√2, every subtest is within (n/2)ε of the optimum.
  * partition:  for k ≠ ℓ, the best Alice question with bits (0, 1) at (k, ℓ) against q_b = 0…0
    (:py:func:`find_pair_question`).
  * few questions:  a set of ⌈log₂(n/2+1)⌉ questions separating every pair of subtests
    (:py:func:`log_question_set`) can replace the full pair search.

Guarantees are checked after the fact; shortfalls are recorded as violations rather than
raised.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..strategy import Strategy, Party, BitString, as_bitstring
from ..game import TSIRELSON, subtest_table, exact_value, question_averages
from .exceptions import ExtractionError
from .relabel import RelabelStep, relabel_by

__all__ = [
    'DEF_TIE_TOL', 'DEF_GUARANTEE_TOL', 'QuestionSearchResult', 'find_best_qb', 'find_best_qa',
    'canonicalize', 'find_pair_question', 'log_question_set', 'search_questions',
    'few_question_delta'
]

log = logging.getLogger(__name__)

DEF_TIE_TOL = 1e-12
DEF_GUARANTEE_TOL = 1e-9

def _argmax(values: np.ndarray, tie_tol: float) -> int:
    # ties resolve to the smallest index, i.e. the lexicographically smallest question
    return int(np.flatnonzero(values >= values.max() - tie_tol)[0])

def find_best_qb(strategy: Strategy, tie_tol: float=DEF_TIE_TOL) -> BitString:
    """
    return the Bob question maximizing g(q_b) = (1/(n 2^{n/2-1})) Σ_{q_a,k} f(q_a, q_b, k)
    """
    return BitString.from_int(_argmax(question_averages(strategy), tie_tol), strategy.half)

def _alice_averages(table: np.ndarray) -> np.ndarray:
    # (2/n) Σ_k f(q_a, 0…0, k) for every q_a
    return table[:, :, 0].mean(axis=0)

def find_best_qa(strategy: Strategy, tie_tol: float=DEF_TIE_TOL) -> BitString:
    """
    return the Alice question maximizing the subtest average (2/n) Σ_k f(q_a, 0…0, k)
    """
    return BitString.from_int(_argmax(_alice_averages(subtest_table(strategy)), tie_tol),
                              strategy.half)

def canonicalize(strategy: Strategy, tie_tol: float=DEF_TIE_TOL
                 ) -> Tuple[Strategy, List[RelabelStep]]:
    """
    relabel the strategy so that the best Bob question, and then the best Alice question
    against it, both become 0…0.
    :return:  the relabeled strategy and the transcript of relabel steps applied
    """
    q_b = find_best_qb(strategy, tie_tol)
    strategy, transcript = relabel_by(strategy, Party.B, q_b)
    q_a = find_best_qa(strategy, tie_tol)
    strategy, steps = relabel_by(strategy, Party.A, q_a)
    transcript.extend(steps)
    log.debug("canonicalized with q_b*=%s, q_a*=%s", str(q_b), str(q_a))
    return strategy, transcript

def _check_pair(h: int, k: int, l: int):
    if not (0 <= k < h and 0 <= l < h):
        raise ExtractionError("subtest indices (%d, %d) out of range 0..%d" % (k, l, h - 1))
    if k == l:
        raise ExtractionError("pair question needs two distinct subtests (got %d twice)" % k)

def _pair_question(table: np.ndarray, h: int, k: int, l: int, tie_tol: float) -> BitString:
    ints = np.arange(2**h)
    admissible = ints[(((ints >> (h-1-k)) & 1) == 0) & (((ints >> (h-1-l)) & 1) == 1)]
    scores = np.minimum(table[k, admissible, 0], table[l, admissible, 0])
    return BitString.from_int(int(admissible[_argmax(scores, tie_tol)]), h)

def find_pair_question(strategy: Strategy, k: int, l: int, tie_tol: float=DEF_TIE_TOL,
                       table: np.ndarray=None) -> BitString:
    """
    return the Alice question with bits (0, 1) at positions (k, ℓ) that maximizes
    min(f(q_a, 0…0, k), f(q_a, 0…0, ℓ)).  Since f is unchanged by complementing q_a, the
    questions with bits (1, 0) need not be searched.
    :param table:  the strategy's subtest table, if already computed
    """
    _check_pair(strategy.half, k, l)
    if table is None:
        table = subtest_table(strategy)
    return _pair_question(table, strategy.half, k, l, tie_tol)

def log_question_set(n: int) -> List[BitString]:
    """
    return questions q^(j), j = 0..⌈log₂(n/2+1)⌉-1, with bit k of q^(j) set iff bit j of k+1
    is set.  Any two subtests differ in some q^(j).  A single subtest needs no questions.
    """
    if n < 2 or n % 2:
        raise ExtractionError("n must be an even integer >= 2: %s" % str(n))
    h = n // 2
    if h < 2:
        return []
    return [BitString(tuple(((k + 1) >> j) & 1 for k in range(h)))
            for j in range(h.bit_length())]

@dataclass
class QuestionSearchResult:
    """
    the outcome of the full question search on a strategy
    :ivar value:              the game value of the (original and canonical) strategy
    :ivar q_b_star:           the pigeonhole Bob question, before relabeling
    :ivar q_a_star:           the best Alice question against it, after Bob's relabeling
    :ivar g_star:             g(q_b_star)
    :ivar per_subtest_delta:  max(0, 2√2 - f(0…0, 0…0, k)) on the canonical strategy
    :ivar pair_questions:     (k, ℓ) -> the best Alice question with bits (0, 1) at (k, ℓ)
    :ivar pair_values:        (k, ℓ) -> (f(q, 0…0, k), f(q, 0…0, ℓ)) for that question
    :ivar violations:         descriptions of any guarantee found not to hold
    """
    value: float
    q_b_star: BitString
    q_a_star: BitString
    g_star: float
    per_subtest_delta: List[float]
    pair_questions: Dict[Tuple[int, int], BitString] = field(default_factory=dict)
    pair_values: Dict[Tuple[int, int], Tuple[float, float]] = field(default_factory=dict)
    transcript: List[RelabelStep] = field(default_factory=list)
    canonical: Strategy = None
    violations: List[str] = field(default_factory=list)

    @property
    def epsilon(self) -> float:
        return max(0.0, TSIRELSON - self.value)

    @property
    def max_pair_deficit(self) -> float:
        if not self.pair_values:
            return 0.0
        return max(0.0, max(TSIRELSON - min(v) for v in self.pair_values.values()))

def _question_from_steps(transcript: Sequence[RelabelStep], party: Party, h: int) -> BitString:
    bits = [0] * h
    for step in transcript:
        if Party(step.party) == party:
            bits[step.bit] = 1
    return BitString(bits)

def search_questions(strategy: Strategy, tie_tol: float=DEF_TIE_TOL,
                     guarantee_tol: float=DEF_GUARANTEE_TOL) -> QuestionSearchResult:
    """
    run the pigeonhole, per-subtest and partition searches and check their guarantees:
    g(q_b*) ≥ value, δ_k ≤ (n/2)ε for every k, and both f values of every pair question
    ≥ 2√2 - nε.
    """
    n, h = strategy.n, strategy.half
    value = exact_value(strategy).value
    eps = max(0.0, TSIRELSON - value)

    gs = question_averages(strategy)
    canon, transcript = canonicalize(strategy, tie_tol)
    q_b = _question_from_steps(transcript, Party.B, h)
    q_a = _question_from_steps(transcript, Party.A, h)

    table = subtest_table(canon)
    deltas = [max(0.0, TSIRELSON - float(table[k, 0, 0])) for k in range(h)]
    out = QuestionSearchResult(value, q_b, q_a, float(gs[q_b.to_int()]), deltas,
                               transcript=transcript, canonical=canon)

    if out.g_star < value - guarantee_tol:
        out.violations.append("pigeonhole: g(q_b*) = %.12g < value %.12g" % (out.g_star, value))
    for k, d in enumerate(deltas):
        if d > h * eps + guarantee_tol:
            out.violations.append("subtest %d: delta %.12g exceeds (n/2)eps = %.12g" %
                                  (k, d, h * eps))

    floor = TSIRELSON - n * eps
    for k in range(h):
        for l in range(k+1, h):
            q = _pair_question(table, h, k, l, tie_tol)
            vals = (float(table[k, q.to_int(), 0]), float(table[l, q.to_int(), 0]))
            out.pair_questions[(k, l)] = q
            out.pair_values[(k, l)] = vals
            if min(vals) < floor - guarantee_tol:
                out.violations.append("pair (%d, %d): f = %.12g below 2sqrt2 - n*eps = %.12g" %
                                      (k, l, min(vals), floor))

    for v in out.violations:
        log.warning("question search guarantee violated: %s", v)
    return out

def few_question_delta(strategy: Strategy, questions: Sequence=None,
                       tie_tol: float=DEF_TIE_TOL) -> Tuple[float, dict]:
    """
    return the δ for which the canonicalized strategy passes the few-question test:
    f(0…0, 0…0, k) ≥ 2√2 - δ for every k, and for every k ≠ ℓ some question from
    ``questions`` (or its complement) with bits (0, 1) at (k, ℓ) has both f values
    ≥ 2√2 - δ against q_b = 0…0.
    :param questions:  the Alice questions allowed; defaults to log_question_set(n)
    :return:  δ and a dictionary detailing the per-subtest and per-pair deficits
    :raises ExtractionError:  if some pair of subtests is not separated by the questions
    """
    h = strategy.half
    if questions is None:
        questions = log_question_set(strategy.n)
    questions = [as_bitstring(q) for q in questions]

    canon, transcript = canonicalize(strategy, tie_tol)
    table = subtest_table(canon)

    details = {
        "subtests": [max(0.0, TSIRELSON - float(table[k, 0, 0])) for k in range(h)],
        "pairs": {},
        "questions": [str(q) for q in questions],
        "transcript": [s.to_dict() for s in transcript]
    }
    for k in range(h):
        for l in range(k+1, h):
            best = None
            for q in questions:
                if q[k] == q[l]:
                    continue
                r = q if q[k] == 0 else q.complement()
                deficit = TSIRELSON - min(table[k, r.to_int(), 0], table[l, r.to_int(), 0])
                if best is None or deficit < best[1] - tie_tol:
                    best = (r, float(deficit))
            if best is None:
                raise ExtractionError("subtests %d and %d are not separated by any question" %
                                      (k, l))
            details["pairs"][(k, l)] = (str(best[0]), max(0.0, best[1]))

    delta = max(details["subtests"] + [d for q, d in details["pairs"].values()])
    return max(0.0, delta), details
