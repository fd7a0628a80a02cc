"""
the scoring rule of the parallel CHSH game and the exact evaluation of a strategy's value.

In each round the referee sends q_a (the first n/2 bits of a uniform q) to Alice and q_b to
Bob, picks a subtest k, and scores +4 if q_k·q_{k+n/2} = x_k ⊕ y_k and -4 otherwise.  The
expected score is the average over questions and subtests of the CHSH functional
.. code-block::

   f(q_a, q_b, k) = Σ_{r_a ∈ {q_a, ~q_a}} Σ_{r_b ∈ {q_b, ~q_b}} (-1)^{(r_a)_k (r_b)_k} <M^{r_a}_k ⊗ N^{r_b}_k>

which counts each correlator twice (once through q and once through its complement).
"""
import logging
from collections import namedtuple
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .. import linalg
from ..strategy import Strategy, Party, as_bitstring, all_bitstrings, StrategyError
from .exceptions import GameError

__all__ = [
    'TSIRELSON', 'CLASSICAL_MAX', 'DEF_EXHAUSTIVE_MAX_N', 'GameValue', 'Correlator',
    'win', 'win_probability', 'chsh_correlators', 'subtest_value', 'correlation_table',
    'subtest_table', 'exact_value', 'question_average', 'question_averages'
]

log = logging.getLogger(__name__)

TSIRELSON = float(2 * np.sqrt(2.0))
CLASSICAL_MAX = 2.0
DEF_EXHAUSTIVE_MAX_N = 12
_VALUE_SLACK = 1e-9

@dataclass(frozen=True)
class GameValue:
    """
    a game value, either computed exactly or estimated from simulated rounds
    :ivar value:    the (estimated) expected score, in [-4, 4]
    :ivar mode:     "exact" or "sampled"
    :ivar rounds:   the number of simulated rounds (0 for exact values)
    :ivar stderr:   the standard error of a sampled estimate (0 for exact values)
    :ivar seed:     the seed the simulation was started from, if known
    :ivar workers:  the number of independent sample streams the rounds were split over
    """
    value: float
    mode: str = "exact"
    rounds: int = 0
    stderr: float = 0.0
    seed: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        if self.mode not in ("exact", "sampled"):
            raise GameError("GameValue: unrecognized mode: " + str(self.mode))
        if abs(self.value) > 4 + _VALUE_SLACK:
            raise GameError("GameValue: value out of range: %g" % self.value)
        if self.stderr < 0:
            raise GameError("GameValue: negative stderr")
        if self.mode == "exact" and self.stderr != 0:
            raise GameError("GameValue: exact values carry no stderr")

    @property
    def win_probability(self) -> float:
        return win_probability(self.value)

    @property
    def epsilon(self) -> float:
        """
        the shortfall from the quantum optimum, max(0, 2√2 - value)
        """
        return max(0.0, TSIRELSON - self.value)

    def to_dict(self) -> dict:
        out = { "value": self.value, "mode": self.mode, "win_probability": self.win_probability }
        if self.mode == "sampled":
            out.update({ "rounds": self.rounds, "stderr": self.stderr, "seed": self.seed,
                         "workers": self.workers })
        return out

def win_probability(value: float) -> float:
    """
    convert an expected ±4 score into a win probability:  value = 4(2p - 1)
    """
    return (value / 4.0 + 1.0) / 2.0

def _check_subtest(n: int, k: int):
    if not isinstance(k, (int, np.integer)) or not 0 <= k < n // 2:
        raise GameError("subtest index %s out of range 0..%d" % (str(k), n // 2 - 1))

def win(q, k: int, x_k: int, y_k: int) -> bool:
    """
    return True if the answer bits x_k, y_k win subtest k for the full question q
    :param q:  the referee's n-bit question (Alice's half followed by Bob's half)
    :param k:  the 0-based subtest index
    """
    q = as_bitstring(q)
    if len(q) % 2 or len(q) < 2:
        raise GameError("question must have even, positive length: " + str(q))
    _check_subtest(len(q), k)
    h = len(q) // 2
    return (q[k] & q[k + h]) == ((int(x_k) ^ int(y_k)) & 1)

Correlator = namedtuple("Correlator", "r_a r_b sign expectation")

def chsh_correlators(strategy: Strategy, q_a, q_b, k: int) -> List[Correlator]:
    """
    return the four correlators entering f(q_a, q_b, k), in the order (q_a, q_b),
    (~q_a, q_b), (q_a, ~q_b), (~q_a, ~q_b)
    """
    _check_subtest(strategy.n, k)
    q_a, q_b = as_bitstring(q_a), as_bitstring(q_b)
    out = []
    try:
        for r_b in (q_b, q_b.complement()):
            for r_a in (q_a, q_a.complement()):
                sign = -1 if r_a[k] & r_b[k] else 1
                exp = linalg.expectation(strategy.psi,
                                         strategy.observable(Party.A, r_a, k),
                                         strategy.observable(Party.B, r_b, k))
                out.append(Correlator(r_a, r_b, sign, exp))
    except StrategyError as ex:
        raise GameError("unable to evaluate correlators: " + str(ex), ex)
    return out

def subtest_value(strategy: Strategy, q_a, q_b, k: int) -> float:
    """
    return the CHSH value f(q_a, q_b, k) of subtest k for the question pair (q_a, q_b)
    """
    return float(sum(c.sign * c.expectation for c in chsh_correlators(strategy, q_a, q_b, k)))

def _stack(strategy: Strategy, party: Party, k: int) -> np.ndarray:
    table = strategy.table(party)
    try:
        return np.stack([table[q][k] for q in all_bitstrings(strategy.half)])
    except KeyError as ex:
        raise GameError("strategy lacks %s observables for question %s" %
                        (party.name, str(ex.args[0])), ex)

def correlation_table(strategy: Strategy) -> np.ndarray:
    """
    return the array C[k, q_a, q_b] = <ψ'| M^{q_a}_k ⊗ N^{q_b}_k |ψ'> with questions indexed
    by their integer values
    """
    psi = strategy.psi
    out = np.empty((strategy.half, 2**strategy.half, 2**strategy.half))
    for k in range(strategy.half):
        # <ψ|M⊗N|ψ> = Σ_ij (ψ† M ψ)_ij N_ij
        reduced = np.einsum('ai,xab,bj->xij', psi.conj(), _stack(strategy, Party.A, k), psi,
                            optimize=True)
        out[k] = np.real(np.einsum('xij,yij->xy', reduced, _stack(strategy, Party.B, k)))
    return out

def subtest_table(strategy: Strategy) -> np.ndarray:
    """
    return the array F[k, q_a, q_b] = f(q_a, q_b, k) over all questions, indexed by the
    questions' integer values
    """
    h = strategy.half
    corr = correlation_table(strategy)
    ints = np.arange(2**h)
    out = np.empty_like(corr)
    for k in range(h):
        bits = (ints >> (h - 1 - k)) & 1
        signed = np.where(np.outer(bits, bits) == 1, -1.0, 1.0) * corr[k]
        # reversing an axis maps each question to its complement
        out[k] = signed + signed[::-1, :] + signed[:, ::-1] + signed[::-1, ::-1]
    return out

def _check_exhaustive(strategy: Strategy, max_n: int):
    if strategy.n > max_n:
        raise GameError("n = %d is too large for an exhaustive sum (limit %d)" %
                        (strategy.n, max_n))

def exact_value(strategy: Strategy, max_n: int=DEF_EXHAUSTIVE_MAX_N) -> GameValue:
    """
    return the exact expected score, (1/(n 2^{n-1})) Σ_{q_a, q_b, k} f(q_a, q_b, k)
    :raises GameError:  if n exceeds ``max_n`` or the strategy is missing questions
    """
    _check_exhaustive(strategy, max_n)
    table = subtest_table(strategy)
    value = float(table.sum()) / (strategy.n * 2**(strategy.n - 1))
    log.debug("exact value for n=%d: %.12f", strategy.n, value)
    return GameValue(value)

def question_averages(strategy: Strategy, max_n: int=DEF_EXHAUSTIVE_MAX_N) -> np.ndarray:
    """
    return g(q_b) for every Bob question, indexed by the question's integer value
    """
    _check_exhaustive(strategy, max_n)
    table = subtest_table(strategy)
    return table.sum(axis=(0, 1)) / (strategy.n * 2**(strategy.half - 1))

def question_average(strategy: Strategy, q_b) -> float:
    """
    return the average CHSH value seen by Bob's question q_b,
    g(q_b) = (1/(n 2^{n/2-1})) Σ_{q_a, k} f(q_a, q_b, k)
    """
    q_b = as_bitstring(q_b)
    if len(q_b) != strategy.half:
        raise GameError("question %s does not have length %d" % (str(q_b), strategy.half))
    return float(question_averages(strategy)[q_b.to_int()])
