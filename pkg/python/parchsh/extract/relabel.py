"""
value-preserving relabelings of a strategy.

Relabeling Alice's bit k re-keys her observable tables by q_a -> q_a ⊕ 1_k and flips the sign
of Bob's k-th observable on every question with (q_b)_k = 1.  The result satisfies
f'(q_a, q_b, j) = f(q_a ⊕ 1_k, q_b, j) for every subtest j, so the game value is unchanged.
Relabeling Bob's bit is the mirror image.  Both are involutions.
"""
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from ..strategy import Strategy, Party, BitString
from .exceptions import ExtractionError

__all__ = [ 'RelabelStep', 'relabel_alice_bit', 'relabel_bob_bit', 'relabel', 'apply_transcript',
            'relabel_by' ]

@dataclass(frozen=True)
class RelabelStep:
    """
    one entry of a relabel transcript:  the party whose question bit was flipped, and which bit
    """
    party: str
    bit: int

    def to_dict(self) -> dict:
        return { "party": self.party, "bit": self.bit }

def _check_bit(strategy: Strategy, k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k < strategy.half:
        raise ExtractionError("relabel bit %s out of range 0..%d" % (str(k), strategy.half - 1))
    return int(k)

def _rekey(table, k):
    return { q.flip(k): obs for q, obs in table.items() }

def _sign_bit(table, k):
    out = {}
    for q, obs in table.items():
        obs = list(obs)
        if q[k]:
            obs[k] = -obs[k]
        out[q] = tuple(obs)
    return out

def relabel_alice_bit(strategy: Strategy, k: int) -> Strategy:
    """
    flip bit k of every Alice question, compensating on Bob's k-th observables
    """
    k = _check_bit(strategy, k)
    return strategy.replace(alice_obs=_rekey(strategy.alice_obs, k),
                            bob_obs=_sign_bit(strategy.bob_obs, k))

def relabel_bob_bit(strategy: Strategy, k: int) -> Strategy:
    """
    flip bit k of every Bob question, compensating on Alice's k-th observables
    """
    k = _check_bit(strategy, k)
    return strategy.replace(alice_obs=_sign_bit(strategy.alice_obs, k),
                            bob_obs=_rekey(strategy.bob_obs, k))

def relabel(strategy: Strategy, step: RelabelStep) -> Strategy:
    if Party(step.party) == Party.A:
        return relabel_alice_bit(strategy, step.bit)
    return relabel_bob_bit(strategy, step.bit)

def apply_transcript(strategy: Strategy, transcript: Iterable[RelabelStep]) -> Strategy:
    """
    apply a sequence of relabel steps in order
    """
    for step in transcript:
        strategy = relabel(strategy, step)
    return strategy

def relabel_by(strategy: Strategy, party: Party, question: BitString
              ) -> Tuple[Strategy, List[RelabelStep]]:
    """
    relabel so that the given question of the given party becomes 0…0.  Returns the new
    strategy and the steps taken (one per set bit, in increasing order).
    """
    party = Party(party)
    steps = [RelabelStep(party.value, k) for k in question.support()]
    return apply_transcript(strategy, steps), steps
