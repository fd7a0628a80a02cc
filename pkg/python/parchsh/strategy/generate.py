"""
constructors for the strategies used in experiments:  the ideal graph-state strategy, its noisy
variants, classical deterministic strategies, and Haar-random strategies for property testing.
"""
import logging
from typing import Sequence

import numpy as np
import scipy.linalg as sla
from scipy.stats import unitary_group

from .. import linalg
from ..linalg import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z
from .bits import BitString, all_bitstrings
from .exceptions import StrategyError
from .model import Strategy, NoiseSpec

__all__ = [
    'PAIR_STATE', 'ALICE_PAIR_OBS', 'BOB_PAIR_OBS', 'ideal_strategy', 'noisy_strategy',
    'deterministic_strategy', 'random_strategy', 'permute_subtests', 'strategy_from_pairs'
]

log = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)

# coefficient matrix of (|00> + |01> + |10> - |11>)/2, Alice's qubit indexing rows
PAIR_STATE = np.array([[1, 1], [1, -1]], dtype=complex) / 2

ALICE_PAIR_OBS = (PAULI_X, PAULI_Z)
BOB_PAIR_OBS = ((PAULI_Z + PAULI_X) / _SQRT2, (PAULI_Z - PAULI_X) / _SQRT2)

def _check_n(n):
    if not isinstance(n, (int, np.integer)) or n < 2 or n % 2:
        raise StrategyError("n must be an even integer >= 2: %s" % str(n))
    return int(n)

def strategy_from_pairs(n: int, pair_state, alice_pair_obs: Sequence, bob_pair_obs: Sequence
                        ) -> Strategy:
    """
    build a strategy in which every subtest is played independently on its own qubit pair.
    :param pair_state:      the 2x2 coefficient matrix of each pair's state
    :param alice_pair_obs:  Alice's single-qubit observables for question bits 0 and 1
    :param bob_pair_obs:    Bob's single-qubit observables for question bits 0 and 1
    """
    h = _check_n(n) // 2
    psi = linalg.tensor(*([pair_state] * h))
    dim = 2 ** h

    alice = {}
    bob = {}
    for q in all_bitstrings(h):
        alice[q] = tuple(linalg.embed(alice_pair_obs[b], k, h) for k, b in enumerate(q))
        bob[q] = tuple(linalg.embed(bob_pair_obs[b], k, h) for k, b in enumerate(q))
    return Strategy(n, dim, dim, psi.reshape(-1), alice, bob)

def ideal_strategy(n: int) -> Strategy:
    """
    return the strategy attaining 2√2 on every subtest:  each pair shares the two-qubit graph
    state with Alice measuring σ_x / σ_z and Bob (σ_z ± σ_x)/√2.  Alice holds qubits 0..n/2-1 of
    the ideal n-qubit state and Bob holds the rest.
    """
    return strategy_from_pairs(n, PAIR_STATE, ALICE_PAIR_OBS, BOB_PAIR_OBS)

def noisy_strategy(n: int, noise: NoiseSpec) -> Strategy:
    """
    return the ideal strategy perturbed according to ``noise``.

    bob-rotation
        Bob's observables are conjugated by exp(-iησ_y/2) with η = ``noise.param``.
    partial-entanglement
        each pair's state becomes cos θ |0>|+> + sin θ |1>|->, keeping the ideal measurements
        (θ = π/4 recovers the ideal strategy).
    """
    if not isinstance(noise, NoiseSpec):
        raise StrategyError("noisy_strategy(): noise must be a NoiseSpec")

    if noise.model == "none":
        return ideal_strategy(n)

    if noise.model == "bob-rotation":
        rot = sla.expm(-0.5j * noise.param * PAULI_Y)
        bob = tuple(rot @ b @ rot.conj().T for b in BOB_PAIR_OBS)
        log.debug("building bob-rotation strategy, n=%d, eta=%g", n, noise.param)
        return strategy_from_pairs(n, PAIR_STATE, ALICE_PAIR_OBS, bob)

    if noise.model == "partial-entanglement":
        c, s = np.cos(noise.param), np.sin(noise.param)
        pair = np.diag([c, s]).astype(complex) @ linalg.HADAMARD
        log.debug("building partial-entanglement strategy, n=%d, theta=%g", n, noise.param)
        return strategy_from_pairs(n, pair, ALICE_PAIR_OBS, BOB_PAIR_OBS)

    raise StrategyError("Unsupported noise model: " + noise.model)

def deterministic_strategy(n: int, alice_sign: int=1, bob_sign: int=1) -> Strategy:
    """
    return a classical strategy on one-dimensional spaces in which every observable is
    ``alice_sign``·I (resp. ``bob_sign``·I).  With both signs +1 every answer bit is 0.
    """
    h = _check_n(n) // 2
    one = np.ones((1, 1), dtype=complex)
    alice = {q: (alice_sign * one,) * h for q in all_bitstrings(h)}
    bob = {q: (bob_sign * one,) * h for q in all_bitstrings(h)}
    return Strategy(n, 1, 1, [1.0], alice, bob)

def _balanced_signs(dim: int, rng: np.random.Generator) -> np.ndarray:
    # half +1, half -1; an odd dimension gets its extra sign at random
    if dim == 1:
        return rng.choice([-1.0, 1.0], size=1)
    signs = np.repeat([1.0, -1.0], [dim - dim // 2, dim // 2])
    if dim % 2 and rng.random() < 0.5:
        signs = -signs
    return rng.permutation(signs)

def _random_family(dim: int, h: int, rng: np.random.Generator) -> tuple:
    u = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.ones((1, 1), dtype=complex)
    out = []
    for k in range(h):
        signs = _balanced_signs(dim, rng)
        out.append((u * signs) @ u.conj().T)
    return tuple(out)

def random_strategy(n: int, dim_a: int, dim_b: int, rng: np.random.Generator) -> Strategy:
    """
    return a strategy with a Haar-random pure state and, for every question, a commuting family
    of observables U D_k U† sharing a Haar-random eigenbasis U with randomly ordered ±1 spectra
    D_k.  Each spectrum is trace-balanced (off by one in odd dimensions), so no observable is
    ±I and, in even dimensions, Bob's N⁰ ± N¹ are almost surely nonsingular.
    """
    h = _check_n(n) // 2
    if dim_a < 1 or dim_b < 1:
        raise StrategyError("random_strategy(): dimensions must be positive")
    state = rng.normal(size=dim_a * dim_b) + 1j * rng.normal(size=dim_a * dim_b)
    state /= np.linalg.norm(state)
    alice = {q: _random_family(dim_a, h, rng) for q in all_bitstrings(h)}
    bob = {q: _random_family(dim_b, h, rng) for q in all_bitstrings(h)}
    return Strategy(n, dim_a, dim_b, state, alice, bob)

def permute_subtests(strategy: Strategy, perm: Sequence[int]) -> Strategy:
    """
    return the strategy relabeled so that new subtest j is old subtest perm[j].  The question
    bits and the observables are reordered together on both sides; the state is untouched.
    """
    h = strategy.half
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(h)):
        raise StrategyError("permute_subtests(): not a permutation of 0..%d: %s" %
                            (h - 1, str(perm)))

    def _permute(table):
        out = {}
        for q, obs in table.items():
            newq = BitString(tuple(q[p] for p in perm))
            out[newq] = tuple(obs[p] for p in perm)
        return out

    return strategy.replace(alice_obs=_permute(strategy.alice_obs),
                            bob_obs=_permute(strategy.bob_obs))
