"""
the model of the players' behaviour:  a shared pure state plus, for each party and each question,
a family of commuting ±1 observables (one per answer bit).  Projectors onto answer strings are
derived from the observables rather than stored.
"""
import logging, math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .. import linalg
from .bits import BitString, all_bitstrings, as_bitstring
from .exceptions import StrategyError

__all__ = [
    'Party', 'Strategy', 'NoiseSpec', 'StrategyDiagnostics', 'NOISE_MODELS',
    'validate', 'joint_projector', 'answer_projectors', 'born_distribution', 'sample_answers'
]

log = logging.getLogger(__name__)

DEF_CHECK_TOL = 1e-8

class Party(Enum):
    A = "A"
    B = "B"

def _frozen(M) -> np.ndarray:
    out = np.array(M, dtype=complex)
    out.setflags(write=False)
    return out

class Strategy(object):
    """
    a bipartite strategy for the parallel CHSH game on n tested qubits (n/2 subtests).

    The joint state lives on dim_a * dim_b with A-major ordering.  ``alice_obs`` and ``bob_obs``
    map each question (a :py:class:`BitString` of length n/2) to a tuple of n/2 observables, the
    k-th one giving answer bit k.  Instances are immutable; all arrays are read-only.  The
    constructor checks only shapes; physical validity is checked by :py:func:`validate`.
    """

    def __init__(self, n: int, dim_a: int, dim_b: int, state,
                 alice_obs: Mapping, bob_obs: Mapping):
        if not isinstance(n, (int, np.integer)) or n < 2 or n % 2:
            raise StrategyError("Strategy: n must be an even integer >= 2: %s" % str(n))
        if dim_a < 1 or dim_b < 1:
            raise StrategyError("Strategy: dimensions must be positive")
        self._n = int(n)
        self._dims = (int(dim_a), int(dim_b))

        state = _frozen(state).reshape(-1)
        if state.size != dim_a * dim_b:
            raise StrategyError("Strategy: state length %d does not match %d x %d" %
                                (state.size, dim_a, dim_b))
        self._state = state
        psi = state.reshape(dim_a, dim_b)
        psi.setflags(write=False)
        self._psi = psi

        self._alice = self._freeze_table(alice_obs, dim_a, "alice")
        self._bob = self._freeze_table(bob_obs, dim_b, "bob")

    def _freeze_table(self, table: Mapping, dim: int, who: str) -> Dict[BitString, tuple]:
        h = self.half
        out = {}
        for q, obs in table.items():
            q = as_bitstring(q)
            if len(q) != h:
                raise StrategyError("Strategy: %s question %s does not have length %d" %
                                    (who, str(q), h))
            obs = tuple(_frozen(o) for o in obs)
            if len(obs) != h:
                raise StrategyError("Strategy: %s question %s has %d observables (need %d)" %
                                    (who, str(q), len(obs), h))
            for o in obs:
                if o.shape != (dim, dim):
                    raise StrategyError("Strategy: %s observable for %s has shape %s (need %s)" %
                                        (who, str(q), str(o.shape), str((dim, dim))))
            out[q] = obs
        return out

    @property
    def n(self) -> int:
        return self._n

    @property
    def half(self) -> int:
        """
        the number of subtests, n/2
        """
        return self._n // 2

    @property
    def dim_a(self) -> int:
        return self._dims[0]

    @property
    def dim_b(self) -> int:
        return self._dims[1]

    @property
    def state(self) -> np.ndarray:
        """
        the joint state as a vector of length dim_a * dim_b
        """
        return self._state

    @property
    def psi(self) -> np.ndarray:
        """
        the joint state as its dim_a x dim_b coefficient matrix
        """
        return self._psi

    @property
    def alice_obs(self) -> Mapping[BitString, tuple]:
        return dict(self._alice)

    @property
    def bob_obs(self) -> Mapping[BitString, tuple]:
        return dict(self._bob)

    def table(self, party: Party) -> Mapping[BitString, tuple]:
        return self._alice if Party(party) == Party.A else self._bob

    def observables(self, party: Party, question) -> tuple:
        """
        return the n/2 observables the given party uses for the given question
        :raises StrategyError:  if the strategy has no entry for the question
        """
        q = as_bitstring(question)
        try:
            return self.table(party)[q]
        except KeyError:
            raise StrategyError("No %s observables for question %s" % (Party(party).name, str(q)))

    def observable(self, party: Party, question, k: int) -> np.ndarray:
        return self.observables(party, question)[k]

    def questions(self, party: Party) -> List[BitString]:
        return sorted(self.table(party).keys())

    def replace(self, state=None, alice_obs=None, bob_obs=None) -> "Strategy":
        """
        return a copy with some parts replaced
        """
        return Strategy(self._n, self.dim_a, self.dim_b,
                        self._state if state is None else state,
                        self._alice if alice_obs is None else alice_obs,
                        self._bob if bob_obs is None else bob_obs)

    def __repr__(self):
        return "Strategy(n=%d, dim_a=%d, dim_b=%d)" % (self._n, self.dim_a, self.dim_b)

NOISE_MODELS = ("none", "bob-rotation", "partial-entanglement")

@dataclass(frozen=True)
class NoiseSpec:
    """
    a choice of perturbation applied to the ideal strategy.  ``param`` is the rotation angle in
    radians for bob-rotation and the Schmidt angle θ ∈ (0, π/4] for partial-entanglement.
    """
    model: str = "none"
    param: float = 0.0

    def __post_init__(self):
        if self.model not in NOISE_MODELS:
            raise StrategyError("Unrecognized noise model: %s (need one of %s)" %
                                (str(self.model), ", ".join(NOISE_MODELS)))
        if not math.isfinite(self.param):
            raise StrategyError("Noise parameter must be finite")
        if self.model == "none" and self.param != 0:
            raise StrategyError("Noise model 'none' takes no parameter (got %s)" % str(self.param))
        if self.model == "partial-entanglement" and not 0 < self.param <= math.pi / 4 + 1e-15:
            raise StrategyError("partial-entanglement angle must lie in (0, pi/4]: %s" %
                                str(self.param))

@dataclass
class StrategyDiagnostics:
    """
    the residuals found by :py:func:`validate`
    """
    hermiticity: float = 0.0
    unitarity: float = 0.0
    commutation: float = 0.0
    normalization: float = 0.0
    missing_questions: List[str] = field(default_factory=list)
    tol: float = DEF_CHECK_TOL

    @property
    def max_residual(self) -> float:
        return max(self.hermiticity, self.unitarity, self.commutation, self.normalization)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol and not self.missing_questions

    def failures(self) -> List[str]:
        out = [name for name in "hermiticity unitarity commutation normalization".split()
               if getattr(self, name) > self.tol]
        if self.missing_questions:
            out.append("missing questions")
        return out

    def to_dict(self) -> dict:
        return {
            "hermiticity": self.hermiticity, "unitarity": self.unitarity,
            "commutation": self.commutation, "normalization": self.normalization,
            "missing_questions": list(self.missing_questions), "tol": self.tol,
            "passed": self.passed
        }

def validate(strategy: Strategy, tol: float=DEF_CHECK_TOL) -> StrategyDiagnostics:
    """
    report the largest Hermiticity, unitarity, within-question commutation, and normalization
    residuals of the strategy, plus any questions lacking observables.  The report passes iff
    every residual is at most ``tol`` and no question is missing.
    """
    out = StrategyDiagnostics(tol=tol)
    out.normalization = linalg.normalization_residual(strategy.state)
    for party in Party:
        table = strategy.table(party)
        for q in all_bitstrings(strategy.half):
            if q not in table:
                out.missing_questions.append("%s:%s" % (party.name, str(q)))
        for q, obs in table.items():
            for k, o in enumerate(obs):
                out.hermiticity = max(out.hermiticity, linalg.hermiticity_residual(o))
                out.unitarity = max(out.unitarity, linalg.unitarity_residual(o))
                for o2 in obs[k+1:]:
                    out.commutation = max(out.commutation, linalg.commutator_residual(o, o2))

    if not out.passed:
        log.debug("strategy validation failed: %s", ", ".join(out.failures()))
    return out

def _check_family_commutes(obs: Sequence[np.ndarray], tol: float=DEF_CHECK_TOL):
    for k, o in enumerate(obs):
        for o2 in obs[k+1:]:
            resid = linalg.commutator_residual(o, o2)
            if resid > tol:
                raise StrategyError("Observables for one question do not commute (residual %.3g)"
                                    % resid)

def _gamma(obs: np.ndarray, bit: int) -> np.ndarray:
    """
    the projector onto answer bit ``bit`` of a ±1 observable:  (I + (-1)^bit M)/2
    """
    sign = -1.0 if bit else 1.0
    return (np.eye(obs.shape[0]) + sign * obs) / 2

def joint_projector(strategy: Strategy, party: Party, question, answer,
                    tol: float=DEF_CHECK_TOL) -> np.ndarray:
    """
    return the projector Π^q_a = ∏_k (I + (-1)^{a_k} M^q_k)/2 onto the answer string ``answer``
    for the given party and question.
    :raises StrategyError:  if the question's observables do not commute
    """
    answer = as_bitstring(answer)
    obs = strategy.observables(party, question)
    if len(answer) != len(obs):
        raise StrategyError("Answer %s does not have length %d" % (str(answer), len(obs)))
    _check_family_commutes(obs, tol)
    out = np.eye(obs[0].shape[0], dtype=complex)
    for o, bit in zip(obs, answer):
        out = out @ _gamma(o, bit)
    return out

def answer_projectors(strategy: Strategy, party: Party, question,
                      tol: float=DEF_CHECK_TOL) -> np.ndarray:
    """
    return an array of shape (2^{n/2}, d, d) holding the projector for every answer string,
    indexed by the answer's integer value
    """
    obs = strategy.observables(party, question)
    _check_family_commutes(obs, tol)
    dim = obs[0].shape[0]
    projs = np.ones((1, dim, dim), dtype=complex) * np.eye(dim)
    for o in obs:
        g0 = _gamma(o, 0)
        g1 = _gamma(o, 1)
        # appending a bit on the right doubles the index: new index = 2*old + bit
        projs = np.stack([p @ g for p in projs for g in (g0, g1)])
    return projs

def born_distribution(strategy: Strategy, q_a, q_b) -> np.ndarray:
    """
    return the matrix P[x, y] = <ψ'| Π^{q_a}_x ⊗ Π^{q_b}_y |ψ'> indexed by the integer values of
    the answer strings
    """
    pa = answer_projectors(strategy, Party.A, q_a)
    pb = answer_projectors(strategy, Party.B, q_b)
    psi = strategy.psi
    probs = np.einsum('ab,xac,cd,ybd->xy', psi.conj(), pa, psi, pb, optimize=True)
    return np.clip(np.real(probs), 0.0, None)

def sample_answers(strategy: Strategy, q_a, q_b, rng: np.random.Generator
                   ) -> Tuple[BitString, BitString]:
    """
    draw one pair of answer strings (x, y) from the Born distribution for questions (q_a, q_b).
    Each answer bit is sampled in turn from the conditional distribution given by the
    single-bit projectors, Alice's bits first; the state is collapsed after every draw.
    """
    phi = strategy.psi
    answers = {}
    for party, apply in ((Party.A, linalg.apply_a), (Party.B, linalg.apply_b)):
        obs = strategy.observables(party, q_a if party == Party.A else q_b)
        bits = []
        for o in obs:
            norm2 = np.vdot(phi, phi).real
            phi0 = apply(_gamma(o, 0), phi)
            p0 = np.vdot(phi0, phi0).real / norm2 if norm2 > 0 else 1.0
            if rng.random() < p0:
                bits.append(0)
                phi = phi0
            else:
                bits.append(1)
                phi = apply(_gamma(o, 1), phi)
        answers[party] = BitString(bits)
    return answers[Party.A], answers[Party.B]
