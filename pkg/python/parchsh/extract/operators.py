"""
construction of the operators X'_k, Z'_k that stand in for the Pauli operators of the ideal
state.

Alice's operators are her observables for the distinguished questions:  X'_k = M^{0…0}_k and
Z'_k = M^{1…1}_k.  Bob's are built from the sum and difference of his two observables,
.. code-block::

   X'_{k+n/2} = sign(N^{0…0}_k - N^{1…1}_k)      Z'_{k+n/2} = sign(N^{0…0}_k + N^{1…1}_k)

where sign(M) = M/|M| is evaluated in M's eigenbasis.  With this assignment Alice's X'_k is
paired with Bob's Z'_{k+n/2} (and Z'_k with X'_{k+n/2}), which reproduces the stabilizers of
the graph state exactly for the ideal strategy.
"""
import logging
from typing import Sequence

import numpy as np

from .. import linalg
from ..strategy import Strategy, Party, BitString, StrategyError
from ..game import TSIRELSON, subtest_value
from .exceptions import ExtractionError

__all__ = [ 'ExtractedOperators', 'build_xz', 'pair_bounds', 'rigidity_pair_norms',
            'certified_pair_delta' ]

log = logging.getLogger(__name__)

def _frozen(M):
    out = np.array(M, dtype=complex)
    out.setflags(write=False)
    return out

class ExtractedOperators(object):
    """
    the operators X'_i, Z'_i, i = 0..n-1.  Operators with i < n/2 act on Alice's space;
    the rest act on Bob's.  ``singular`` names the Bob operators built from an N⁰ ± N¹ with a
    zero eigenvalue; those depend on the sign convention and so on how the strategy was labeled.
    """

    def __init__(self, n: int, dim_a: int, dim_b: int, x_ops: Sequence, z_ops: Sequence,
                 singular: Sequence[str]=()):
        if len(x_ops) != n or len(z_ops) != n:
            raise ExtractionError("ExtractedOperators: need %d X' and Z' operators" % n)
        self.n = int(n)
        self.dim_a = int(dim_a)
        self.dim_b = int(dim_b)
        self.x_ops = tuple(_frozen(o) for o in x_ops)
        self.z_ops = tuple(_frozen(o) for o in z_ops)
        self.singular = list(singular)
        for i, (x, z) in enumerate(zip(self.x_ops, self.z_ops)):
            dim = self.dim_of(i)
            if x.shape != (dim, dim) or z.shape != (dim, dim):
                raise ExtractionError("ExtractedOperators: operator %d does not act on a "
                                      "%d-dimensional space" % (i, dim))

    @property
    def half(self) -> int:
        return self.n // 2

    def is_alice(self, i: int) -> bool:
        return i < self.half

    def dim_of(self, i: int) -> int:
        return self.dim_a if self.is_alice(i) else self.dim_b

    def partner(self, i: int) -> int:
        """
        the index paired with i for the identification conditions, (i + n/2) mod n
        """
        return (i + self.half) % self.n

    def apply(self, op_index: int, kind: str, psi: np.ndarray) -> np.ndarray:
        """
        apply X'_i (kind "x") or Z'_i (kind "z") to a state given as its coefficient matrix
        """
        op = (self.x_ops if kind == "x" else self.z_ops)[op_index]
        if self.is_alice(op_index):
            return linalg.apply_a(op, psi)
        return linalg.apply_b(op, psi)

    def residuals(self) -> dict:
        """
        return the largest Hermiticity and unitarity residuals over all operators and the
        largest commutator among Alice's X' operators and among her Z' operators
        """
        ops = self.x_ops + self.z_ops
        out = {
            "hermiticity": max(linalg.hermiticity_residual(o) for o in ops),
            "unitarity": max(linalg.unitarity_residual(o) for o in ops),
            "alice_commutation": 0.0
        }
        for fam in (self.x_ops[:self.half], self.z_ops[:self.half]):
            for i in range(len(fam)):
                for j in range(i+1, len(fam)):
                    out["alice_commutation"] = max(out["alice_commutation"],
                                                   linalg.commutator_residual(fam[i], fam[j]))
        return out

    def is_valid(self, tol: float=1e-8) -> bool:
        return max(self.residuals().values()) <= tol

def build_xz(strategy: Strategy, zero_tol: float=linalg.DEF_ZERO_TOL) -> ExtractedOperators:
    """
    build X'_i, Z'_i from the strategy's observables for the questions 0…0 and 1…1.  The
    strategy should already be canonicalized so that these questions are the best ones.
    :raises ExtractionError:  if either distinguished question is missing
    """
    h = strategy.half
    zeros, ones = BitString.zeros(h), BitString.ones(h)
    try:
        m0, m1 = strategy.observables(Party.A, zeros), strategy.observables(Party.A, ones)
        n0, n1 = strategy.observables(Party.B, zeros), strategy.observables(Party.B, ones)
    except StrategyError as ex:
        raise ExtractionError("strategy lacks a distinguished question: " + str(ex), ex)

    x_ops = list(m0)
    z_ops = list(m1)
    singular = []
    for k in range(h):
        for kind, ops, M in (("x", x_ops, n0[k] - n1[k]), ("z", z_ops, n0[k] + n1[k])):
            if np.min(np.abs(linalg.hermitian_eig(M)[0])) < zero_tol:
                singular.append("%s'_%d" % (kind.upper(), k + h))
            ops.append(linalg.sign_normalize(M, zero_tol))
    if singular:
        log.debug("build_xz: singular Bob combinations for %s", ", ".join(singular))
    return ExtractedOperators(strategy.n, strategy.dim_a, strategy.dim_b, x_ops, z_ops,
                              singular)

def pair_bounds(delta: float) -> dict:
    """
    return the rigidity bounds for a single CHSH pair whose value is 2√2 - delta:
    anticommutation norms at most 4(δ√2)^{1/2} and cross-identification norms at most
    4(δ√2)^{1/4}.  The bounds are proven for 0 ≤ δ ≤ 1, which ``valid`` reports.
    """
    d = max(0.0, float(delta)) * np.sqrt(2.0)
    return {
        "anticommute": 4 * d**0.5,
        "cross": 4 * d**0.25,
        "valid": bool(0.0 <= delta <= 1.0)
    }

def certified_pair_delta(strategy: Strategy, k: int) -> float:
    """
    return δ_k = max(0, 2√2 - f(0…0, 0…0, k))
    """
    zeros = BitString.zeros(strategy.half)
    return max(0.0, TSIRELSON - subtest_value(strategy, zeros, zeros, k))

def rigidity_pair_norms(strategy: Strategy, ops: ExtractedOperators, k: int) -> dict:
    """
    return the single-pair rigidity norms for subtest k evaluated on the strategy's state:
    the anticommutators ‖{X'_i, Z'_i}ψ‖ on each side and the cross identifications
    ‖X'_k ψ - Z'_{k+n/2} ψ‖ and ‖Z'_k ψ - X'_{k+n/2} ψ‖, together with δ_k and the bounds
    implied by it.
    """
    if not 0 <= k < ops.half:
        raise ExtractionError("subtest index %d out of range" % k)
    psi = strategy.psi
    j = k + ops.half

    def _anti(i):
        xz = ops.apply(i, "x", ops.apply(i, "z", psi))
        zx = ops.apply(i, "z", ops.apply(i, "x", psi))
        return float(np.linalg.norm(xz + zx))

    delta = certified_pair_delta(strategy, k)
    return {
        "delta": delta,
        "alice_anticommute": _anti(k),
        "bob_anticommute": _anti(j),
        "x_cross": float(np.linalg.norm(ops.apply(k, "x", psi) - ops.apply(j, "z", psi))),
        "z_cross": float(np.linalg.norm(ops.apply(k, "z", psi) - ops.apply(j, "x", psi))),
        "bounds": pair_bounds(delta)
    }
