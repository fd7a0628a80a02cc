"""
the swap isometry Φ = Φ_A ⊗ Φ_B built from the extracted operators, and the distance between
what it extracts and the ideal state.

For each operator index k = 0..n-1 in turn an ancilla qubit prepared in |0> is attached and
the map
.. code-block::

   u ⊗ |0>  ->  ½ (I + Z'_k) u ⊗ |0>  +  ½ X'_k (I - Z'_k) u ⊗ |1>

is applied (Hadamard, Z'_k controlled by the ancilla, Hadamard, X'_k controlled by the
ancilla).  Ancilla k stands for qubit k of the ideal state; ancillas 0..n/2-1 belong to Alice.
States are carried as tensors of shape (dim_A, dim_B, 2^m) and operators act on one axis, so
no operator on the full extended space is ever formed.
"""
import logging

import numpy as np

from ..strategy import Strategy, BitString, as_bitstring, ideal_strategy
from ..extract import ExtractedOperators
from .conditions import SideProducts
from .exceptions import VerificationError, JunkExtractionError

__all__ = [ 'JUNK_POLICIES', 'DEF_JUNK_TOL', 'ideal_state', 'pauli_target',
            'swap_isometry_apply', 'DistanceEvaluator', 'extraction_distance' ]

log = logging.getLogger(__name__)

JUNK_POLICIES = ("fixed", "optimal")
DEF_JUNK_TOL = 1e-12

def ideal_state(n: int) -> np.ndarray:
    """
    return the n-qubit reference state 2^{-n/2} Σ_u (-1)^{u_a·u_b} |u>, qubit 0 most
    significant
    """
    return np.array(ideal_strategy(n).state)

def pauli_target(n: int, p, q) -> np.ndarray:
    """
    return X^q Z^p applied to the reference state
    """
    p, q = as_bitstring(p), as_bitstring(q)
    if len(p) != n or len(q) != n:
        raise VerificationError("Pauli strings must have length %d" % n)
    psi = ideal_state(n)
    u = np.arange(2**n)
    pmask, qmask = p.to_int(), q.to_int()
    src = u ^ qmask
    signs = np.array([-1.0 if bin(int(v) & pmask).count("1") & 1 else 1.0 for v in src])
    return signs * psi[src]

def _apply_axis(op: np.ndarray, tensor: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(op, tensor, axes=([1], [axis])), 0, axis)

def swap_isometry_apply(ops: ExtractedOperators, v) -> np.ndarray:
    """
    apply the swap isometry to a state on dim_A·dim_B.
    :param v:  the state as a vector (A-major) or as its dim_A x dim_B coefficient matrix
    :return:  the extended state as a tensor of shape (dim_A, dim_B, 2^n); the last index
              encodes the ancillas with ancilla 0 most significant
    """
    v = np.asarray(v, dtype=complex)
    if v.size != ops.dim_a * ops.dim_b:
        raise VerificationError("state of size %d does not match the operators' %d x %d" %
                                (v.size, ops.dim_a, ops.dim_b))
    tensor = v.reshape(ops.dim_a, ops.dim_b, 1)
    for k in range(ops.n):
        axis = 0 if ops.is_alice(k) else 1
        zt = _apply_axis(ops.z_ops[k], tensor, axis)
        branch0 = (tensor + zt) / 2
        branch1 = _apply_axis(ops.x_ops[k], (tensor - zt) / 2, axis)
        # the new ancilla becomes the least significant digit of the ancilla index
        tensor = np.stack([branch0, branch1], axis=-1).reshape(ops.dim_a, ops.dim_b, -1)
    return tensor

class DistanceEvaluator(object):
    """
    computes ‖Φ(X'^q Z'^p ψ') - junk ⊗ X^q Z^p ψ‖ for one strategy and its operators.

    Under the "fixed" junk policy the junk state is taken once from p = q = 0 as the normalized
    partial inner product of Φ(ψ') with the reference state.  Under the "optimal" policy the
    junk is chosen separately for each (p, q) to minimize the distance, which evaluates to
    √(‖out‖² + 1 - 2‖(I ⊗ <τ|) out‖) with τ = X^q Z^p ψ.
    """

    def __init__(self, strategy: Strategy, ops: ExtractedOperators, junk_tol: float=DEF_JUNK_TOL):
        if (ops.n, ops.dim_a, ops.dim_b) != (strategy.n, strategy.dim_a, strategy.dim_b):
            raise VerificationError("operators do not match the strategy")
        self.strategy = strategy
        self.ops = ops
        self.n = ops.n
        self._prods = SideProducts(ops)
        self._ideal = ideal_state(self.n)

        base = swap_isometry_apply(ops, strategy.psi)
        overlap = np.tensordot(base, self._ideal.conj(), axes=([2], [0]))
        self.junk_norm = float(np.linalg.norm(overlap))
        if self.junk_norm < junk_tol:
            raise JunkExtractionError(self.junk_norm)
        self.junk = overlap / self.junk_norm

    def extracted(self, p, q) -> np.ndarray:
        """
        return Φ(X'^q Z'^p ψ')
        """
        p, q = as_bitstring(p), as_bitstring(q)
        if len(p) != self.n or len(q) != self.n:
            raise VerificationError("Pauli strings must have length %d" % self.n)
        vec = self._prods.x(q.to_int(), self._prods.z(p.to_int(), self.strategy.psi))
        return swap_isometry_apply(self.ops, vec)

    def distance(self, p, q, junk_policy: str="fixed") -> float:
        if junk_policy not in JUNK_POLICIES:
            raise VerificationError("unrecognized junk policy: " + str(junk_policy))
        return self.distances(p, q)[junk_policy]

    def distances(self, p, q) -> dict:
        """
        return the distances under both junk policies, keyed by policy name
        """
        out = self.extracted(p, q)
        target = pauli_target(self.n, p, q)
        fixed = float(np.linalg.norm(out - self.junk[:, :, None] * target[None, None, :]))
        overlap = float(np.linalg.norm(np.tensordot(out, target.conj(), axes=([2], [0]))))
        optimal = float(np.sqrt(max(0.0, np.vdot(out, out).real + 1.0 - 2 * overlap)))
        return { "fixed": fixed, "optimal": optimal }

def extraction_distance(strategy: Strategy, ops: ExtractedOperators, p, q,
                        junk_policy: str="fixed") -> float:
    """
    return ‖Φ(X'^q Z'^p ψ') - junk ⊗ X^q Z^p ψ‖ under the given junk policy
    :raises JunkExtractionError:  if Φ(ψ') has no overlap with the reference state
    """
    return DistanceEvaluator(strategy, ops).distance(p, q, junk_policy)
