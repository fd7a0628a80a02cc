"""
dense complex linear algebra used throughout parchsh:  tensor products, operator functions of
Hermitian matrices, ordered operator products, local actions on bipartite states, and the
residual norms used to validate observables and states.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; no operation modifies its inputs.
"""
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg as sla

from .. import base

__all__ = [
    'ComplexMatrix', 'StateVector', 'LinalgError', 'NotHermitianError',
    'PAULI_I', 'PAULI_X', 'PAULI_Y', 'PAULI_Z', 'HADAMARD', 'DEF_HERMITIAN_TOL', 'DEF_ZERO_TOL',
    'as_matrix', 'as_square', 'tensor', 'embed', 'hermiticity_residual', 'unitarity_residual',
    'commutator_residual', 'normalization_residual', 'is_hermitian', 'is_unitary',
    'hermitian_eig', 'apply_function', 'operator_abs', 'sign_normalize', 'ordered_product',
    'as_bipartite', 'apply_a', 'apply_b', 'expectation'
]

ComplexMatrix = npt.NDArray[np.complex128]
StateVector = npt.NDArray[np.complex128]

DEF_HERMITIAN_TOL = 1e-10
DEF_ZERO_TOL = 1e-10

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

class LinalgError(base.ParchshException):
    """
    an error indicating that a matrix or vector does not have the shape or structure an
    operation requires
    """
    def __init__(self, msg=None, cause=None, sys=None):
        if not msg and not cause:
            msg = "Unknown linear algebra error"
        super(LinalgError, self).__init__(msg, cause, sys)

class NotHermitianError(LinalgError):
    """
    an error indicating that an operation requiring a Hermitian matrix was given one that is not
    """
    def __init__(self, residual=None, tol=None, msg=None, cause=None, sys=None):
        self.residual = residual
        self.tol = tol
        if not msg:
            msg = "Matrix is not Hermitian"
            if residual is not None:
                msg += " (residual %.3g > %.3g)" % (residual, tol)
        super(NotHermitianError, self).__init__(msg, cause, sys)

def as_matrix(M) -> ComplexMatrix:
    """
    return the input as a 2-dimensional complex array
    :raises LinalgError:  if the input is not 2-dimensional
    """
    out = np.asarray(M, dtype=complex)
    if out.ndim != 2:
        raise LinalgError("Expected a 2-dimensional matrix, got shape %s" % str(out.shape))
    return out

def as_square(M) -> ComplexMatrix:
    out = as_matrix(M)
    if out.shape[0] != out.shape[1]:
        raise LinalgError("Expected a square matrix, got shape %s" % str(out.shape))
    return out

def tensor(*ops) -> ComplexMatrix:
    """
    return the Kronecker product of the given matrices, leftmost factor most significant
    """
    if not ops:
        raise LinalgError("tensor(): no operands given")
    return reduce(np.kron, [as_matrix(o) for o in ops])

def embed(op, position: int, nqubits: int) -> ComplexMatrix:
    """
    return the single-qubit operator ``op`` acting on qubit ``position`` (0-based, qubit 0 most
    significant) of an ``nqubits`` register, tensored with identities elsewhere.
    """
    if not 0 <= position < nqubits:
        raise LinalgError("embed(): qubit position %d out of range for %d qubits" %
                          (position, nqubits))
    factors = [PAULI_I] * nqubits
    factors[position] = as_square(op)
    return tensor(*factors)

def hermiticity_residual(M) -> float:
    """
    return max |M_ij - conj(M_ji)|
    """
    M = as_square(M)
    return float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0

def unitarity_residual(M) -> float:
    """
    return max |(M^dagger M - I)_ij|
    """
    M = as_square(M)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0])))) if M.size else 0.0

def commutator_residual(A, B) -> float:
    """
    return max |(AB - BA)_ij|
    """
    A = as_square(A)
    B = as_square(B)
    if A.shape != B.shape:
        raise LinalgError("commutator_residual(): dimension mismatch: %s vs %s" %
                          (str(A.shape), str(B.shape)))
    return float(np.max(np.abs(A @ B - B @ A)))

def normalization_residual(v) -> float:
    """
    return | ||v||_2 - 1 |
    """
    return abs(float(np.linalg.norm(v)) - 1.0)

def is_hermitian(M, tol: float=DEF_HERMITIAN_TOL) -> bool:
    return hermiticity_residual(M) <= tol

def is_unitary(M, tol: float=1e-8) -> bool:
    return unitarity_residual(M) <= tol

def hermitian_eig(M, tol: float=DEF_HERMITIAN_TOL):
    """
    return the eigenvalues (ascending) and orthonormal eigenvectors (as columns) of a Hermitian
    matrix.
    :raises NotHermitianError:  if M deviates from Hermitian by more than ``tol``
    """
    M = as_square(M)
    resid = hermiticity_residual(M)
    if resid > tol:
        raise NotHermitianError(resid, tol)
    # symmetrize away the tolerated rounding before handing to LAPACK
    return sla.eigh((M + M.conj().T) / 2)

def apply_function(M, func, tol: float=DEF_HERMITIAN_TOL) -> ComplexMatrix:
    """
    return f(M) for Hermitian M, evaluated by applying ``func`` to the eigenvalues in M's
    eigenbasis.
    """
    evals, evecs = hermitian_eig(M, tol)
    return (evecs * func(evals)) @ evecs.conj().T

def operator_abs(M, tol: float=DEF_HERMITIAN_TOL) -> ComplexMatrix:
    """
    return |M| = sqrt(M^2), the positive-semidefinite operator sharing M's eigenbasis with the
    absolute values of M's eigenvalues.
    :raises NotHermitianError:  if M is not Hermitian
    """
    return apply_function(M, np.abs, tol)

def sign_normalize(M, zero_tol: float=DEF_ZERO_TOL, tol: float=DEF_HERMITIAN_TOL) -> ComplexMatrix:
    """
    return M/|M| computed in M's eigenbasis.  Eigenvalues with magnitude below ``zero_tol`` are
    replaced by +zero_tol before dividing, so they map to +1 and the result is always a Hermitian
    unitary.
    """
    if zero_tol <= 0:
        raise ValueError("sign_normalize(): zero_tol must be positive")
    def _sign(evals):
        return np.where(np.abs(evals) < zero_tol, 1.0, np.sign(evals))
    return apply_function(M, _sign, tol)

def ordered_product(ops: Sequence, t: Iterable[int]) -> ComplexMatrix:
    """
    return the product M_1^{t_1} M_2^{t_2} ... M_n^{t_n}, with the factor of smallest index
    leftmost.  An all-zero ``t`` gives the identity.
    :param ops:  the family of square matrices, all of one dimension
    :param t:    a bit sequence (e.g. a BitString) the same length as ``ops``
    """
    t = [int(b) for b in t]
    if len(t) != len(ops):
        raise LinalgError("ordered_product(): bit string length %d does not match %d operators" %
                          (len(t), len(ops)))
    if not ops:
        raise LinalgError("ordered_product(): empty operator family")
    mats = [as_square(o) for o in ops]
    dim = mats[0].shape[0]
    if any(m.shape != (dim, dim) for m in mats):
        raise LinalgError("ordered_product(): operators have mismatched dimensions")

    out = np.eye(dim, dtype=complex)
    for m, bit in zip(mats, t):
        if bit:
            out = out @ m
    return out

def as_bipartite(v, dim_a: int, dim_b: int) -> ComplexMatrix:
    """
    return a joint state vector as its dim_a x dim_b coefficient matrix (A-major ordering)
    """
    v = np.asarray(v, dtype=complex)
    if v.size != dim_a * dim_b:
        raise LinalgError("state of length %d does not match dimensions %d x %d" %
                          (v.size, dim_a, dim_b))
    return v.reshape(dim_a, dim_b)

def apply_a(op, psi: ComplexMatrix) -> ComplexMatrix:
    """
    apply (op ⊗ I) to a state given as its coefficient matrix
    """
    return op @ psi

def apply_b(op, psi: ComplexMatrix) -> ComplexMatrix:
    """
    apply (I ⊗ op) to a state given as its coefficient matrix
    """
    return psi @ op.T

def expectation(psi: ComplexMatrix, op_a=None, op_b=None) -> float:
    """
    return the real part of <psi| op_a ⊗ op_b |psi> for a state given as its coefficient matrix;
    a missing operator is taken as the identity.
    """
    phi = psi
    if op_a is not None:
        phi = apply_a(op_a, phi)
    if op_b is not None:
        phi = apply_b(op_b, phi)
    return float(np.real(np.vdot(psi, phi)))
