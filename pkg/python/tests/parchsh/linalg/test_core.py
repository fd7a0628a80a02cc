import os, sys, pdb
import unittest as test

import numpy as np

from parchsh.testing import ArrayTestCase
from parchsh.linalg import *

class TestTensor(ArrayTestCase):

    def test_tensor(self):
        zx = tensor(PAULI_Z, PAULI_X)
        self.assertEqual(zx.shape, (4, 4))
        self.assertAllClose(zx, np.kron(PAULI_Z, PAULI_X))
        self.assertAllClose(tensor(PAULI_X), PAULI_X)
        with self.assertRaises(LinalgError):
            tensor()

    def test_embed(self):
        self.assertAllClose(embed(PAULI_X, 0, 2), np.kron(PAULI_X, PAULI_I))
        self.assertAllClose(embed(PAULI_X, 1, 2), np.kron(PAULI_I, PAULI_X))
        with self.assertRaises(LinalgError):
            embed(PAULI_X, 2, 2)

    def test_as_matrix(self):
        with self.assertRaises(LinalgError):
            as_matrix([1, 2, 3])
        with self.assertRaises(LinalgError):
            as_square(np.zeros((2, 3)))
        self.assertEqual(as_matrix([[1, 0], [0, 1]]).dtype, np.complex128)

class TestResiduals(ArrayTestCase):

    def test_hermiticity(self):
        self.assertEqual(hermiticity_residual(PAULI_Y), 0.0)
        self.assertTrue(is_hermitian(HADAMARD))
        M = np.array([[0, 1], [0, 0]], dtype=complex)
        self.assertAlmostEqual(hermiticity_residual(M), 1.0)
        self.assertFalse(is_hermitian(M))

    def test_unitarity(self):
        self.assertTrue(is_unitary(HADAMARD))
        self.assertAlmostEqual(unitarity_residual(2 * PAULI_I), 3.0)
        self.assertFalse(is_unitary(2 * PAULI_I))

    def test_commutator(self):
        self.assertAlmostEqual(commutator_residual(PAULI_X, PAULI_Z), 2.0)
        self.assertEqual(commutator_residual(PAULI_Z, PAULI_Z), 0.0)
        with self.assertRaises(LinalgError):
            commutator_residual(PAULI_X, np.eye(4))

    def test_normalization(self):
        self.assertAlmostEqual(normalization_residual([0.6, 0.8]), 0.0)
        self.assertAlmostEqual(normalization_residual([1.0, 1.0]), np.sqrt(2) - 1)

class TestOperatorFunctions(ArrayTestCase):

    def test_hermitian_eig(self):
        evals, evecs = hermitian_eig(PAULI_X)
        self.assertAllClose(evals, [-1, 1])
        self.assertUnitary(evecs)
        with self.assertRaises(NotHermitianError):
            hermitian_eig(np.array([[0, 1], [0, 0]]))

    def test_operator_abs(self):
        self.assertAllClose(operator_abs(PAULI_Z), PAULI_I)
        M = np.diag([-3.0, 2.0]).astype(complex)
        self.assertAllClose(operator_abs(M), np.diag([3.0, 2.0]))

    def test_sign_normalize(self):
        M = 0.3 * PAULI_X + 0.4 * PAULI_Z
        S = sign_normalize(M)
        self.assertAllClose(S, M / 0.5)
        self.assertUnitary(S)

        # the zero eigenvalue maps to +1
        self.assertAllClose(sign_normalize(np.diag([0.0, -2.0])), np.diag([1.0, -1.0]))
        self.assertAllClose(sign_normalize(np.zeros((2, 2))), PAULI_I)
        with self.assertRaises(ValueError):
            sign_normalize(PAULI_Z, 0)

    def test_ordered_product(self):
        ops = [PAULI_X, PAULI_Z]
        self.assertAllClose(ordered_product(ops, [0, 0]), PAULI_I)
        self.assertAllClose(ordered_product(ops, [1, 0]), PAULI_X)
        self.assertAllClose(ordered_product(ops, [1, 1]), PAULI_X @ PAULI_Z)
        self.assertAllClose(ordered_product(ops, (1, 1)), -1j * PAULI_Y)
        with self.assertRaises(LinalgError):
            ordered_product(ops, [1])

class TestBipartite(ArrayTestCase):

    def setUp(self):
        self.psi = as_bipartite(np.array([1, 0, 0, 1]) / np.sqrt(2), 2, 2)

    def test_as_bipartite(self):
        self.assertAllClose(self.psi, np.eye(2) / np.sqrt(2))
        with self.assertRaises(LinalgError):
            as_bipartite(np.ones(3), 2, 2)

    def test_local_actions(self):
        v = np.arange(6, dtype=complex)
        psi = as_bipartite(v, 2, 3)
        A = np.array([[1, 2], [3, 4]], dtype=complex)
        B = np.arange(9, dtype=complex).reshape(3, 3)
        self.assertAllClose(apply_a(A, psi).ravel(), np.kron(A, np.eye(3)) @ v)
        self.assertAllClose(apply_b(B, psi).ravel(), np.kron(np.eye(2), B) @ v)

    def test_expectation(self):
        self.assertAlmostEqual(expectation(self.psi), 1.0)
        self.assertAlmostEqual(expectation(self.psi, PAULI_Z, PAULI_Z), 1.0)
        self.assertAlmostEqual(expectation(self.psi, PAULI_X, PAULI_X), 1.0)
        self.assertAlmostEqual(expectation(self.psi, PAULI_Z), 0.0)
        self.assertAlmostEqual(expectation(self.psi, op_b=PAULI_X), 0.0)


if __name__ == '__main__':
    test.main()
