import os, sys, pdb
import unittest as test

import numpy as np

from parchsh.testing import ArrayTestCase, TEST_SEED
from parchsh.linalg import PAULI_X, PAULI_Z
from parchsh.strategy import *
from parchsh.extract import ExtractedOperators, build_xz
from parchsh.verify import *

class TestTargets(ArrayTestCase):

    def test_ideal_state(self):
        self.assertAllClose(ideal_state(2), [0.5, 0.5, 0.5, -0.5])
        psi = ideal_state(4)
        self.assertAlmostEqual(np.linalg.norm(psi), 1.0)
        # amplitude of |u> is (-1)^{u_a . u_b} / 4
        for u in all_bitstrings(4):
            sign = -1 if u.a.dot(u.b) % 2 else 1
            self.assertAlmostEqual(psi[u.to_int()], sign / 4)

    def test_pauli_target(self):
        self.assertAllClose(pauli_target(2, "00", "00"), ideal_state(2))
        self.assertAllClose(pauli_target(2, "10", "00"), [0.5, 0.5, -0.5, 0.5])
        self.assertAllClose(pauli_target(2, "00", "01"), [0.5, 0.5, -0.5, 0.5])
        Z0 = np.kron(PAULI_Z, np.eye(2))
        X1 = np.kron(np.eye(2), PAULI_X)
        self.assertAllClose(pauli_target(2, "10", "01"), X1 @ Z0 @ ideal_state(2))
        with self.assertRaises(VerificationError):
            pauli_target(2, "1", "00")

class TestSwapIsometry(ArrayTestCase):

    def test_ideal_pair(self):
        strat = ideal_strategy(2)
        out = swap_isometry_apply(build_xz(strat), strat.state)
        self.assertEqual(out.shape, (2, 2, 4))
        self.assertAlmostEqual(np.linalg.norm(out), 1.0)
        overlap = np.tensordot(out, ideal_state(2).conj(), axes=([2], [0]))
        self.assertAlmostEqual(np.linalg.norm(overlap), 1.0)

    def test_isometry(self):
        strat = random_strategy(4, 2, 2, np.random.default_rng(TEST_SEED))
        ops = build_xz(strat)
        out = swap_isometry_apply(ops, strat.psi)
        self.assertEqual(out.shape, (2, 2, 16))
        self.assertAlmostEqual(np.linalg.norm(out), 1.0)

    def test_deterministic(self):
        strat = deterministic_strategy(2)
        out = swap_isometry_apply(build_xz(strat), strat.state)
        self.assertAllClose(out.reshape(-1), [1, 0, 0, 0])

    def test_size_mismatch(self):
        with self.assertRaises(VerificationError):
            swap_isometry_apply(build_xz(ideal_strategy(2)), np.ones(3))

class TestDistances(test.TestCase):

    def test_ideal(self):
        strat = ideal_strategy(4)
        ev = DistanceEvaluator(strat, build_xz(strat))
        self.assertAlmostEqual(ev.junk_norm, 1.0)
        for p, q in (("0000", "0000"), ("1010", "0110"), ("1111", "1111")):
            d = ev.distances(p, q)
            self.assertAlmostEqual(d["fixed"], 0.0)
            self.assertAlmostEqual(d["optimal"], 0.0)

    def test_bob_rotation(self):
        for eta in (0.1, 0.4):
            strat = noisy_strategy(2, NoiseSpec("bob-rotation", eta))
            ops = build_xz(strat)
            self.assertAlmostEqual(extraction_distance(strat, ops, "00", "00"),
                                   2 * np.sin(eta / 4))
            self.assertAlmostEqual(extraction_distance(strat, ops, "00", "00", "optimal"),
                                   2 * np.sin(eta / 4))

    def test_optimal_at_most_fixed(self):
        strat = noisy_strategy(4, NoiseSpec("partial-entanglement", 0.6))
        ev = DistanceEvaluator(strat, build_xz(strat))
        for p in ("0000", "1100", "0101"):
            for q in ("0000", "0011"):
                d = ev.distances(p, q)
                self.assertLessEqual(d["optimal"], d["fixed"] + 1e-12)

    def test_deterministic_junk(self):
        strat = deterministic_strategy(4)
        ev = DistanceEvaluator(strat, build_xz(strat))
        self.assertAlmostEqual(ev.junk_norm, 0.25)

    def test_no_overlap(self):
        # Bob's register ends up orthogonal to everything the reference state puts there
        one = np.ones((1, 1))
        strat = Strategy(2, 1, 2, np.array([1, -1]) / np.sqrt(2),
                         { "0": (one,), "1": (one,) },
                         { "0": (PAULI_Z,), "1": (PAULI_Z,) })
        ops = ExtractedOperators(2, 1, 2, [one, PAULI_X], [one, PAULI_Z])
        with self.assertRaises(JunkExtractionError) as cm:
            DistanceEvaluator(strat, ops)
        self.assertLess(cm.exception.overlap, 1e-12)
        self.assertIsInstance(cm.exception, VerificationError)

    def test_bad_args(self):
        strat = ideal_strategy(2)
        ev = DistanceEvaluator(strat, build_xz(strat))
        with self.assertRaises(VerificationError):
            ev.distance("00", "00", "greedy")
        with self.assertRaises(VerificationError):
            ev.extracted("0", "00")
        with self.assertRaises(VerificationError):
            DistanceEvaluator(ideal_strategy(4), build_xz(strat))


if __name__ == '__main__':
    test.main()
