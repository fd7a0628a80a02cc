import os, sys, pdb
import unittest as test

import numpy as np

from parchsh.testing import ArrayTestCase, TEST_SEED
from parchsh.strategy import *
from parchsh.game import subtest_table, exact_value
from parchsh.extract import *

def same_strategy(s1, s2):
    if not np.allclose(s1.state, s2.state):
        return False
    for party in Party:
        t1, t2 = s1.table(party), s2.table(party)
        if set(t1) != set(t2):
            return False
        for q in t1:
            if not all(np.allclose(a, b) for a, b in zip(t1[q], t2[q])):
                return False
    return True

class TestRelabel(ArrayTestCase):

    def setUp(self):
        self.strat = random_strategy(6, 2, 2, np.random.default_rng(TEST_SEED))
        self.table = subtest_table(self.strat)

    def test_alice_bit(self):
        h = 3
        for k in range(h):
            relab = relabel_alice_bit(self.strat, k)
            flip = 1 << (h - 1 - k)
            ints = np.arange(2**h)
            self.assertAllClose(subtest_table(relab), self.table[:, ints ^ flip, :])

    def test_bob_bit(self):
        h = 3
        relab = relabel_bob_bit(self.strat, 1)
        ints = np.arange(2**h)
        self.assertAllClose(subtest_table(relab), self.table[:, :, ints ^ 2])

    def test_value_preserved(self):
        value = exact_value(self.strat).value
        relab = relabel_bob_bit(relabel_alice_bit(self.strat, 0), 2)
        self.assertAlmostEqual(exact_value(relab).value, value)
        self.assertTrue(validate(relab).passed)

    def test_involution(self):
        for k in range(3):
            self.assertTrue(same_strategy(
                relabel_alice_bit(relabel_alice_bit(self.strat, k), k), self.strat))
            self.assertTrue(same_strategy(
                relabel_bob_bit(relabel_bob_bit(self.strat, k), k), self.strat))
        self.assertFalse(same_strategy(relabel_alice_bit(self.strat, 0), self.strat))

    def test_bad_bit(self):
        with self.assertRaises(ExtractionError):
            relabel_alice_bit(self.strat, 3)
        with self.assertRaises(ExtractionError):
            relabel_bob_bit(self.strat, -1)
        with self.assertRaises(ExtractionError):
            relabel_alice_bit(self.strat, True)
        with self.assertRaises(ExtractionError):
            relabel_bob_bit(self.strat, 1.0)
        self.assertTrue(same_strategy(relabel_alice_bit(self.strat, np.int64(2)),
                                      relabel_alice_bit(self.strat, 2)))

    def test_relabel_by(self):
        relab, steps = relabel_by(self.strat, Party.B, BitString("101"))
        self.assertEqual(steps, [RelabelStep("B", 0), RelabelStep("B", 2)])
        self.assertEqual(steps[1].to_dict(), { "party": "B", "bit": 2 })
        self.assertAllClose(subtest_table(relab)[:, :, 0], self.table[:, :, 5])
        self.assertTrue(same_strategy(apply_transcript(self.strat, steps), relab))

        same, steps = relabel_by(self.strat, Party.A, BitString.zeros(3))
        self.assertEqual(steps, [])
        self.assertTrue(same_strategy(same, self.strat))

    def test_relabel_step(self):
        s1 = relabel(self.strat, RelabelStep("A", 1))
        self.assertTrue(same_strategy(s1, relabel_alice_bit(self.strat, 1)))

class TestRandomRelabels(test.TestCase):

    def test_value_and_involution(self):
        rng = np.random.default_rng(TEST_SEED)
        for i in range(100):
            strat = random_strategy(2, 2, 2, rng)
            value = exact_value(strat).value
            moved = strat
            for j in range(rng.integers(1, 6)):
                relab = relabel_alice_bit if rng.random() < 0.5 else relabel_bob_bit
                moved = relab(moved, rng.integers(moved.half))
            self.assertAlmostEqual(exact_value(moved).value, value, delta=1e-9)

            for relab in (relabel_alice_bit, relabel_bob_bit):
                back = relab(relab(moved, np.int64(0)), 0)
                for party in Party:
                    for q, obs in moved.table(party).items():
                        for a, b in zip(obs, back.table(party)[q]):
                            self.assertLessEqual(np.max(np.abs(a - b)), 1e-12)


if __name__ == '__main__':
    test.main()
