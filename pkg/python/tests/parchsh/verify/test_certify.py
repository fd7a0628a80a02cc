import os, sys, pdb, json, io
import unittest as test
from pathlib import Path

import numpy as np

from parchsh.testing import *
from parchsh.base.config import default_config
from parchsh.linalg import PAULI_X
from parchsh.strategy import *
from parchsh.strategy.serialize import validate_document
from parchsh.game import TSIRELSON
from parchsh.extract import relabel_alice_bit, relabel_bob_bit
from parchsh.verify import *
from parchsh.verify.report import REPORT_SCHEMA, sig

basedir = Path(__file__).resolve().parents[4]
schemadir = str(basedir / "model")

class TestCertifiedEpsilons(test.TestCase):

    def test_zero(self):
        self.assertEqual(certified_epsilons(0.0), { "eps1": 0.0, "eps2": 0.0, "eps3": 0.0 })
        self.assertEqual(certified_epsilons(-1e-15)["eps3"], 0.0)

    def test_values(self):
        d = 0.5 * np.sqrt(2)
        eps = certified_epsilons(0.5)
        self.assertAlmostEqual(eps["eps1"], 32 * d**0.25)
        self.assertAlmostEqual(eps["eps2"], 4 * d**0.25)
        self.assertAlmostEqual(eps["eps3"], 4 * d**0.5)
        self.assertAlmostEqual(eps["eps1"], 8 * eps["eps2"])

    def test_monotone(self):
        last = certified_epsilons(0.0)
        for delta in (1e-6, 1e-3, 0.1, 1.0):
            eps = certified_epsilons(delta)
            for name in eps:
                self.assertGreater(eps[name], last[name])
            last = eps

class TestDistancePairs(test.TestCase):

    def test_exhaustive(self):
        pairs = distance_pairs(2)
        self.assertEqual(len(pairs), 16)
        self.assertEqual(pairs[0], (BitString("00"), BitString("00")))

    def test_sampled(self):
        pairs = distance_pairs(6, samples=10, seed=4)
        self.assertEqual(len(pairs), 11)
        self.assertEqual(pairs[0], (BitString.zeros(6), BitString.zeros(6)))
        self.assertEqual(pairs, distance_pairs(6, samples=10, seed=4))
        for p, q in pairs:
            self.assertEqual((len(p), len(q)), (6, 6))

class TestCertify(test.TestCase):

    def test_ideal(self):
        rep = certify(ideal_strategy(4))
        self.assertEqual(rep.n, 4)
        self.assertAlmostEqual(rep.value, TSIRELSON)
        self.assertAlmostEqual(rep.epsilon, 0.0)
        self.assertAlmostEqual(rep.delta_cert, 0.0)
        self.assertTrue(rep.delta_in_range)
        self.assertAlmostEqual(rep.measured.eps, 0.0)
        self.assertAlmostEqual(rep.measured.general_anticommute_max, 0.0)
        self.assertAlmostEqual(rep.junk_norm, 1.0)
        self.assertAlmostEqual(rep.dist_fixed_max, 0.0)
        self.assertAlmostEqual(rep.dist_opt_max, 0.0)
        self.assertAlmostEqual(rep.few_question_delta, 0.0)
        self.assertEqual(len(rep.distances), 256)
        self.assertEqual(len(rep.pair_norms), 2)
        self.assertEqual(rep.violations, [])
        self.assertTrue(rep.passed)

    def test_bob_rotation(self):
        eta = 0.1
        rep = certify(noisy_strategy(4, NoiseSpec("bob-rotation", eta)), default_config())
        eps = TSIRELSON * (1 - np.cos(eta))
        self.assertAlmostEqual(rep.epsilon, eps)
        self.assertAlmostEqual(rep.delta_cert, 4 * eps)
        self.assertAlmostEqual(rep.measured.eps2, 2 * np.sin(eta / 2))
        for name in ("eps1", "eps2", "eps3"):
            self.assertTrue(rep.flags[name])
            self.assertLessEqual(getattr(rep.measured, name), rep.certified[name])
        self.assertEqual(rep.measured.coverage, "exhaustive")
        self.assertGreater(rep.dist_fixed_max, 0.0)
        self.assertLessEqual(rep.dist_opt_max, rep.dist_fixed_max + 1e-12)
        self.assertTrue(rep.passed)

    def test_distance_grows_with_noise(self):
        last = -1.0
        for eta in (0.0, 0.05, 0.1, 0.2):
            strat = noisy_strategy(2, NoiseSpec("bob-rotation", eta))
            rep = certify(strat)
            d = rep.distances[("00", "00")]["fixed"]
            self.assertAlmostEqual(d, 2 * np.sin(eta / 4))
            self.assertGreater(d, last)
            last = d

    def test_single_pair(self):
        rep = certify(ideal_strategy(2))
        self.assertIsNone(rep.few_question_delta)
        self.assertEqual(len(rep.pair_norms), 1)
        self.assertTrue(rep.passed)

    def test_sampled_coverage(self):
        rep = certify(ideal_strategy(4), coverage="sampled", samples=30)
        self.assertEqual(rep.measured.coverage, "sampled")
        self.assertEqual(rep.measured.samples, 30)
        self.assertEqual(rep.measured.seed, default_config()['verify']['sample_seed'])

    def test_workers(self):
        strat = noisy_strategy(4, NoiseSpec("partial-entanglement", 0.6))
        rep1 = certify(strat, workers=1)
        rep2 = certify(strat, workers=3)
        self.assertEqual(rep1.distances, rep2.distances)

    def test_too_big(self):
        cfg = default_config()
        cfg['certify']['max_n'] = 4
        with self.assertRaises(VerificationError):
            certify(ideal_strategy(6), cfg)

    def test_invalid_strategy(self):
        strat = ideal_strategy(2)
        alice = strat.alice_obs
        alice[BitString("0")] = (2 * PAULI_X,)
        with self.assertRaises(StrategyError) as cm:
            certify(strat.replace(alice_obs=alice))
        self.assertIn("unitarity", cm.exception.diagnostics.failures())

    def test_scaling_ratios(self):
        self.assertIsNone(scaling_ratios(certify(ideal_strategy(2)))["ratio_theorem"])

        rep = certify(noisy_strategy(2, NoiseSpec("bob-rotation", 0.2)))
        ratios = scaling_ratios(rep)
        expect = rep.dist_fixed_max / (2**1.125 * rep.epsilon**0.125)
        self.assertAlmostEqual(ratios["ratio_theorem"], expect)
        self.assertAlmostEqual(ratios["ratio_sqrt"],
                               rep.dist_fixed_max / (2 * np.sqrt(rep.epsilon)))

    def test_deterministic(self):
        rep = certify(deterministic_strategy(2))
        self.assertAlmostEqual(rep.value, 2.0)
        self.assertAlmostEqual(rep.epsilon, TSIRELSON - 2)
        self.assertFalse(rep.delta_in_range)
        self.assertAlmostEqual(rep.junk_norm, 0.5)
        self.assertEqual(rep.search.violations, [])
        self.assertEqual(len(rep.violations), 1)
        self.assertTrue(rep.violations[0].startswith("extraction: X'_1"))
        self.assertFalse(rep.passed)

        rep = certify(deterministic_strategy(4))
        self.assertEqual(len([v for v in rep.violations if v.startswith("extraction:")]), 2)

class TestNoiseGrid(test.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.reports = [ certify(noisy_strategy(n, NoiseSpec("bob-rotation", eta)))
                        for n in (2, 4) for eta in (0.02, 0.05, 0.1) ]

    def test_certified_bounds(self):
        for rep in self.reports:
            for name in ("eps1", "eps2", "eps3"):
                self.assertLessEqual(getattr(rep.measured, name), rep.certified[name] + 1e-9,
                                     msg="n=%d %s" % (rep.n, name))
            self.assertTrue(rep.passed)

    def test_search_guarantees(self):
        for rep in self.reports:
            n, eps = rep.n, rep.epsilon
            self.assertEqual(rep.search.violations, [])
            self.assertGreaterEqual(rep.search.g_star, rep.value - 1e-9)
            for d in rep.delta_per_subtest:
                self.assertLessEqual(d, (n / 2) * eps + 1e-9)
            for vals in rep.search.pair_values.values():
                self.assertGreaterEqual(min(vals), TSIRELSON - n * eps - 1e-9)

    def test_pair_bounds(self):
        for rep in self.reports:
            for k, norms in enumerate(rep.pair_norms):
                self.assertAlmostEqual(norms["delta"], rep.delta_per_subtest[k])
                b = norms["bounds"]
                self.assertLessEqual(norms["alice_anticommute"], b["anticommute"] + 1e-9)
                self.assertLessEqual(norms["bob_anticommute"], b["anticommute"] + 1e-9)
                self.assertLessEqual(norms["x_cross"], b["cross"] + 1e-9)
                self.assertLessEqual(norms["z_cross"], b["cross"] + 1e-9)

    def test_distance_nondecreasing(self):
        dists = [rep.dist_fixed_max for rep in self.reports[:3]]
        self.assertEqual(dists, sorted(dists))
        self.assertGreater(dists[0], 0.0)

def random_relabels(strat, rng, count):
    for i in range(count):
        k = rng.integers(strat.half)
        if rng.random() < 0.5:
            strat = relabel_alice_bit(strat, k)
        else:
            strat = relabel_bob_bit(strat, k)
    return strat

class TestRelabelInvariance(test.TestCase):

    def test_certify(self):
        rng = np.random.default_rng(TEST_SEED)
        for i in range(3):
            strat = random_strategy(4, 2, 2, rng)
            rep1 = certify(strat)
            rep2 = certify(random_relabels(strat, rng, 5))
            self.assertAlmostEqual(rep1.value, rep2.value, delta=1e-9)
            self.assertAlmostEqual(rep1.epsilon, rep2.epsilon, delta=1e-9)
            for name in ("eps1", "eps2", "eps3"):
                self.assertAlmostEqual(getattr(rep1.measured, name),
                                       getattr(rep2.measured, name), delta=1e-8)
            for rep in (rep1, rep2):
                self.assertFalse([v for v in rep.violations if v.startswith("extraction:")])

class TestReport(test.TestCase):

    def setUp(self):
        self.rep = certify(noisy_strategy(4, NoiseSpec("bob-rotation", 0.05)))

    def test_sig(self):
        self.assertEqual(sig(1.23456789012345678), 1.23456789012)
        self.assertIsNone(sig(None))

    def test_to_dict(self):
        data = report_to_dict(self.rep)
        self.assertEqual(list(data.keys())[:4], ["n", "value", "epsilon", "delta_cert"])
        self.assertEqual(data['n'], 4)
        self.assertEqual(data['measured']['coverage'], "exhaustive")
        self.assertEqual(data['search']['q_b_star'], "00")
        self.assertEqual(len(data['search']['pair_questions']), 1)
        self.assertEqual(len(data['pair_norms']), 2)
        self.assertEqual(data['pair_norms'][1]['k'], 1)
        self.assertIn("cross", data['pair_norms'][0]['bounds'])
        self.assertEqual(len(data['distances']), 256)
        self.assertEqual(data['distances'][0]['p'], "0000")
        self.assertTrue(data['passed'])
        self.assertEqual(validate_document(json.loads(json.dumps(data)), REPORT_SCHEMA,
                                           schemadir), [])

    def test_dump(self):
        buf = io.StringIO()
        dump_report(self.rep, buf)
        data = json.loads(buf.getvalue())
        self.assertEqual(data['n'], 4)
        self.assertAlmostEqual(data['value'], TSIRELSON * np.cos(0.05), places=10)


if __name__ == '__main__':
    test.main()
