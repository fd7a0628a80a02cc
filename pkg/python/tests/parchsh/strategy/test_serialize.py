import os, sys, pdb, json, io
import unittest as test
from pathlib import Path

import numpy as np

from parchsh.testing import *
from parchsh.strategy import *
from parchsh.strategy import serialize as ser

basedir = Path(__file__).resolve().parents[4]
schemadir = str(basedir / "model")
tmpd = None

def setUpModule():
    global tmpd
    ensure_tmpdir()
    tmpd = tmpdir()

def tearDownModule():
    rmtmpdir()

class TestSerialize(ArrayTestCase):

    def setUp(self):
        self.tf = Tempfiles(tmpd)
        self.strat = noisy_strategy(4, NoiseSpec("bob-rotation", 0.37))

    def tearDown(self):
        self.tf.clean()

    def test_schema_dir(self):
        self.assertTrue(os.path.samefile(ser.get_schema_dir(), schemadir))
        self.assertTrue(os.path.exists(os.path.join(schemadir, ser.STRATEGY_SCHEMA)))

    def test_to_dict(self):
        data = strategy_to_dict(ideal_strategy(2))
        self.assertEqual(data['n'], 2)
        self.assertEqual(data['dim_A'], 2)
        self.assertEqual(data['state'], [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [-0.5, 0.0]])
        self.assertEqual(list(data['alice_obs'].keys()), ["0", "1"])
        self.assertEqual(data['alice_obs']["0"], [[[[0.0, 0.0], [1.0, 0.0]],
                                                   [[1.0, 0.0], [0.0, 0.0]]]])
        self.assertEqual(ser.validate_document(data, ser.STRATEGY_SCHEMA, schemadir), [])

    def test_file_exact(self):
        path = self.tf.track("strategy.json")
        dump_strategy(self.strat, path)
        back = load_strategy(path)

        self.assertEqual(back.n, 4)
        self.assertTrue(np.array_equal(back.state, self.strat.state))
        for party in Party:
            for q in all_bitstrings(2):
                for k in range(2):
                    self.assertTrue(np.array_equal(back.observable(party, q, k),
                                                   self.strat.observable(party, q, k)))

    def test_stream(self):
        buf = io.StringIO()
        dump_strategy(ideal_strategy(2), buf)
        buf.seek(0)
        self.assertEqual(load_strategy(buf).dim_b, 2)

    def test_schema_violation(self):
        data = strategy_to_dict(ideal_strategy(2))
        del data['bob_obs']
        with self.assertRaises(StrategyFormatError) as cm:
            strategy_from_dict(data, "goober.json")
        self.assertTrue(cm.exception.errors)
        self.assertIn("goober.json", str(cm.exception))

        data = strategy_to_dict(ideal_strategy(2))
        data['alice_obs']['x'] = data['alice_obs']['0']
        self.assertNotEqual(ser.validate_document(data, ser.STRATEGY_SCHEMA, schemadir), [])

    def test_bad_matrix(self):
        data = strategy_to_dict(ideal_strategy(2))
        data['bob_obs']['1'] = [[[[1.0, 0.0]]]]
        with self.assertRaises(StrategyFormatError):
            strategy_from_dict(data)

    def test_unreadable(self):
        path = self.tf.track("bad.json")
        with open(path, 'w') as fd:
            fd.write("{ \"n\": ")
        with self.assertRaises(StrategyFormatError):
            load_strategy(path)
        with self.assertRaises(StrategyFormatError):
            load_strategy(self.tf("goober.json"))

        with open(path, 'w') as fd:
            json.dump([1, 2], fd)
        with self.assertRaises(StrategyFormatError):
            load_strategy(path)

    def test_invalid_but_readable(self):
        # a non-unitary observable is readable; rejecting it is validation's job
        strat = ideal_strategy(2)
        alice = strat.alice_obs
        alice[BitString("0")] = (3 * alice[BitString("0")][0],)
        path = self.tf.track("nonunitary.json")
        dump_strategy(strat.replace(alice_obs=alice), path)
        back = load_strategy(path)
        self.assertIn("unitarity", validate(back).failures())


if __name__ == '__main__':
    test.main()
