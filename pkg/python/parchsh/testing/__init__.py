"""
test infrastructure and utilities usable throughout the parchsh tests
"""
import os, shutil
import unittest as test

import numpy as np

__all__ = [
    'ensure_tmpdir', 'tmpdir', 'rmtmpdir', 'Tempfiles', 'ArrayTestCase', 'TEST_SEED'
]

tmpname = "_test"

TEST_SEED = 20170901

def tmpdir(basedir=None, dirname=None):
    """
    return the name of a temporary directory where test inputs and outputs can be placed.
    :argument str basedir: the tmp directory's parent directory (default: the current
                           working directory)
    :argument str dirname: the desired name for the directory
    """
    if not dirname:
        dirname = tmpname + str(os.getpid())
    if not basedir:
        basedir = os.getcwd()
    return os.path.join(basedir, dirname)

def ensure_tmpdir(basedir=None, dirname=None):
    """
    ensure the existance of the temporary directory named by :py:func:`tmpdir`.  It is not
    cleaned up after use; call :py:func:`rmtmpdir` for that.
    :return str: the path to the temporary directory
    """
    tdir = tmpdir(basedir, dirname)
    if not os.path.isdir(tdir):
        os.mkdir(tdir)
    return tdir

def rmtmpdir(basedir=None, dirname=None):
    """
    remove the temporary directory named by :py:func:`tmpdir` and all its contents
    """
    tdir = tmpdir(basedir, dirname)
    if os.path.exists(tdir):
        shutil.rmtree(tdir)

class Tempfiles(object):
    """
    a tracker for temporary files written during a test.  Call the instance with a relative
    name to get a full path; use track() for files that clean() should remove.
    """

    def __init__(self, tempdir=None, autoclean=False):
        if not tempdir:
            tempdir = ensure_tmpdir()
        assert os.path.exists(tempdir)
        self._root = tempdir
        self._files = set()
        self._autoclean = autoclean

    @property
    def root(self):
        return self._root

    def __call__(self, child):
        return os.path.join(self.root, child)

    def track(self, filename):
        self._files.add(filename)
        return self(filename)

    def clean(self):
        while self._files:
            path = self(self._files.pop())
            if os.path.isdir(path):
                shutil.rmtree(path)
            elif os.path.exists(path):
                os.remove(path)

    def __del__(self):
        if self._autoclean:
            self.clean()

class ArrayTestCase(test.TestCase):
    """
    a TestCase with assertions for comparing numpy values
    """

    def assertAllClose(self, actual, expected, atol=1e-10, msg=None):
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        self.assertEqual(actual.shape, expected.shape, msg)
        if not np.allclose(actual, expected, rtol=0, atol=atol):
            diff = np.max(np.abs(actual - expected))
            self.fail(msg or "arrays differ by up to %g (tolerance %g)" % (diff, atol))

    def assertUnitary(self, u, atol=1e-10):
        u = np.asarray(u)
        self.assertAllClose(u.conj().T @ u, np.eye(u.shape[1]), atol)
