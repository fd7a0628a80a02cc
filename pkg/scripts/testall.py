#!/usr/bin/env python3
#
import os, sys, unittest

basedir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
pydir = os.path.join(basedir, "python")
pytestdir = os.path.join(pydir, "tests")
sys.path.insert(0, pydir)
os.environ.setdefault('PARCHSH_SCHEMA_DIR', os.path.join(basedir, "model"))

print("Executing parchsh python tests...")

status = 0
ldr = unittest.TestLoader()
suite = ldr.discover(pytestdir, "test_*.py", pydir)
result = unittest.TextTestRunner().run(suite)
if not result.wasSuccessful():
    status += 1

if status:
    print("NOT OK!")
sys.exit(status)
