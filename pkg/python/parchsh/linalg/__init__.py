"""
Dense complex linear algebra primitives used by every other parchsh subpackage
"""
from .core import *
