"""
Exceptions issued while building, validating, or reading strategies
"""
from .. import base

_sys = base.ParchshSystem("Strategy Model", "strat")

class StrategyError(base.ParchshException):
    """
    an exception indicating that a strategy is malformed or fails validation
    :param str msg:          the message describing the error that occurred
    :param Exception cause:  the exception that originally caught the error
    :param diagnostics:      the validation report that revealed the problem, if any
    """
    def __init__(self, msg=None, cause=None, diagnostics=None, sys=None):
        if not msg and not cause:
            msg = "Unknown strategy error"
        super(StrategyError, self).__init__(msg, cause, sys or _sys)
        self.diagnostics = diagnostics

class BitStringError(StrategyError, ValueError):
    """
    an exception indicating an illegal bit string or an incompatible bit string operation
    (mismatched lengths, odd-length halving, index out of range)
    """
    def __init__(self, msg=None, cause=None, sys=None):
        if not msg and not cause:
            msg = "Illegal bit string operation"
        super(BitStringError, self).__init__(msg, cause, None, sys)

class StrategyFormatError(StrategyError):
    """
    an exception indicating that a serialized strategy document cannot be read
    :param src:  the file containing the errant document, if known
    """
    def __init__(self, msg=None, cause=None, src=None, errors=None, sys=None):
        if not msg and not cause:
            msg = "Unreadable strategy document"
        if src:
            msg = "%s: %s" % (str(src), msg or str(cause))
        super(StrategyFormatError, self).__init__(msg, cause, None, sys)
        self.source = src
        self.errors = errors or []
