"""
Exceptions issued by the verifier
"""
from .. import base

_sys = base.ParchshSystem("Self-Test Verifier", "verf")

class VerificationError(base.ParchshException):
    """
    an exception indicating that a verification stage cannot be carried out on its inputs
    """
    def __init__(self, msg=None, cause=None, sys=None):
        if not msg and not cause:
            msg = "Unknown verification error"
        super(VerificationError, self).__init__(msg, cause, sys or _sys)

class JunkExtractionError(VerificationError):
    """
    an exception indicating that the junk state cannot be extracted because the isometry's
    output has (numerically) no overlap with the ideal state
    :param float overlap:  the norm of the partial inner product that was found
    """
    def __init__(self, overlap=None, msg=None, cause=None, sys=None):
        self.overlap = overlap
        if not msg:
            msg = "Isometry output carries no correlation with the ideal state"
            if overlap is not None:
                msg += " (overlap %.3g)" % overlap
        super(JunkExtractionError, self).__init__(msg, cause, sys)
