"""
Exceptions issued while extracting self-testing operators or searching questions
"""
from .. import base

_sys = base.ParchshSystem("Operator Extraction", "extr")

class ExtractionError(base.ParchshException):
    """
    an exception indicating that the self-testing operators or the distinguished questions
    cannot be constructed from the given strategy
    """
    def __init__(self, msg=None, cause=None, sys=None):
        if not msg and not cause:
            msg = "Unknown extraction error"
        super(ExtractionError, self).__init__(msg, cause, sys or _sys)
