"""
Exceptions issued while evaluating or simulating the parallel CHSH game
"""
from .. import base

_sys = base.ParchshSystem("Game Evaluation", "game")

class GameError(base.ParchshException):
    """
    an exception indicating that a game quantity cannot be computed for the given inputs (e.g.
    an out-of-range subtest index or a strategy too large for an exhaustive sum)
    """
    def __init__(self, msg=None, cause=None, sys=None):
        if not msg and not cause:
            msg = "Unknown game evaluation error"
        super(GameError, self).__init__(msg, cause, sys or _sys)
