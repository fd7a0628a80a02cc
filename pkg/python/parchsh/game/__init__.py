"""
The parallel CHSH non-local game:  the win rule, the subtest CHSH functional, exact game
values, and a Monte Carlo referee.
"""
from .exceptions import GameError
from .value import (TSIRELSON, CLASSICAL_MAX, DEF_EXHAUSTIVE_MAX_N, GameValue, Correlator, win,
                    win_probability, chsh_correlators, subtest_value, correlation_table,
                    subtest_table, exact_value, question_average, question_averages)
from .referee import referee_simulate, play_rounds
