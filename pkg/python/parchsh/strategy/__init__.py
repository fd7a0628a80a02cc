"""
The model of the players' behaviour in the parallel CHSH game:  bit strings, strategies
(a shared state plus observable families per question), strategy generators, and the JSON
strategy format.
"""
from .exceptions import StrategyError, BitStringError, StrategyFormatError
from .bits import BitString, all_bitstrings, as_bitstring
from .model import (Party, Strategy, NoiseSpec, StrategyDiagnostics, NOISE_MODELS, validate,
                    joint_projector, answer_projectors, born_distribution, sample_answers)
from .generate import (ideal_strategy, noisy_strategy, deterministic_strategy, random_strategy,
                       permute_subtests, strategy_from_pairs)
from .serialize import dump_strategy, load_strategy, strategy_to_dict, strategy_from_dict
