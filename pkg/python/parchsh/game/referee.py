"""
Monte Carlo simulation of the referee playing the parallel CHSH game against a strategy.

Each round the referee draws q uniformly from {0,1}^n, obtains answers (x, y) from the Born
distribution of the strategy for (q_a, q_b), draws a subtest k uniformly, and scores +4 on a
win and -4 otherwise.  Rounds are split into one chunk per worker; each chunk draws from its
own stream spawned from the root seed, so results are reproducible for a fixed
(seed, workers) pair.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Union

import numpy as np

from ..strategy import Strategy, BitString, born_distribution
from .exceptions import GameError
from .value import GameValue

__all__ = [ 'referee_simulate', 'play_rounds' ]

log = logging.getLogger(__name__)

class _BornCache(object):
    """
    cumulative Born tables keyed by the question pair's integer encoding
    """
    def __init__(self, strategy: Strategy):
        self.strategy = strategy
        self.h = strategy.half
        self._cdfs = {}

    def cdf(self, qa: int, qb: int) -> np.ndarray:
        key = (qa, qb)
        if key not in self._cdfs:
            probs = born_distribution(self.strategy, BitString.from_int(qa, self.h),
                                      BitString.from_int(qb, self.h))
            cdf = np.cumsum(probs.reshape(-1))
            cdf /= cdf[-1]
            self._cdfs[key] = cdf
        return self._cdfs[key]

def play_rounds(strategy: Strategy, rounds: int, rng: np.random.Generator,
                cache: _BornCache=None) -> np.ndarray:
    """
    play the given number of rounds and return the array of ±4 scores
    """
    h = strategy.half
    if cache is None:
        cache = _BornCache(strategy)

    qa = rng.integers(0, 2**h, size=rounds)
    qb = rng.integers(0, 2**h, size=rounds)
    k = rng.integers(0, h, size=rounds)
    u = rng.random(size=rounds)

    outcome = np.empty(rounds, dtype=np.int64)
    pair = qa * 2**h + qb
    for key in np.unique(pair):
        sel = pair == key
        cdf = cache.cdf(int(key) >> h, int(key) & (2**h - 1))
        idx = np.searchsorted(cdf, u[sel], side='right')
        outcome[sel] = np.minimum(idx, cdf.size - 1)

    # outcome = x * 2^h + y; bit k of a string sits at shift h-1-k
    x, y = outcome >> h, outcome & (2**h - 1)
    shift = h - 1 - k
    product = ((qa >> shift) & 1) & ((qb >> shift) & 1)
    answer_xor = ((x >> shift) & 1) ^ ((y >> shift) & 1)
    return np.where(product == answer_xor, 4.0, -4.0)

def _root_sequence(rng: Union[int, np.random.Generator, None]) -> np.random.SeedSequence:
    if isinstance(rng, np.random.Generator):
        return np.random.SeedSequence(int(rng.integers(0, 2**63)))
    return np.random.SeedSequence(rng)

def referee_simulate(strategy: Strategy, rounds: int, rng: Union[int, np.random.Generator]=None,
                     workers: int=1) -> GameValue:
    """
    estimate the game value by simulating ``rounds`` rounds of the referee protocol.
    :param rng:      an integer seed or a numpy Generator; the estimate is deterministic given
                     either (together with ``workers``)
    :param workers:  the number of chunks (and threads) the rounds are split across
    :return:  a sampled GameValue carrying the sample mean and its standard error
    """
    if not isinstance(rounds, (int, np.integer)) or rounds < 1:
        raise GameError("rounds must be a positive integer: %s" % str(rounds))
    if workers < 1:
        raise GameError("workers must be a positive integer: %s" % str(workers))
    workers = min(int(workers), int(rounds))

    root = _root_sequence(rng)
    streams = [np.random.default_rng(s) for s in root.spawn(workers)]
    sizes = [len(c) for c in np.array_split(np.arange(rounds), workers)]
    cache = _BornCache(strategy)

    log.debug("simulating %d rounds over %d worker(s)", rounds, workers)
    if workers == 1:
        scores = [play_rounds(strategy, sizes[0], streams[0], cache)]
    else:
        # tables are filled before the threads start so the cache is only read concurrently
        h = strategy.half
        for qa in range(2**h):
            for qb in range(2**h):
                cache.cdf(qa, qb)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(lambda a: play_rounds(strategy, a[0], a[1], cache),
                                   zip(sizes, streams)))

    scores = np.concatenate(scores)
    mean = float(scores.mean())
    stderr = float(scores.std(ddof=1) / np.sqrt(rounds)) if rounds > 1 else 0.0
    seed = int(rng) if isinstance(rng, (int, np.integer)) else None
    return GameValue(mean, "sampled", int(rounds), stderr, seed, workers)
