"""
measurement of the condition norms that the extracted operators must make small:

  eps1  max_{k≠ℓ} ‖X'_k Z'_ℓ ψ - Z'_ℓ X'_k ψ‖         (commutation)
  eps2  max_k ‖X'_k ψ - Z'_{k+n/2 mod n} ψ‖           (identification across the parties)
  eps3  max_k ‖Z'_k X'_k ψ + X'_k Z'_k ψ‖             (anticommutation)

and the composite conditions over strings s, t ∈ {0,1}^n,

  anticommute  ‖Z'^t X'^s ψ - (-1)^{s·t} X'^s Z'^t ψ‖
  swap         ‖Z'^{s_b s_a} ψ - (-1)^{s_a·s_b} X'^s ψ‖

where M^s is the ordered product with the smallest index leftmost.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import linalg
from ..strategy import Strategy, BitString
from ..extract import ExtractedOperators
from .exceptions import VerificationError

__all__ = [ 'DEF_EXHAUSTIVE_MAX_N', 'DEF_SAMPLES', 'DEF_SAMPLE_SEED', 'ConditionNorms',
            'measure_epsilons', 'measure_general_conditions', 'SideProducts' ]

log = logging.getLogger(__name__)

DEF_EXHAUSTIVE_MAX_N = 6
DEF_SAMPLES = 10000
DEF_SAMPLE_SEED = 20170901

@dataclass
class ConditionNorms:
    """
    the measured condition norms.  The general maxima are None until
    :py:func:`measure_general_conditions` has been run; ``samples`` and ``seed`` are recorded
    when the general conditions were sampled rather than enumerated.
    """
    eps1: float = 0.0
    eps2: float = 0.0
    eps3: float = 0.0
    general_anticommute_max: Optional[float] = None
    general_swap_max: Optional[float] = None
    coverage: str = "exhaustive"
    samples: int = 0
    seed: Optional[int] = None

    @property
    def eps(self) -> float:
        return max(self.eps1, self.eps2, self.eps3)

    def to_dict(self) -> dict:
        out = { "eps1": self.eps1, "eps2": self.eps2, "eps3": self.eps3,
                "general_anticommute_max": self.general_anticommute_max,
                "general_swap_max": self.general_swap_max, "coverage": self.coverage }
        if self.coverage == "sampled":
            out.update({ "samples": self.samples, "seed": self.seed })
        return out

def _check_dims(strategy: Strategy, ops: ExtractedOperators):
    if (ops.n, ops.dim_a, ops.dim_b) != (strategy.n, strategy.dim_a, strategy.dim_b):
        raise VerificationError("operators (n=%d, %dx%d) do not match the strategy (n=%d, %dx%d)"
                                % (ops.n, ops.dim_a, ops.dim_b,
                                   strategy.n, strategy.dim_a, strategy.dim_b))

def _norm(v) -> float:
    return float(np.linalg.norm(v))

def measure_epsilons(strategy: Strategy, ops: ExtractedOperators) -> ConditionNorms:
    """
    return eps1, eps2 and eps3 for the operators evaluated on the strategy's state
    """
    _check_dims(strategy, ops)
    psi = strategy.psi
    n = ops.n
    xpsi = [ops.apply(i, "x", psi) for i in range(n)]
    zpsi = [ops.apply(i, "z", psi) for i in range(n)]

    out = ConditionNorms()
    for k in range(n):
        out.eps2 = max(out.eps2, _norm(xpsi[k] - zpsi[ops.partner(k)]))
        out.eps3 = max(out.eps3, _norm(ops.apply(k, "z", xpsi[k]) + ops.apply(k, "x", zpsi[k])))
        for l in range(n):
            if l != k:
                out.eps1 = max(out.eps1,
                               _norm(ops.apply(k, "x", zpsi[l]) - ops.apply(l, "z", xpsi[k])))
    return out

class SideProducts(object):
    """
    the ordered products X'^s and Z'^t restricted to each party, tabulated for every string on
    that party's n/2 indices.  A full product M^s is the Alice product for s_a tensored with the
    Bob product for s_b, since operators on different parties commute.
    """
    def __init__(self, ops: ExtractedOperators):
        self.ops = ops
        h = ops.half
        self.h = h
        def _table(fam):
            return [linalg.ordered_product(fam, BitString.from_int(i, h)) for i in range(2**h)]
        self.xa = _table(ops.x_ops[:h])
        self.za = _table(ops.z_ops[:h])
        self.xb = _table(ops.x_ops[h:])
        self.zb = _table(ops.z_ops[h:])

    def split(self, s: int):
        return s >> self.h, s & (2**self.h - 1)

    def x(self, s: int, psi: np.ndarray) -> np.ndarray:
        """
        apply X'^s, with s given as the integer value of the n-bit string
        """
        sa, sb = self.split(s)
        return self.xa[sa] @ psi @ self.xb[sb].T

    def z(self, t: int, psi: np.ndarray) -> np.ndarray:
        ta, tb = self.split(t)
        return self.za[ta] @ psi @ self.zb[tb].T

def _parity(x: int) -> int:
    return bin(x).count("1") & 1

def measure_general_conditions(strategy: Strategy, ops: ExtractedOperators,
                               coverage: str=None, norms: ConditionNorms=None,
                               samples: int=DEF_SAMPLES, seed: int=DEF_SAMPLE_SEED,
                               exhaustive_max_n: int=DEF_EXHAUSTIVE_MAX_N) -> ConditionNorms:
    """
    compute the maxima of the composite anticommutation and swap conditions.
    :param coverage:  "exhaustive" to enumerate every s and t, "sampled" to draw ``samples``
                      uniform pairs from a generator seeded with ``seed``; by default the
                      conditions are enumerated iff n ≤ ``exhaustive_max_n``
    :param norms:     a ConditionNorms to complete; a new one is made if not given
    """
    _check_dims(strategy, ops)
    n = ops.n
    if coverage is None:
        coverage = "exhaustive" if n <= exhaustive_max_n else "sampled"
    if coverage not in ("exhaustive", "sampled"):
        raise VerificationError("unrecognized coverage mode: " + str(coverage))
    if norms is None:
        norms = ConditionNorms()

    prods = SideProducts(ops)
    psi = strategy.psi
    h = ops.half

    if coverage == "exhaustive":
        svals = np.arange(2**n)
        pairs = ((s, t) for s in range(2**n) for t in range(2**n))
        norms.samples, norms.seed = 0, None
    else:
        rng = np.random.default_rng(seed)
        drawn = rng.integers(0, 2**n, size=(samples, 2))
        svals = np.unique(drawn[:, 0])
        pairs = ((int(s), int(t)) for s, t in drawn)
        norms.samples, norms.seed = int(samples), seed
    norms.coverage = coverage

    xs = {}
    zs = {}
    def _xs(s):
        if s not in xs:
            xs[s] = prods.x(s, psi)
        return xs[s]
    def _zs(t):
        if t not in zs:
            zs[t] = prods.z(t, psi)
        return zs[t]

    anti = 0.0
    for s, t in pairs:
        sign = -1.0 if _parity(s & t) else 1.0
        lhs = prods.z(t, _xs(s))
        rhs = prods.x(s, _zs(t))
        anti = max(anti, _norm(lhs - sign * rhs))

    swap = 0.0
    mask = 2**h - 1
    for s in svals:
        s = int(s)
        sa, sb = s >> h, s & mask
        t = (sb << h) | sa
        sign = -1.0 if _parity(sa & sb) else 1.0
        swap = max(swap, _norm(_zs(t) - sign * _xs(s)))

    norms.general_anticommute_max = anti
    norms.general_swap_max = swap
    log.debug("general conditions (%s): anticommute %.3g, swap %.3g", coverage, anti, swap)
    return norms
