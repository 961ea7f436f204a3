"""
Series Kernels
Alternating k-sums of the far-user series in extended precision

    G(z) = sum_k omega_k E1(k z)
    H(z) = sum_k omega_k [e^(-k z) - (1 + k z) E1(k z)]

so that sum_k omega_k Omega(x, k S) = x H(S / x). The weights reach ~1e11 at
L = 18 and cancel almost completely, so a double-precision k-sum keeps only a
few digits. Each weight vector is tabulated once with mpmath and served from
piecewise Chebyshev interpolants; past the tabulated range the terms decay
fast enough for a plain double sum.
"""

import logging
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np
from mpmath.ctx_mp import MPContext
from numpy.polynomial import chebyshev
from scipy import special

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

PIECE_DEGREE = 40
MAX_PIECE_WIDTH = 0.5
# k * width / 2 stays <= 4.5, which degree 40 resolves to double precision
PIECE_SPAN = 9.0
DIRECT_MARGIN = 3.0
GUARD_DIGITS = 30

_build_lock = threading.Lock()


def _to_mp(ctx: MPContext, value: Fraction):
    return ctx.mpf(value.numerator) / value.denominator


class SeriesKernel:
    """
    G and H for one weight vector

    Near z = 0, G carries -s0 ln z and H carries s0 ln z + s1 z ln z, where
    s0 = sum omega_k and s1 = sum k omega_k. The tables hold what is left
    after removing those terms, which is entire in z.
    """

    def __init__(self, weights: Tuple[Fraction, ...]):
        l_terms = len(weights)
        s0 = sum(weights, Fraction(0))
        s1 = sum((k * w for k, w in enumerate(weights, 1)), Fraction(0))

        self.weights = np.array([float(w) for w in weights])
        self.k = np.arange(1, l_terms + 1, dtype=float)
        self.s0 = float(s0)
        self.s1 = float(s1)

        # beyond z_direct every |omega_k| e^(-k z) is below e^(-3k)
        reach = max(
            [math.log(abs(w)) / k for k, w in enumerate(self.weights, 1) if abs(w) > 1.0],
            default=0.0,
        )
        self.width = min(MAX_PIECE_WIDTH, PIECE_SPAN / l_terms)
        self.pieces = max(1, math.ceil((reach + DIRECT_MARGIN) / self.width))
        self.z_direct = self.pieces * self.width

        ctx = MPContext()
        magnitude = max(float(np.max(np.abs(self.weights))), 1.0)
        ctx.dps = GUARD_DIGITS + int(math.log10(magnitude)) + 1
        mp_weights = [_to_mp(ctx, w) for w in weights]
        mp_s0, mp_s1 = _to_mp(ctx, s0), _to_mp(ctx, s1)

        nodes = chebyshev.chebpts1(PIECE_DEGREE + 1)
        self._g_coef = np.empty((self.pieces, PIECE_DEGREE + 1))
        self._h_coef = np.empty((self.pieces, PIECE_DEGREE + 1))
        for i in range(self.pieces):
            z = i * self.width + (nodes + 1.0) * self.width / 2.0
            values = np.array([self._regular_parts(ctx, mp_weights, mp_s0, mp_s1, zj) for zj in z])
            coef = chebyshev.chebfit(nodes, values, PIECE_DEGREE)
            self._g_coef[i] = coef[:, 0]
            self._h_coef[i] = coef[:, 1]

        self._g_coef.setflags(write=False)
        self._h_coef.setflags(write=False)
        logger.info(
            f"Tabulated series kernel: L={l_terms}, {self.pieces} pieces up to z={self.z_direct:.3g}, "
            f"{ctx.dps} digits"
        )

    @staticmethod
    def _regular_parts(ctx: MPContext, weights: List, s0, s1, z: float) -> Tuple[float, float]:
        z = ctx.mpf(z)
        log_z = ctx.log(z)
        g = ctx.mpf(0)
        h = ctx.mpf(0)
        for k, w in enumerate(weights, 1):
            kz = k * z
            e1 = ctx.e1(kz)
            g += w * e1
            h += w * (ctx.exp(-kz) - (1 + kz) * e1)
        return float(g + s0 * log_z), float(h - s0 * log_z - s1 * z * log_z)

    def _tabulated(self, coef: np.ndarray, z: np.ndarray) -> np.ndarray:
        index = np.minimum((z / self.width).astype(int), self.pieces - 1)
        t = 2.0 * (z - index * self.width) / self.width - 1.0
        return chebyshev.chebval(t, coef[index].T, tensor=False)

    def _direct(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        kz = np.outer(z, self.k)
        e1 = special.exp1(kz)
        g = e1 @ self.weights
        h = (np.exp(-kz) - (1.0 + kz) * e1) @ self.weights
        return g, h

    def _split(self, z: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if np.any(~(z > 0)):
            raise ValueError("Series kernels require z > 0")
        return z, z < self.z_direct

    def g(self, z: ArrayLike) -> np.ndarray:
        """G(z) for z > 0"""
        z, near = self._split(z)
        out = np.empty_like(z)
        if np.any(near):
            zn = z[near]
            out[near] = self._tabulated(self._g_coef, zn) - self.s0 * np.log(zn)
        if not np.all(near):
            out[~near] = self._direct(z[~near])[0]
        return out

    def h(self, z: ArrayLike) -> np.ndarray:
        """H(z) for z > 0"""
        z, near = self._split(z)
        out = np.empty_like(z)
        if np.any(near):
            zn = z[near]
            log_z = np.log(zn)
            out[near] = self._tabulated(self._h_coef, zn) + (self.s0 + self.s1 * zn) * log_z
        if not np.all(near):
            out[~near] = self._direct(z[~near])[1]
        return out


@lru_cache(maxsize=8)
def _cached_kernel(weights: Tuple[Fraction, ...]) -> SeriesKernel:
    return SeriesKernel(weights)


def series_kernel(weights: Sequence[Union[Fraction, float]]) -> SeriesKernel:
    """
    Kernel for a weight vector, built once per process

    Fractions are taken exactly and floats at their binary value.
    """
    key = tuple(w if isinstance(w, Fraction) else Fraction(float(w)) for w in weights)
    with _build_lock:
        return _cached_kernel(key)
