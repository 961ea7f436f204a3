"""
Quadrature Building Blocks
Chebyshev nodes, round compositions and the alternating series weights
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Tuple

import numpy as np

from backend.analytic.schemas import Composition
from configs.settings import settings

logger = logging.getLogger(__name__)


class CompositionLimitError(RuntimeError):
    """Raised when the number of round compositions exceeds the configured cap"""
    pass


def chebyshev_nodes(n: int) -> np.ndarray:
    """Gauss-Chebyshev nodes cos((2k-1) pi / 2n), k = 1..n, strictly decreasing"""
    if n < 1:
        raise ValueError(f"Node count must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    return np.cos((2 * k - 1) * np.pi / (2 * n))


def composition_count(t: int, n: int) -> int:
    """Number of ways to spread t rounds over n nodes, C(t+n-1, n-1)"""
    return math.comb(t + n - 1, n - 1)


def enumerate_compositions(t: int, n: int, cap: Optional[int] = None) -> Tuple[Composition, ...]:
    """
    Enumerate every composition of t rounds over n nodes

    Args:
        t: Rounds T >= 1
        n: Node count N >= 1
        cap: Maximum tolerated count (defaults to settings.COMPOSITION_CAP)

    Returns:
        Tuple of compositions, each with multinomial weight T! / prod(p_n!)

    Raises:
        CompositionLimitError: If C(t+n-1, n-1) exceeds the cap
    """
    if t < 1 or n < 1:
        raise ValueError(f"Rounds and node count must be >= 1, got t={t}, n={n}")
    limit = settings.COMPOSITION_CAP if cap is None else cap
    count = composition_count(t, n)
    if count > limit:
        raise CompositionLimitError(
            f"{count} compositions for T={t}, N={n} exceed the cap of {limit}"
        )
    return _enumerate(t, n)


@lru_cache(maxsize=32)
def _enumerate(t: int, n: int) -> Tuple[Composition, ...]:
    t_factorial = math.factorial(t)
    compositions = []
    for picks in combinations_with_replacement(range(n), t):
        parts = [0] * n
        for node in picks:
            parts[node] += 1
        weight = t_factorial
        for p in parts:
            weight //= math.factorial(p)
        compositions.append(Composition(parts=tuple(parts), weight=weight))

    logger.debug(f"Enumerated {len(compositions)} compositions for T={t}, N={n}")
    return tuple(compositions)


@lru_cache(maxsize=16)
def omega_fractions(l: int) -> Tuple[Fraction, ...]:
    """
    Alternating series weights omega_1..omega_L as exact rationals

    omega_k = (-1)^(L/2+k) sum_j j^(L/2+1) / (L/2)! C(L/2, j) C(2j, j) C(j, k-j)
    with j running from floor((k+1)/2) to min(k, L/2). The weights sum to
    zero exactly.

    Raises:
        ValueError: If l is odd or below 2
    """
    if l < 2 or l % 2:
        raise ValueError(f"Series length must be even and >= 2, got {l}")

    half = l // 2
    coefficients = []
    for k in range(1, l + 1):
        total = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            total += Fraction(
                j ** (half + 1) * math.comb(half, j) * math.comb(2 * j, j) * math.comb(j, k - j),
                math.factorial(half),
            )
        sign = -1 if (half + k) % 2 else 1
        coefficients.append(sign * total)
    return tuple(coefficients)


@lru_cache(maxsize=16)
def omega_coefficients(l: int) -> Tuple[float, ...]:
    """Series weights rounded once to double precision"""
    return tuple(float(w) for w in omega_fractions(l))
