"""Irreducible characters of symmetric groups.

Values come from the Murnaghan-Nakayama rule, peeling the longest cycle
first.  The recursion is memoised in a bounded LRU cache whose size can be
changed with :func:`configure_cache`.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache

from .errors import ShapeError
from .partitions import hook_lengths, remove_rim_hooks

DEFAULT_CACHE_ENTRIES = 1 << 20


def centralizer_order_sym(mu) -> int:
    """Order of the centralizer of an element of cycle type ``mu``."""
    out = 1
    for k, m in Counter(mu).items():
        out *= k**m * math.factorial(m)
    return out


def degree_hook(lam) -> int:
    prod = 1
    for row in hook_lengths(lam):
        for h in row:
            prod *= h
    return math.factorial(sum(lam)) // prod


def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1
    s, rest = mu[0], mu[1:]
    total = 0
    for nu, leg in remove_rim_hooks(lam, s):
        v = _mn_cached(nu, rest)
        total += -v if leg % 2 else v
    return total


_mn_cached = lru_cache(maxsize=DEFAULT_CACHE_ENTRIES)(_mn)


def configure_cache(max_entries: int) -> None:
    """Replace the value cache by an empty one holding at most ``max_entries``."""
    global _mn_cached
    if max_entries < 1:
        raise ValueError("cache size must be positive")
    _mn_cached = lru_cache(maxsize=max_entries)(_mn)


def cache_info():
    return _mn_cached.cache_info()


def mn_value(lam, mu) -> int:
    """chi_lam evaluated at an element of cycle type ``mu``."""
    lam = tuple(lam)
    mu = tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ShapeError(f"|{lam}| != |{mu}|")
    return _mn_cached(lam, mu)


def is_p_regular_class(mu, p: int) -> bool:
    """No cycle length divisible by p."""
    return all(part % p for part in mu)
