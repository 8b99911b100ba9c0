"""Integer partitions, beta-sets and the p-abacus.

Partitions are plain tuples of positive integers in weakly decreasing order,
``()`` being the partition of 0.  A p-multipartition is a tuple of exactly p
partitions.  Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .errors import InvalidCoreError

Partition = tuple
MultiPartition = tuple


class CoreData(NamedTuple):
    core: Partition
    quotient: MultiPartition
    weight: int
    sign: int


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(x, int) and x > 0 for x in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple:
    """All partitions of ``n`` in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return tuple(_partitions(n, n))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > j) for j in range(lam[0]))


def hook_lengths(lam: Partition) -> tuple:
    """Hook lengths, one tuple per row of the Young diagram."""
    conj = conjugate(lam)
    return tuple(
        tuple(lam[i] - j + conj[j] - i - 1 for j in range(lam[i]))
        for i in range(len(lam))
    )


def beta_with(lam: Partition, t: int) -> tuple:
    """The ``t``-bead beta-set of ``lam`` (requires ``t >= len(lam)``)."""
    if t < len(lam):
        raise ValueError("bead count smaller than partition length")
    parts = tuple(lam) + (0,) * (t - len(lam))
    return tuple(parts[i] + t - 1 - i for i in range(t))


def beta_set(lam: Partition, p: int) -> tuple:
    """Beta-set with the least padding making the bead count divisible by p."""
    t = len(lam) + (-len(lam)) % p
    return beta_with(lam, t)


def from_beta(beta: Sequence[int]) -> Partition:
    """Recover the partition encoded by a beta-set (any bead count)."""
    b = sorted(beta, reverse=True)
    t = len(b)
    if len(set(b)) != t or (b and b[-1] < 0):
        raise ValueError(f"not a beta-set: {beta!r}")
    return tuple(x for x in (b[i] - (t - 1 - i) for i in range(t)) if x > 0)


def _runner_partition(positions: Sequence[int]) -> Partition:
    # positions on one runner, as row indices
    return from_beta(positions)


def _abacus_slide(beta: Sequence[int], p: int, order: random.Random | None = None):
    """Slide every bead as far up its runner as possible.

    Returns the settled bead set, the number of moves and the total number of
    beads jumped over (the summed leg lengths of the removed p-hooks).  With
    ``order`` given, the next movable bead is chosen at random.
    """
    beads = set(beta)
    moves = 0
    legs = 0
    while True:
        movable = [b for b in beads if b >= p and (b - p) not in beads]
        if not movable:
            break
        b = order.choice(sorted(movable)) if order is not None else min(movable)
        legs += sum(1 for x in range(b - p + 1, b) if x in beads)
        beads.remove(b)
        beads.add(b - p)
        moves += 1
    return beads, moves, legs


def core_quotient_sign(lam: Partition, p: int, t: int | None = None) -> CoreData:
    """p-core, p-quotient, weight and p-sign of ``lam``.

    ``t`` overrides the bead count; it must be a multiple of p and at least
    ``len(lam)``.  Different admissible ``t`` give the same result.
    """
    if t is None:
        beta = beta_set(lam, p)
    else:
        if t % p:
            raise ValueError("bead count must be a multiple of p")
        beta = beta_with(lam, t)
    settled, weight, legs = _abacus_slide(beta, p)
    core = from_beta(settled)
    quotient = tuple(
        _runner_partition([(b - i) // p for b in beta if b % p == i]) for i in range(p)
    )
    return CoreData(core, quotient, weight, -1 if legs % 2 else 1)


def sign_by_random_removal(lam: Partition, p: int, seed: int) -> int:
    """p-sign from a randomly ordered sequence of hook removals."""
    _, _, legs = _abacus_slide(beta_set(lam, p), p, random.Random(seed))
    return -1 if legs % 2 else 1


def p_core(lam: Partition, p: int) -> Partition:
    return core_quotient_sign(lam, p).core


def is_p_core(lam: Partition, p: int) -> bool:
    return is_partition(lam) and p_core(tuple(lam), p) == tuple(lam)


def from_core_quotient(core: Partition, quotient: MultiPartition, p: int) -> Partition:
    """Inverse of the (core, quotient) map."""
    core = tuple(core)
    if not is_p_core(core, p):
        raise InvalidCoreError(f"{format_partition(core)} is not a {p}-core")
    if len(quotient) != p:
        raise ValueError(f"quotient needs exactly {p} slots")
    longest = max((len(q) for q in quotient), default=0)
    t = len(core) + (-len(core)) % p + p * longest
    beads = beta_with(core, t)
    runners = [sorted((b - i) // p for b in beads if b % p == i) for i in range(p)]
    new = []
    for i, q in enumerate(quotient):
        c = len(runners[i])
        new.extend(p * x + i for x in beta_with(tuple(q), c))
    return from_beta(new)


def remove_rim_hooks(lam: Partition, s: int) -> Iterator[tuple]:
    """Yield ``(nu, leg)`` for every rim hook of length ``s`` removable from ``lam``."""
    t = len(lam)
    beta = beta_with(lam, t)
    occupied = set(beta)
    for b in beta:
        target = b - s
        if target < 0 or target in occupied:
            continue
        leg = sum(1 for x in beta if target < x < b)
        new = [x for x in beta if x != b] + [target]
        yield from_beta(new), leg


def dominates(a: Partition, b: Partition) -> bool:
    """``a`` dominates ``b`` (both of the same size)."""
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def is_p_regular(lam: Partition, p: int) -> bool:
    """No part occurs p or more times."""
    run = 1
    for x, y in zip(lam, lam[1:]):
        run = run + 1 if x == y else 1
        if run >= p:
            return False
    return p > 1 or not lam


def staircase(k: int) -> Partition:
    return tuple(range(k, 0, -1))


def add_partitions(a: Partition, b: Partition) -> Partition:
    """Componentwise sum."""
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b) if x + y > 0)


@lru_cache(maxsize=None)
def multipartitions(p: int, w: int) -> tuple:
    """All p-multipartitions of ``w`` in canonical order.

    Ordered by the vector of slot sizes (descending lexicographic), then
    slot by slot in descending lexicographic partition order.
    """
    out = []
    for sizes in _compositions(w, p):
        out.extend(itertools.product(*(enumerate_partitions(k) for k in sizes)))
    return tuple(out)


def _compositions(w: int, p: int) -> Iterator[tuple]:
    if p == 1:
        yield (w,)
        return
    for first in range(w, -1, -1):
        for rest in _compositions(w - first, p - 1):
            yield (first,) + rest


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


def format_multipartition(mp: MultiPartition) -> str:
    return "(" + ",".join(format_partition(q) for q in mp) + ")"


def parse_partition(text: str) -> Partition:
    """Parse ``"(3,2,1)"``, ``"3,2,1"``, ``"3 2 1"`` or ``"()"``."""
    body = text.strip().strip("()[]").replace(",", " ").split()
    lam = tuple(int(x) for x in body)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {text!r}")
    return lam
