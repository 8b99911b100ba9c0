"""Scopes classes of p-blocks of a fixed weight.

Cores live on a p-runner abacus.  A Scopes move swaps two adjacent runners
i-1, i whose bead counts differ by k >= w (runner i fuller); it shrinks the
core by k and preserves the Morita class of the weight-w block.  Scanning
the p bead counts t0, ..., t0+p-1 also covers the wrap-around pair of
runners.  A core without an admissible move is *reduced*; reduced cores
represent the Scopes classes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import EnumerationIncompleteError, InternalConsistencyError, InvalidCoreError
from .partitions import beta_with, conjugate, format_partition, from_beta, is_p_core


@dataclass(frozen=True)
class AbacusCounts:
    p: int
    t: int
    counts: tuple

    def core(self) -> tuple:
        return from_beta([self.p * x + i for i, a in enumerate(self.counts) for x in range(a)])


@dataclass(frozen=True)
class ScopesClass:
    core: tuple
    w: int
    p: int
    partner: tuple | None = None

    @property
    def self_paired(self) -> bool:
        return self.partner == self.core


@dataclass(frozen=True)
class Pairing:
    classes: tuple  # tuples of one or two cores, first is the smaller in enumeration order
    upper_bound: int


def scopes_count(p: int, w: int) -> int:
    """Number of Scopes classes of weight w >= 1."""
    n = comb(w * p, p - 1)
    if n % p:
        raise InternalConsistencyError("Scopes class count is not integral")
    return n // p


def morita_upper_bound(p: int, w: int) -> int:
    """Scopes classes counted up to conjugation of cores."""
    val = Fraction(comb(w * p, p - 1), 2 * p) + Fraction(comb(w * p // 2, p // 2), 2)
    if val.denominator != 1:
        raise InternalConsistencyError(f"upper bound for p={p}, w={w} is not integral")
    return int(val)


def abacus_counts(core, p: int, t: int) -> AbacusCounts:
    beads = beta_with(core, t)
    counts = [0] * p
    for b in beads:
        counts[b % p] += 1
    return AbacusCounts(p, t, tuple(counts))


def _moves(core, p: int, w: int):
    """Admissible downward moves as (t, i, k)."""
    t0 = len(core) + (-len(core)) % p
    for t in range(t0, t0 + p):
        counts = abacus_counts(core, p, t).counts
        for i in range(1, p):
            k = counts[i] - counts[i - 1]
            if k >= w:
                yield t, i, k


def _apply(core, p: int, t: int, i: int) -> tuple:
    out = []
    for b in beta_with(core, t):
        r = b % p
        if r == i:
            b -= 1
        elif r == i - 1:
            b += 1
        out.append(b)
    return from_beta(out)


def is_reduced(core, p: int, w: int) -> bool:
    return next(_moves(tuple(core), p, w), None) is None


def reduce_core(core, p: int, w: int, rng: random.Random | None = None) -> tuple:
    """Apply downward Scopes moves until none is admissible."""
    core = tuple(core)
    if not is_p_core(core, p):
        raise InvalidCoreError(f"{format_partition(core)} is not a {p}-core")
    if w < 1:
        raise ValueError("Scopes moves need w >= 1")
    while True:
        moves = list(_moves(core, p, w))
        if not moves:
            return core
        t, i, k = rng.choice(moves) if rng is not None else moves[0]
        new = _apply(core, p, t, i)
        if sum(core) - sum(new) != k:
            raise InternalConsistencyError(f"Scopes move on {core} changed the size by {sum(core) - sum(new)}")
        core = new


def _step_sequences(p: int, w: int):
    # cyclic runner steps k_0..k_{p-1}, each <= w-1, summing to -1
    total = p * (w - 1) + 1
    for cuts in itertools.combinations(range(total + p - 1), p - 1):
        parts = [b - a - 1 for a, b in zip((-1,) + cuts, cuts + (total + p - 1,))]
        yield [w - 1 - j for j in parts]


def _core_from_steps(steps, p: int) -> tuple:
    counts = [0]
    for k in steps[:-1]:
        counts.append(counts[-1] + k)
    low = min(counts)
    return AbacusCounts(p, 0, tuple(c - low for c in counts)).core()


def default_size_cap(p: int, w: int) -> int:
    # p^2 w^2, widened to the largest representative size observed for p <= 7
    observed = p * (p * p - 1) * (w - 1) * (p * w - p + 2) // 24
    return max(p * p * w * w, observed)


def enumerate_representatives(p: int, w: int, size_cap: int | None = None) -> list:
    """All reduced p-cores for weight w, ordered by size then descending lexicographically.

    Reduced cores are exactly the abaci whose cyclic runner steps are all
    below w; each is built once per rotation of its step sequence.
    """
    if w < 1:
        raise ValueError("Scopes classes need w >= 1")
    cap = default_size_cap(p, w) if size_cap is None else size_cap
    cores = {_core_from_steps(s, p) for s in _step_sequences(p, w)}
    ordered = sorted(cores, key=_order_key)
    want = scopes_count(p, w)
    within = [c for c in ordered if sum(c) <= cap]
    if len(within) < want:
        raise EnumerationIncompleteError(
            f"only {len(within)} of {want} Scopes representatives have size <= {cap}"
        )
    if len(ordered) != want:
        raise InternalConsistencyError(f"found {len(ordered)} reduced cores, expected {want}")
    for c in ordered:
        if not is_reduced(c, p, w):
            raise InternalConsistencyError(f"constructed core {c} admits a Scopes move")
    return [ScopesClass(c, w, p) for c in ordered]


def _order_key(core):
    # size ascending, then descending lexicographic
    return (sum(core), [-x for x in core] + [0])


def conjugation_pairing(reps, p: int, w: int) -> Pairing:
    """Merge Scopes classes whose cores are conjugate (the blocks are isomorphic)."""
    cores = [r.core for r in reps]
    index = {c: i for i, c in enumerate(cores)}
    if len(cores) != scopes_count(p, w):
        raise InternalConsistencyError("representative list is incomplete")
    seen = set()
    classes = []
    for c in cores:
        if c in seen:
            continue
        partner = reduce_core(conjugate(c), p, w)
        if partner not in index:
            raise InternalConsistencyError(f"partner {partner} of {c} is not a representative")
        back = reduce_core(conjugate(partner), p, w)
        if back != c:
            raise InternalConsistencyError(f"conjugation pairing is not an involution at {c}")
        seen.update((c, partner))
        classes.append((c,) if partner == c else (c, partner))
    bound = morita_upper_bound(p, w)
    if len(classes) != bound:
        raise InternalConsistencyError(f"{len(classes)} conjugation classes, expected {bound}")
    return Pairing(tuple(classes), len(classes))


def with_partners(reps, p: int, w: int) -> list:
    return [ScopesClass(r.core, w, p, reduce_core(conjugate(r.core), p, w)) for r in reps]
