"""Slow, independent reference computations used only by the tests."""

import itertools
import math
from collections import Counter

from symblocks.partitions import enumerate_partitions, is_p_core


# ---------------------------------------------------------------------------
# symmetric group characters by the Frobenius formula


def _poly_mul(a, b):
    out = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(lam, mu):
    """chi_lam(mu) as the coefficient of x^(lam + delta) in a_delta * p_mu."""
    n = len(lam)
    if n == 0:
        return 1
    # Vandermonde a_delta = sum over permutations of sign * x^sigma(delta)
    delta = tuple(range(n - 1, -1, -1))
    vand = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        vand[tuple(delta[perm[i]] for i in range(n))] = (-1) ** inv
    poly = vand
    for part in mu:
        power_sum = {tuple(part if k == i else 0 for k in range(n)): 1 for i in range(n)}
        poly = _poly_mul(poly, power_sum)
    target = tuple(lam[i] + delta[i] for i in range(n))
    return poly.get(target, 0)


# ---------------------------------------------------------------------------
# wreath product characters by explicit induction


def _cycle_type(perm):
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def wreath_elements(p, w):
    """Elements (colours, perm): position k goes to perm[k], adding colours[k]."""
    for perm in itertools.permutations(range(w)):
        for colours in itertools.product(range(p), repeat=w):
            yield colours, perm


def _mul(g, h, p):
    # apply h first, then g
    (cg, pg), (ch, ph) = g, h
    w = len(pg)
    perm = tuple(pg[ph[k]] for k in range(w))
    colours = tuple((ch[k] + cg[ph[k]]) % p for k in range(w))
    return colours, perm


def _inverse(g, p):
    c, perm = g
    w = len(perm)
    inv = [0] * w
    for k in range(w):
        inv[perm[k]] = k
    colours = [0] * w
    for k in range(w):
        colours[perm[k]] = (-c[k]) % p
    return tuple(colours), tuple(inv)


def class_representative(mu, p):
    """An element whose cycles in slot j have colour sum j."""
    colours, perm, pos = [], [], 0
    for j, part in enumerate(mu):
        for s in part:
            for k in range(s):
                perm.append(pos + (k + 1) % s)
                colours.append(j if k == 0 else 0)
            pos += s
    return tuple(colours), tuple(perm)


def wreath_class_label(g, p):
    colours, perm = g
    slots = [[] for _ in range(p)]
    seen = set()
    for start in range(len(perm)):
        if start in seen:
            continue
        k, total, length = start, 0, 0
        while k not in seen:
            seen.add(k)
            total += colours[k]
            k = perm[k]
            length += 1
        slots[total % p].append(length)
    return tuple(tuple(sorted(s, reverse=True)) for s in slots)


def induced_character(lam, mu, p):
    """psi_lam at the class mu, as a length-p integer vector over powers of zeta."""
    w = sum(map(sum, lam))
    blocks, pos = [], 0
    for part in lam:
        blocks.append(range(pos, pos + sum(part)))
        pos += sum(part)
    owner = {k: i for i, b in enumerate(blocks) for k in b}
    g = class_representative(mu, p)
    total = [0] * p
    elements = list(wreath_elements(p, w))
    for x in elements:
        y = _mul(_mul(x, g, p), _inverse(x, p), p)
        colours, perm = y
        if any(owner[perm[k]] != owner[k] for k in range(w)):
            continue
        value, power = 1, 0
        for i, b in enumerate(blocks):
            if not len(b):
                continue
            local = tuple(perm[k] - b.start for k in b)
            value *= frobenius_character(lam[i], _cycle_type(local))
            power += i * sum(colours[k] for k in b)
        total[power % p] += value
    h_order = math.prod(p ** len(b) * math.factorial(len(b)) for b in blocks)
    top = total[-1]
    out = [v - top for v in total]
    if any(v % h_order for v in out):
        raise ArithmeticError("induced value not integral")
    return [v // h_order for v in out]


# ---------------------------------------------------------------------------
# Scopes representatives by scanning all cores by size


def _has_scopes_move(core, p, w):
    t0 = len(core) + (-len(core)) % p
    for t in range(t0, t0 + p):
        parts = tuple(core) + (0,) * (t - len(core))
        beta = [parts[i] + t - 1 - i for i in range(t)]
        counts = [sum(1 for b in beta if b % p == r) for r in range(p)]
        if any(counts[i] - counts[i - 1] >= w for i in range(1, p)):
            return True
    return False


def reduced_cores_by_scan(p, w, max_size):
    out = []
    for n in range(max_size + 1):
        for lam in enumerate_partitions(n):
            if is_p_core(lam, p) and not _has_scopes_move(lam, p, w):
                out.append(lam)
    return out


# ---------------------------------------------------------------------------
# permutation equivalence by exhaustion


def brute_equivalent(a, b):
    """Try every row permutation; a column permutation exists iff the column multisets agree."""
    m = len(a)
    target = sorted(zip(*b))
    for rp in itertools.permutations(range(m)):
        rows = [a[rp[i]] for i in range(m)]
        if sorted(zip(*rows)) == target:
            return True
    return False
