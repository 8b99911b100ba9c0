"""Characters of the wreath product G_w = C_p wr S_w.

Classes and irreducible characters are both labelled by p-multipartitions of
w.  A class label puts a cycle of length s into slot j when the colours along
the cycle sum to j (mod p); the character of a label lam is induced from the
tensor product of psi_i^{x|lam_i|} * chi_{lam_i}.  Values are computed by a
Murnaghan-Nakayama recursion on p-tuples: peel one cycle (s, j) of the class,
and sum over slots i and rim s-hooks of lam_i with weight zeta^(i j) and the
leg sign.

Only the classes with an empty slot 0 (``gamma``) are needed for the
Morita invariant; :func:`x_matrix` restricts to them unless asked otherwise
and keeps a versioned text cache on disk.
"""

from __future__ import annotations

import logging
import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import CacheInvalidError, NonRationalError, OrthogonalityError
from .exact import CycloMatrix, Cyclotomic, hermitian_rational
from .partitions import multipartitions, remove_rim_hooks
from .symchar import centralizer_order_sym

log = logging.getLogger(__name__)

CACHE_MAGIC = "SYMBLOCKS-XMATRIX"
CACHE_VERSION = 1


def wreath_classes(p: int, w: int) -> list:
    """``(label, in_gamma)`` for every class of C_p wr S_w, in canonical order."""
    return [(mu, not mu[0]) for mu in multipartitions(p, w)]


def gamma_classes(p: int, w: int) -> list:
    return [mu for mu in multipartitions(p, w) if not mu[0]]


def wreath_centralizer_order(mu, p: int | None = None) -> int:
    p = len(mu) if p is None else p
    out = 1
    for part in mu:
        out *= p ** len(part) * centralizer_order_sym(part)
    return out


def group_order(p: int, w: int) -> int:
    return p**w * math.factorial(w)


def _cycles(mu) -> tuple:
    """Cycles of the class ``mu`` as (length, colour), longest first."""
    return tuple(sorted(((s, j) for j, part in enumerate(mu) for s in part), reverse=True))


def _rotate(vec: tuple, k: int) -> tuple:
    p = len(vec)
    k %= p
    if not k:
        return vec
    return vec[-k:] + vec[:-k]


def _value(lam: tuple, cycles: tuple) -> tuple:
    p = len(lam)
    if not cycles:
        return (1,) + (0,) * (p - 1)
    (s, j), rest = cycles[0], cycles[1:]
    total = [0] * p
    for i, part in enumerate(lam):
        if sum(part) < s:
            continue
        acc = [0] * p
        for nu, leg in remove_rim_hooks(part, s):
            sub = _value_cached(lam[:i] + (nu,) + lam[i + 1:], rest)
            if leg % 2:
                for k in range(p):
                    acc[k] -= sub[k]
            else:
                for k in range(p):
                    acc[k] += sub[k]
        for k, v in enumerate(_rotate(tuple(acc), i * j)):
            total[k] += v
    return tuple(total)


_value_cached = lru_cache(maxsize=1 << 21)(_value)


def configure_cache(max_entries: int) -> None:
    global _value_cached
    if max_entries < 1:
        raise ValueError("cache size must be positive")
    _value_cached = lru_cache(maxsize=max_entries)(_value)


def cache_info():
    return _value_cached.cache_info()


def _redundant_value(lam, mu) -> tuple:
    if len(lam) != len(mu) or sum(map(sum, lam)) != sum(map(sum, mu)):
        raise ValueError("labels must share p and w")
    return _value_cached(tuple(map(tuple, lam)), _cycles(mu))


def wreath_char_value(lam, mu) -> Cyclotomic:
    """psi_lam(g_mu) as an element of Q(zeta_p)."""
    return Cyclotomic.from_redundant(len(lam), _redundant_value(lam, mu))


def wreath_degree(lam) -> int:
    from .symchar import degree_hook

    sizes = [sum(part) for part in lam]
    out = math.factorial(sum(sizes))
    for k in sizes:
        out //= math.factorial(k)
    for part in lam:
        out *= degree_hook(part)
    return out


@dataclass(frozen=True)
class XMatrix:
    p: int
    w: int
    rows: tuple  # character labels
    cols: tuple  # class labels
    matrix: CycloMatrix
    norms: tuple  # centralizer orders of the column classes

    @property
    def gamma_only(self) -> bool:
        return all(not mu[0] for mu in self.cols)


def _compute(p: int, w: int, rows, cols) -> CycloMatrix:
    coords = [np.empty((len(rows), len(cols)), dtype=object) for _ in range(p - 1)]
    for b, mu in enumerate(cols):
        cyc = _cycles(mu)
        for a, lam in enumerate(rows):
            red = _value_cached(lam, cyc)
            top = red[p - 1]
            for k in range(p - 1):
                coords[k][a, b] = red[k] - top
    return CycloMatrix(p, coords, rows, cols)


def check_orthogonality(x: XMatrix) -> None:
    """X^t conj(X) must equal the diagonal matrix of column centralizer orders."""
    m = x.matrix
    mt = CycloMatrix(m.p, [c.T.copy() for c in m.coords])
    try:
        gram = hermitian_rational(mt, mt, [1] * m.shape[0])
    except NonRationalError as exc:
        raise OrthogonalityError(f"X({x.p},{x.w}) has a non-rational Gram entry") from exc
    want = np.diag(list(x.norms)).astype(object)
    if gram.shape != want.shape or not np.array_equal(gram, want):
        raise OrthogonalityError(f"X({x.p},{x.w}) violates the column orthogonality relation")


def cache_path(cache_dir, p: int, w: int, gamma_only: bool) -> Path:
    kind = "gamma" if gamma_only else "full"
    return Path(cache_dir) / f"xmatrix_p{p}_w{w}_{kind}_v{CACHE_VERSION}.txt"


def write_cache(x: XMatrix, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    m = x.matrix
    lines = [
        CACHE_MAGIC,
        f"version {CACHE_VERSION}",
        f"p {x.p}",
        f"w {x.w}",
        f"rows {m.shape[0]}",
        f"cols {m.shape[1]}",
        f"gamma-only {int(x.gamma_only)}",
    ]
    for a in range(m.shape[0]):
        lines.append(" ".join(str(int(c[a, b])) for b in range(m.shape[1]) for c in m.coords))
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_cache(path, p: int, w: int, gamma_only: bool = True) -> XMatrix:
    """Load a cached X matrix, validating header, shape and orthogonality."""
    rows = multipartitions(p, w)
    cols = tuple(mu for mu in rows if not mu[0]) if gamma_only else rows
    try:
        with open(path) as fh:
            text = fh.read().splitlines()
    except OSError as exc:
        raise CacheInvalidError(f"cannot read {path}: {exc}") from exc
    header = [CACHE_MAGIC, f"version {CACHE_VERSION}", f"p {p}", f"w {w}",
              f"rows {len(rows)}", f"cols {len(cols)}", f"gamma-only {int(gamma_only)}"]
    if text[: len(header)] != header:
        raise CacheInvalidError(f"{path}: header mismatch")
    body = text[len(header):]
    if len(body) != len(rows):
        raise CacheInvalidError(f"{path}: expected {len(rows)} rows, found {len(body)}")
    coords = [np.empty((len(rows), len(cols)), dtype=object) for _ in range(p - 1)]
    for a, line in enumerate(body):
        try:
            vals = [int(v) for v in line.split()]
        except ValueError as exc:
            raise CacheInvalidError(f"{path}: bad entry in row {a}") from exc
        if len(vals) != len(cols) * (p - 1):
            raise CacheInvalidError(f"{path}: row {a} has the wrong length")
        for b in range(len(cols)):
            for k in range(p - 1):
                coords[k][a, b] = vals[b * (p - 1) + k]
    x = XMatrix(p, w, rows, cols, CycloMatrix(p, coords, rows, cols),
                tuple(wreath_centralizer_order(mu, p) for mu in cols))
    try:
        check_orthogonality(x)
    except OrthogonalityError as exc:
        raise CacheInvalidError(f"{path}: cached values fail orthogonality") from exc
    return x


@lru_cache(maxsize=32)
def _x_matrix_memory(p: int, w: int, gamma_only: bool) -> XMatrix:
    rows = multipartitions(p, w)
    cols = tuple(mu for mu in rows if not mu[0]) if gamma_only else rows
    x = XMatrix(p, w, rows, cols, _compute(p, w, rows, cols),
                tuple(wreath_centralizer_order(mu, p) for mu in cols))
    check_orthogonality(x)
    return x


def x_matrix(p: int, w: int, cache_dir=None, gamma_only: bool = True, stats: dict | None = None) -> XMatrix:
    """Character values psi_lam(g_mu) for all lam and the gamma classes mu.

    With ``cache_dir`` set, the matrix is read from / written to the disk
    cache; an unreadable or inconsistent cache file is recomputed.
    """
    if cache_dir is None:
        return _x_matrix_memory(p, w, gamma_only)
    path = cache_path(cache_dir, p, w, gamma_only)
    if path.exists():
        try:
            x = read_cache(path, p, w, gamma_only)
            _count(stats, "hits")
            return x
        except CacheInvalidError as exc:
            log.warning("discarding cache file: %s", exc)
            _count(stats, "invalid")
    x = _x_matrix_memory(p, w, gamma_only)
    _count(stats, "misses")
    write_cache(x, path)
    return x


def _count(stats, key):
    if stats is not None:
        stats[key] = stats.get(key, 0) + 1


def x_rows(p: int, w: int, rows) -> CycloMatrix:
    """The gamma columns of X restricted to the given character labels."""
    cols = gamma_classes(p, w)
    return _compute(p, w, tuple(rows), tuple(cols))
