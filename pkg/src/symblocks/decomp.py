"""Decomposition matrices of small-weight blocks via the Jantzen-Schaper bound.

For odd p and weight w <= 2 (or w = 3 and p >= 5) every decomposition number
is 0 or 1, and d(lam, mu) is non-zero exactly when the Jantzen-Schaper sum

    J(lam, mu) = sum_nu c(lam, nu) d(nu, mu)

is positive.  The coefficients c(lam, nu) are read off the beta-set of lam:
for beads x > y and a gap g < y, exchange the rim hook of length y - g
ending at y for one of the same length starting at x, giving

    beta(nu) = beta(lam) - {x, y} + {g, x + y - g},

with sign (-1)^(leg(y -> g) + leg(x -> x + y - g)) and weight
nu_p(x - g) - nu_p(y - g).  Only exchanges staying in the block survive;
the others cancel in pairs.

Rows are resolved from the most dominant partition down, so every nu needed
for a row has already been settled.  Each finished matrix is checked against
the p-scalar-product matrix: Q (Q^t Q)^-1 Q^t must reproduce m_matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import Block, irr_block, m_matrix
from .errors import InternalConsistencyError, UnsupportedRegimeError
from .exact import RationalMatrix, inverse, p_valuation
from .partitions import beta_with, dominates, format_partition, from_beta, is_p_regular


@dataclass(frozen=True)
class DecompositionMatrix:
    block: Block
    rows: tuple  # Irr(B), descending lexicographic
    cols: tuple  # p-regular members of Irr(B), same order
    entries: tuple  # tuple of row tuples

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def as_rational(self) -> RationalMatrix:
        return RationalMatrix([list(r) for r in self.entries] or np.empty((0, 0), dtype=object),
                              1, self.rows, self.cols)

    def cartan(self) -> RationalMatrix:
        q = self.as_rational()
        return q.T @ q

    def to_text(self) -> str:
        return format_dotted(self.entries)


def check_regime(p: int, w: int) -> None:
    if p % 2 == 0 or p < 3:
        raise UnsupportedRegimeError(f"decomposition matrices need an odd prime, got p={p}")
    if w > 3 or (w == 3 and p < 5):
        raise UnsupportedRegimeError(f"p={p}, w={w} is outside the 0/1 regime")


def js_coefficients(lam: tuple, p: int, same_block: bool = True) -> dict:
    """``{nu: c(lam, nu)}`` for the Jantzen-Schaper sum of ``lam``.

    With ``same_block`` only exchanges moving beads within their residue
    classes are visited; the remaining terms cancel.
    """
    beta = beta_with(lam, len(lam))
    occupied = set(beta)
    top = beta[0] if beta else 0
    gaps = [g for g in range(top) if g not in occupied]
    # prefix counts of beads, for leg lengths
    below = [0] * (top + 2)
    for k in range(top + 1):
        below[k + 1] = below[k] + (k in occupied)

    def between(a, b):  # beads strictly between a < b
        return below[b] - below[a + 1]

    out = {}
    for y in beta:
        for g in gaps:
            if g >= y:
                break
            h = y - g
            vy = p_valuation(h, p)
            leg_y = between(g, y)
            for x in beta:
                if x <= y:
                    break
                if same_block and g % p != x % p and g % p != y % p:
                    continue
                target = x + h
                if target in occupied:
                    continue
                c = p_valuation(x - g, p) - vy
                if not c:
                    continue
                leg_x = between(x, target) if target <= top else below[top + 1] - below[x + 1]
                nu = from_beta([b for b in beta if b not in (x, y)] + [g, target])
                sign = -1 if (leg_x + leg_y) % 2 else 1
                out[nu] = out.get(nu, 0) + sign * c
    return {nu: c for nu, c in out.items() if c}


def _ordered_irr(block: Block) -> tuple:
    return tuple(sorted((r.lam for r in irr_block(block)), reverse=True))


def js_bound_matrix(block: Block, partial: dict) -> dict:
    """``{lam: J-row}`` for every lam whose more dominant rows are all in ``partial``.

    ``partial`` maps partitions to their rows of Q (column order as in
    :func:`decomposition_matrix`).
    """
    check_regime(block.p, block.w)
    rows = _ordered_irr(block)
    members = set(rows)
    ncols = len(next(iter(partial.values()))) if partial else None
    out = {}
    for lam in rows:
        coeffs = js_coefficients(lam, block.p)
        if any(nu not in partial for nu in coeffs):
            continue
        out[lam] = _bound_row(lam, coeffs, partial, members, ncols, block)
    return out


def _bound_row(lam, coeffs, resolved, members, ncols, block):
    acc = [0] * (ncols or 0)
    for nu, c in coeffs.items():
        if nu not in members:
            raise InternalConsistencyError(f"exchange {lam} -> {nu} leaves {block}")
        if not dominates(nu, lam):
            raise InternalConsistencyError(f"exchange {lam} -> {nu} does not raise dominance")
        for j, d in enumerate(resolved[nu]):
            if d:
                acc[j] += c * d
    return acc


def decomposition_matrix(block: Block, check: bool = True) -> DecompositionMatrix:
    """Q for a block in the 0/1 regime, resolved row by row."""
    p, w = block.p, block.w
    rows = _ordered_irr(block)
    if w == 0:
        return DecompositionMatrix(block, rows, rows, ((1,),))
    check_regime(p, w)
    cols = tuple(lam for lam in rows if is_p_regular(lam, p))
    col_index = {mu: j for j, mu in enumerate(cols)}
    members = set(rows)
    resolved = {}
    for lam in rows:
        bound = _bound_row(lam, js_coefficients(lam, p), resolved, members, len(cols), block)
        if any(v < 0 for v in bound):
            raise InternalConsistencyError(f"negative Jantzen-Schaper bound in row {format_partition(lam)} of {block}")
        row = [int(v > 0) for v in bound]
        if lam in col_index:
            j = col_index[lam]
            if bound[j]:
                raise InternalConsistencyError(f"diagonal bound non-zero at {format_partition(lam)} in {block}")
            row[j] = 1
        resolved[lam] = row
    q = DecompositionMatrix(block, rows, cols, tuple(tuple(resolved[lam]) for lam in rows))
    if check:
        check_decomposition(q)
    return q


def check_decomposition(q: DecompositionMatrix, cache_dir=None) -> None:
    """Unitriangularity, 0/1 entries, column count and Osima consistency."""
    block = q.block
    n_gamma = sum(1 for r in irr_block(block) if r.quotient[0] == ())
    if len(q.cols) != n_gamma:
        raise InternalConsistencyError(f"{block}: {len(q.cols)} p-regular rows, expected {n_gamma}")
    for lam, row in zip(q.rows, q.entries):
        for mu, d in zip(q.cols, row):
            if d not in (0, 1):
                raise InternalConsistencyError(f"{block}: entry {d} outside the 0/1 regime")
            if mu == lam and d != 1:
                raise InternalConsistencyError(f"{block}: diagonal entry at {format_partition(lam)} is {d}")
            if d and not dominates(mu, lam):
                raise InternalConsistencyError(
                    f"{block}: d({format_partition(lam)}, {format_partition(mu)}) = 1 breaks unitriangularity")
    target = m_matrix(block, cache_dir).m
    index = {lam: i for i, lam in enumerate(target.row_labels)}
    perm = [index[lam] for lam in q.rows]
    m = target.submatrix(perm)
    # m is a symmetric idempotent of rank |cols| and Q has full column rank,
    # so m Q = Q is equivalent to m = Q (Q^t Q)^-1 Q^t
    qn = np.array(q.entries, dtype=object)
    if not np.array_equal(m.num.dot(qn), qn * m.den):
        raise InternalConsistencyError(f"{block}: Q (Q^t Q)^-1 Q^t differs from the p-scalar-product matrix")


def osima_product(q: DecompositionMatrix) -> RationalMatrix:
    """Q (Q^t Q)^-1 Q^t, labelled by the rows of Q."""
    qm = q.as_rational()
    out = qm @ inverse(q.cartan()) @ qm.T
    out.row_labels = out.col_labels = q.rows
    return out


def row_col_sum_key(entries) -> str:
    """Sorted row sums and sorted column sums, e.g. ``rows 1,1,2 | cols 2,2``."""
    rows = [list(r) for r in entries]
    rs = sorted(sum(r) for r in rows)
    cs = sorted(sum(c) for c in zip(*rows)) if rows else []
    return "rows " + ",".join(map(str, rs)) + " | cols " + ",".join(map(str, cs))


def format_dotted(entries) -> str:
    """One line per row, ``.`` for zero."""
    return "\n".join("".join("." if v == 0 else str(v) for v in row) for row in entries)


def parse_dotted(text: str) -> tuple:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(tuple(0 if ch == "." else int(ch) for ch in line))
    if len({len(r) for r in rows}) > 1:
        raise ValueError("rows of different lengths")
    return tuple(rows)
