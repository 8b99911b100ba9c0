"""p-blocks of symmetric groups and their Morita invariants.

A block is fixed by (p, w, core).  Its ordinary characters chi_lam are listed
in the canonical order of p-multipartitions through lam <-> p-quotient, so
that row i of every block matrix corresponds to row i of the wreath matrix X.
The invariant M = D conj(X) (X^t conj(X))^-1 X^t D then only depends on the
block through the sign diagonal D; the middle factor is shared by all blocks
of the same (p, w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CapExceededError,
    InternalConsistencyError,
    InvalidCoreError,
    NonRationalError,
    UnsupportedPrimeError,
)
from .exact import (
    INFINITY,
    RationalMatrix,
    RootReport,
    char_poly_integer_roots,
    check_projection,
    gram_project,
    hermitian_rational,
    p_valuation,
)
from .partitions import (
    add_partitions,
    conjugate,
    core_quotient_sign,
    enumerate_partitions,
    format_partition,
    from_core_quotient,
    is_p_core,
    multipartitions,
    staircase,
)
from .symchar import centralizer_order_sym, degree_hook, is_p_regular_class, mn_value
from .wreath import gamma_classes, wreath_centralizer_order, wreath_degree, x_matrix, x_rows

ORACLE_CAP = 12


@dataclass(frozen=True)
class Block:
    p: int
    w: int
    core: tuple

    def __post_init__(self):
        object.__setattr__(self, "core", tuple(self.core))
        if self.w < 0:
            raise ValueError("weight must be non-negative")
        if not is_p_core(self.core, self.p):
            raise InvalidCoreError(f"{format_partition(self.core)} is not a {self.p}-core")

    @property
    def n(self) -> int:
        return sum(self.core) + self.p * self.w

    @property
    def defect(self) -> int:
        return heights_defect(self)[0]

    def __str__(self):
        return f"B(p={self.p}, w={self.w}, core={format_partition(self.core)})"


@dataclass(frozen=True)
class CharacterRecord:
    lam: tuple
    quotient: tuple
    sign: int
    height: int
    degree_valuation: int


@dataclass
class MoritaInvariant:
    block: Block
    m: RationalMatrix
    delta: tuple | None = None
    m0: RationalMatrix | None = None
    records: list = field(default_factory=list)


def _nu(n: int, p: int) -> int:
    return p_valuation(n, p)


@lru_cache(maxsize=4096)
def _records(block: Block) -> tuple:
    p, w, core = block.p, block.w, block.core
    labels = multipartitions(p, w)
    lams = [from_core_quotient(core, q, p) for q in labels]
    vals = [_nu(degree_hook(lam), p) for lam in lams]
    a = _nu(math.factorial(block.n), p)
    d = a - min(vals)
    aw = w + _nu(math.factorial(w), p)
    out = []
    for lam, q, v in zip(lams, labels, vals):
        data = core_quotient_sign(lam, p)
        if data.quotient != q or data.core != core:
            raise InternalConsistencyError(f"quotient bijection failed for {lam} in {block}")
        # height-preserving bijection chi_lam -> psi_q
        if aw + v != a + _nu(wreath_degree(q), p):
            raise InternalConsistencyError(f"height identity fails for {lam} in {block}")
        out.append(CharacterRecord(lam, q, data.sign, v - (a - d), v))
    return d, tuple(out)


def irr_block(block: Block) -> list:
    """Character records of the block, in canonical quotient order."""
    return list(_records(block)[1])


def heights_defect(block: Block):
    """``(defect, heights)`` with heights listed in the order of :func:`irr_block`."""
    d, recs = _records(block)
    return d, tuple(r.height for r in recs)


@lru_cache(maxsize=64)
def projection(p: int, w: int, cache_dir=None) -> RationalMatrix:
    """conj(X) (X^t conj(X))^-1 X^t for the (p, w) wreath matrix, checked."""
    x = x_matrix(p, w, cache_dir=cache_dir)
    try:
        proj = gram_project(x.matrix, x.norms)
    except NonRationalError as exc:
        raise InternalConsistencyError(f"non-rational Osima product for p={p}, w={w}") from exc
    check_projection(proj, len(x.cols))
    return proj


def m_matrix(block: Block, cache_dir=None) -> MoritaInvariant:
    """The matrix of p-scalar products of Irr(B), via the wreath character table."""
    recs = irr_block(block)
    labels = [r.lam for r in recs]
    if block.w == 0:
        return MoritaInvariant(block, RationalMatrix([[1]], 1, labels, labels), records=recs)
    proj = projection(block.p, block.w, cache_dir)
    m = proj.scale_rows_cols([r.sign for r in recs])
    m.row_labels = m.col_labels = tuple(labels)
    return MoritaInvariant(block, m, records=recs)


def p_scalar_oracle(block: Block, cap: int = ORACLE_CAP) -> RationalMatrix:
    """[chi, psi]^0 summed directly over the p-regular classes of S_n."""
    n = block.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the oracle cap {cap}")
    lams = [r.lam for r in irr_block(block)]
    classes = [nu for nu in enumerate_partitions(n) if is_p_regular_class(nu, block.p)]
    table = {lam: [mn_value(lam, nu) for nu in classes] for lam in lams}
    weights = [Fraction(1, centralizer_order_sym(nu)) for nu in classes]
    rows = [
        [sum(a * b * c for a, b, c in zip(table[x], table[y], weights)) for y in lams]
        for x in lams
    ]
    return RationalMatrix.from_fractions(rows, lams, lams)


def irr0_count_formula(w: int) -> int:
    """|Irr_0(B)| for a 2-block of weight w, from the binary digits of w."""
    exp = sum(i * int(bit) for i, bit in enumerate(reversed(bin(w)[2:]), start=1))
    return 2**exp


@lru_cache(maxsize=64)
def _delta_rows(w: int) -> tuple:
    """Indices and labels of Delta for 2-blocks of weight w (core independent)."""
    labels = multipartitions(2, w)
    degs = [p_valuation(wreath_degree(q), 2) for q in labels]
    low = min(degs)
    irr0 = [i for i, v in enumerate(degs) if v == low]
    if len(irr0) != irr0_count_formula(w):
        raise InternalConsistencyError(f"|Irr_0| = {len(irr0)} for w={w} contradicts the digit formula")
    delta = []
    for i in irr0:
        a, b = (sum(part) for part in labels[i])
        if a == b:
            raise InternalConsistencyError(f"height-0 label {labels[i]} has balanced slots")
        if a > b:
            delta.append(i)
    return tuple(delta), tuple(labels[i] for i in delta)


@lru_cache(maxsize=64)
def _delta_projection(w: int) -> RationalMatrix:
    _, labels = _delta_rows(w)
    cols = gamma_classes(2, w)
    xd = x_rows(2, w, labels)
    norms = [wreath_centralizer_order(mu, 2) for mu in cols]
    lcm = math.lcm(*norms)
    num = hermitian_rational(xd, xd, [lcm // n for n in norms])
    return RationalMatrix(num, lcm)


def delta_m0(block: Block):
    """``(Delta labels, M0)``: M restricted to the height-0 characters with |lam_0| > |lam_1|."""
    if block.p != 2:
        raise UnsupportedPrimeError("M0 is defined for p = 2 only")
    if block.w < 1:
        raise ValueError("M0 needs positive weight")
    idx, _ = _delta_rows(block.w)
    recs = irr_block(block)
    heights = [recs[i].height for i in idx]
    if any(heights):
        raise InternalConsistencyError(f"Delta contains characters of positive height in {block}")
    lams = tuple(recs[i].lam for i in idx)
    m0 = _delta_projection(block.w).scale_rows_cols([recs[i].sign for i in idx])
    m0.row_labels = m0.col_labels = lams
    return lams, m0


def hook_lambda_2power(k: int, w: int, r: int):
    """The partition lam in the 2-block with core (k, ..., 1) and quotient ((r, 1^(w-r)), ()).

    Returns ``(lam, sign)``; both are cross-checked against the abacus.
    """
    if w < 1 or w & (w - 1):
        raise ValueError("w must be a power of two")
    if not (k >= 0 and 1 <= r <= w):
        raise ValueError("need k >= 0 and 1 <= r <= w")
    core = staircase(k)
    if k % 2:
        extra = (2 * r,) + (2,) * min(k, w - r) + (1,) * (2 * max(0, w - r - k))
        lam = add_partitions(core, extra)
        sign = (-1) ** max(0, w - r - k)
    else:
        extra = (2 * (w - r + 1),) + (2,) * min(k, r - 1) + (1,) * (2 * max(0, r - 1 - k))
        lam = conjugate(add_partitions(core, extra))
        sign = (-1) ** (w - r + 1 + min(k, r - 1))
    data = core_quotient_sign(lam, 2)
    want = ((r,) + (1,) * (w - r), ())
    if data.core != core or data.quotient != want or data.sign != sign:
        raise InternalConsistencyError(
            f"hook construction k={k}, w={w}, r={r} gave {lam} with {data}, expected sign {sign}"
        )
    return lam, sign


def two_power_scale(m: RationalMatrix) -> int:
    scale = 1
    while m.den % scale == 0 and scale < m.den:
        scale *= 2
    if scale != m.den:
        raise ValueError(f"denominator {m.den} is not a power of two")
    return scale


def eigen_m0(block: Block) -> RootReport:
    """Integer eigenvalues of 2^k M0 for the least k making them all integral.

    The characteristic polynomial is taken of the denominator-cleared matrix;
    the scale is then halved while every eigenvalue stays even.
    """
    _, m0 = delta_m0(block)
    report = char_poly_integer_roots(m0, two_power_scale(m0))
    scale, roots = report.scale, report.roots
    if report.residual:
        return report
    while scale > 1 and all(r % 2 == 0 for r in roots):
        scale //= 2
        roots = tuple(r // 2 for r in roots)
    return RootReport(scale, roots, ())


def height_zero_valuations_ok(inv: MoritaInvariant) -> bool:
    """Heights as read off the p-adic valuations of M (used by the property checks)."""
    d, heights = heights_defect(inv.block)
    p = inv.block.p
    m = inv.m
    for i, hi in enumerate(heights):
        if hi == 0:
            for j, hj in enumerate(heights):
                if p_valuation(m[i, j], p) != hj - d:
                    return False
        elif not p_valuation(m[i, i], p) > -d:
            return False
    return True


def blocks_of(n: int, p: int) -> list:
    """All p-blocks of S_n, ordered by core (descending lexicographic)."""
    cores = sorted({core_quotient_sign(lam, p).core for lam in enumerate_partitions(n)},
                   key=lambda c: (sum(c), c), reverse=True)
    return [Block(p, (n - sum(c)) // p, c) for c in cores]


__all__ = [
    "Block", "CharacterRecord", "MoritaInvariant", "irr_block", "heights_defect", "m_matrix",
    "p_scalar_oracle", "delta_m0", "hook_lambda_2power", "eigen_m0", "projection",
    "irr0_count_formula", "blocks_of", "height_zero_valuations_ok", "INFINITY",
]
