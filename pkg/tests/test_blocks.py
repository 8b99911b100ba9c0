from fractions import Fraction

import pytest

from symblocks.blocks import (
    Block,
    blocks_of,
    delta_m0,
    eigen_m0,
    height_zero_valuations_ok,
    heights_defect,
    hook_lambda_2power,
    irr0_count_formula,
    irr_block,
    m_matrix,
    p_scalar_oracle,
)
from symblocks.errors import CapExceededError, InvalidCoreError, UnsupportedPrimeError
from symblocks.exact import RationalMatrix
from symblocks.partitions import core_quotient_sign
from symblocks.scopes import enumerate_representatives


def test_block_validation():
    assert Block(3, 2, (1, 1)).n == 8
    with pytest.raises(InvalidCoreError):
        Block(2, 1, (2,))


def test_irr_records():
    recs = irr_block(Block(2, 1, ()))
    assert {(r.lam, r.quotient) for r in recs} == {((2,), ((), (1,))), ((1, 1), ((1,), ()))}
    assert len(irr_block(Block(13, 2, ()))) == 104
    assert [r.lam for r in irr_block(Block(3, 0, (2,)))] == [(2,)]


def test_heights():
    assert heights_defect(Block(2, 1, ())) == (1, (0, 0))
    assert heights_defect(Block(2, 2, ())) == (3, (0, 0, 1, 0, 0))
    assert heights_defect(Block(5, 0, (1,))) == (0, (0,))


def test_m_matrix_examples():
    assert m_matrix(Block(2, 1, ())).m == RationalMatrix([[1, 1], [1, 1]], 2)
    assert m_matrix(Block(7, 0, (3,))).m == RationalMatrix([[1]])
    inv = m_matrix(Block(2, 2, ()))
    assert inv.m.shape == (5, 5) and inv.m.rank() == 2 and inv.m.trace() == 2


def test_oracle_examples():
    b = Block(3, 1, ())
    o = p_scalar_oracle(b)
    lams = [r.lam for r in irr_block(b)]
    i3, i111 = lams.index((3,)), lams.index((1, 1, 1))
    assert o[i3, i3] == Fraction(2, 3)
    assert o[i3, i111] == Fraction(-1, 3)
    with pytest.raises(CapExceededError):
        p_scalar_oracle(Block(2, 7, ()))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_projection_properties(p):
    for w in range(1, 4 if p < 7 else 3):
        for rep in enumerate_representatives(p, w)[:6]:
            inv = m_matrix(Block(p, w, rep.core))
            m = inv.m
            n_gamma = sum(1 for r in inv.records if not r.quotient[0])
            assert m.is_symmetric() and m.is_idempotent()
            assert m.trace() == n_gamma and m.rank() == n_gamma
            assert height_zero_valuations_ok(inv)


def test_signs_match_abacus():
    for rec in irr_block(Block(3, 3, (4, 2))):
        assert core_quotient_sign(rec.lam, 3).sign == rec.sign


def test_delta_examples():
    lams, m0 = delta_m0(Block(2, 1, ()))
    assert lams == ((1, 1),) and m0 == RationalMatrix([[1]], 2)
    assert irr0_count_formula(2) == 4 and len(delta_m0(Block(2, 2, ()))[0]) == 2
    assert len(delta_m0(Block(2, 8, ()))[0]) == 8
    with pytest.raises(UnsupportedPrimeError):
        delta_m0(Block(3, 1, ()))


@pytest.mark.parametrize("w", range(1, 11))
def test_irr0_count(w):
    _, heights = heights_defect(Block(2, w, ()))
    assert heights.count(0) == irr0_count_formula(w)


def test_m0_is_principal_submatrix():
    b = Block(2, 4, (2, 1))
    inv = m_matrix(b)
    lams, m0 = delta_m0(b)
    idx = [inv.m.row_labels.index(lam) for lam in lams]
    assert m0 == inv.m.submatrix(idx)


def test_hook_partitions():
    assert hook_lambda_2power(1, 2, 2) == ((5,), 1)
    lam, sign = hook_lambda_2power(0, 2, 1)
    assert lam == (1, 1, 1, 1) and sign == 1
    for w in (2, 4, 8):
        for k in range(w):
            for r in range(1, w + 1):
                lam, sign = hook_lambda_2power(k, w, r)
                assert core_quotient_sign(lam, 2).sign == sign
    with pytest.raises(ValueError):
        hook_lambda_2power(1, 3, 1)


def test_eigen_small():
    rep = eigen_m0(Block(2, 1, ()))
    assert rep.scale == 2 and rep.roots == (1,) and rep.residual == ()


@pytest.mark.parametrize("n", range(1, 9))
def test_blocks_of_cover_irr(n):
    for p in (2, 3, 5):
        seen = sorted(r.lam for b in blocks_of(n, p) for r in irr_block(b))
        from symblocks.partitions import enumerate_partitions

        assert seen == sorted(enumerate_partitions(n))
