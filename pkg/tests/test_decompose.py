"""Decomposition, d-inverse, pseudovaluations: frozen examples."""

from fractions import Fraction

import pytest

from drwitt import Context, Epsilon, Form, Weight, d_inverse, decompose, find_delta, zeta, zeta_check
from drwitt.context import PreconditionError
from drwitt.decompose import DEFAULT_GRID

C3 = Context(p=3, n=1, m=3)
C32 = Context(p=3, n=2, m=3)
EPS = Epsilon(Fraction(1, 4))


def mono(ctx, c, pairs, I=()):
    return Form.monomial(ctx, Fraction(c), Weight.make(pairs, ctx.p), I)


def test_decompose_integral_weight():
    a = mono(C32, 1, [(2, 0), (0, 0)], (1,))
    dec = decompose(a)
    assert dec.int_part == a and dec.frp.is_zero() and dec.dfrp.is_zero()


def test_decompose_pure_frp():
    a = mono(C32, 3, [(1, 1), (1, 0)], (2,))
    dec = decompose(a)
    assert dec.int_part.is_zero() and dec.dfrp.is_zero() and dec.frp == a


def test_decompose_mixed_example():
    a = mono(C32, 1, [(1, 1), (1, 0)], (1,))
    dec = decompose(a)
    assert dec.int_part.is_zero()
    assert dec.frp == mono(C32, -3, [(1, 1), (1, 0)], (2,))
    assert dec.dfrp == a + mono(C32, 3, [(1, 1), (1, 0)], (2,))
    assert dec.int_part + dec.frp + dec.dfrp == a


def test_d_inverse_examples():
    assert d_inverse(Form.zero(C3)).is_zero()
    assert d_inverse(mono(C3, 1, [(1, 1)], (1,))) == mono(C3, 3, [(1, 1)])
    a = mono(C32, 1, [(1, 1), (1, 0)], (1,)) + mono(C32, 3, [(1, 1), (1, 0)], (2,))
    assert d_inverse(a) == mono(C32, 3, [(1, 1), (1, 0)])


def test_d_inverse_rejects_non_dfrp():
    with pytest.raises(PreconditionError):
        d_inverse(mono(C32, 3, [(1, 1), (1, 0)], (2,)))  # pure frp


def test_d_inverse_prime_to_p_denominator():
    # d((3/2) x^{2/3}) = x^{2/3} dlog1
    a = mono(C3, 1, [(2, 1)], (1,))
    w = d_inverse(a)
    assert w == mono(C3, Fraction(3, 2), [(2, 1)])
    assert w.d() == a


def test_zeta_examples():
    assert zeta(Form.one(C3), EPS) == 0
    assert zeta(Form.variable(C3, 1), EPS) == Fraction(-1, 4)
    # calibrated value: v_p(coeff) - eps on nonzero weights (see ledger)
    assert zeta(mono(C3, 3, [(1, 1)]), EPS) == Fraction(3, 4)
    assert zeta(Form.zero(C3), EPS) == float("inf")
    assert zeta_check(Form.zero(C3), EPS) == float("inf")
    assert zeta_check(mono(C3, 3, [(1, 1)]), EPS) == zeta(mono(C3, 3, [(1, 1)]), EPS)


def test_zeta_dfrp_valued_through_preimage():
    dv = mono(C3, 1, [(1, 1)], (1,))  # d(V([x]))
    assert zeta(dv, EPS) == zeta(mono(C3, 3, [(1, 1)]), EPS)


def test_find_delta_examples():
    grid_max = DEFAULT_GRID[0]
    assert find_delta([Form.one(C3)]) == grid_max
    # pure frp sample: bound 1 - eps >= 1/2 holds up to 1/2
    assert find_delta([mono(C3, 3, [(1, 1)])]).value == Fraction(1, 2)
    # integral sample x: -eps >= -1/4 forces eps <= 1/4
    assert find_delta([Form.variable(C3, 1)]).value == Fraction(1, 4)


def test_find_delta_empty_grid():
    from drwitt.context import DrwError

    with pytest.raises(DrwError):
        find_delta([Form.one(C3)], grid=())
