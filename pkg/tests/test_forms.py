"""Model arithmetic: frozen examples plus hypothesis property checks."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drwitt import Context, DrwError, Form, NonIntegralError, Weight, WeightOverflow
from drwitt.forms import truncate
from drwitt.generate import random_integral_form

C3 = Context(p=3, n=1, m=3)
C32 = Context(p=3, n=2, m=3)


def mono(ctx, c, pairs, I=()):
    return Form.monomial(ctx, Fraction(c), Weight.make(pairs, ctx.p), I)


def test_add_identity_and_inverse():
    x = Form.variable(C3, 1)
    assert x + Form.zero(C3) == x
    assert (x + (-x)).is_zero()


def test_add_same_monomial():
    a = mono(C3, 3, [(1, 1)])
    assert a + a == mono(C3, 6, [(1, 1)])


def test_mul_unit_and_model_rule():
    w = mono(C32, 1, [(2, 0), (0, 0)], (1,))
    assert Form.one(C32) * w == w
    # V([x]) * V([x]^2) = p * V([x]^3)
    assert mono(C3, 3, [(1, 1)]) * mono(C3, 3, [(2, 1)]) == mono(C3, 9, [(1, 0)])


def test_mul_wedge_square_zero_and_sign():
    xdl = mono(C32, 1, [(1, 0), (0, 0)], (1,))
    assert (xdl * xdl).is_zero()
    ydl2 = mono(C32, 1, [(0, 0), (1, 0)], (2,))
    xdl1 = mono(C32, 1, [(1, 0), (0, 0)], (1,))
    assert ydl2 * xdl1 == mono(C32, -1, [(1, 0), (1, 0)], (1, 2))


def test_d_examples():
    x = Form.variable(C3, 1)
    assert x.d() == mono(C3, 1, [(1, 0)], (1,))
    assert mono(C3, 3, [(1, 1)]).d() == mono(C3, 1, [(1, 1)], (1,))
    assert mono(C3, 1, [(1, 1)], (1,)).d().is_zero()


def test_frobenius_examples():
    x = Form.variable(C3, 1)
    assert x.frobenius() == mono(C3, 1, [(3, 0)])
    assert mono(C3, 1, [(1, 1)], (1,)).frobenius() == mono(C3, 1, [(1, 0)], (1,))
    assert Form.one(C3).frobenius() == Form.one(C3)


def test_verschiebung_examples():
    x = Form.variable(C3, 1)
    assert x.verschiebung() == mono(C3, 3, [(1, 1)])
    w = mono(C32, 1, [(2, 0), (0, 0)], (1,))
    assert w.verschiebung().frobenius() == w.scale(3)
    assert Form.one(C3).verschiebung() == Form.constant(C3, 3)


def test_verschiebung_umax_overflow():
    ctx = Context(p=3, n=1, m=1, u_max=1)
    v = Form.variable(ctx, 1).verschiebung()
    with pytest.raises(WeightOverflow):
        v.verschiebung()


def test_is_integral_examples():
    assert not mono(C3, 1, [(1, 1)]).is_integral()
    assert mono(C3, 3, [(1, 1)]).is_integral()
    assert mono(C3, 1, [(1, 1)], (1,)).is_integral()  # n = 1: d = 0


def test_vp_examples():
    assert Form.zero(C3).vp() == float("inf")
    assert mono(C3, 3, [(1, 1)]).vp() == 0
    assert mono(C3, 9, [(2, 1)]).vp() == 1
    with pytest.raises(NonIntegralError):
        mono(C3, 1, [(1, 1)]).vp()


def test_truncate_examples():
    ctx = Context(p=3, n=1, m=2)
    assert truncate(mono(ctx, 9, [(1, 0)])).is_zero()
    dv = mono(ctx, 1, [(1, 1)], (1,))
    assert truncate(dv) == dv
    assert truncate(dv, 1).is_zero()


def test_dlog_needs_positive_weight():
    with pytest.raises(DrwError):
        Form.monomial(C32, 1, Weight.make([(0, 0), (1, 0)], 3), (1,))


def test_context_mismatch_raises():
    with pytest.raises(DrwError):
        Form.variable(C3, 1) + Form.variable(Context(p=3, n=1, m=2), 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2)]))
def test_dga_laws_random(seed, pn):
    import random

    p, n = pn
    ctx = Context(p=p, n=n, m=3)
    rng = random.Random(seed)
    a = random_integral_form(ctx, rng)
    b = random_integral_form(ctx, rng)
    assert a.d().d().is_zero()
    assert a.verschiebung().frobenius() == a.scale(p)
    assert a.frobenius().verschiebung() == a.scale(p)
    assert a.frobenius().d() == a.d().frobenius().scale(p)
    assert (a * b.frobenius()).verschiebung() == a.verschiebung() * b
    assert (a * b) * a == a * (b * a)
    for f in (a * b, a.d(), a.frobenius(), a.verschiebung()):
        assert f.is_integral()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_graded_commutativity_random(seed):
    import random

    ctx = Context(p=2, n=2, m=3)
    rng = random.Random(seed)
    a = random_integral_form(ctx, rng)
    b = random_integral_form(ctx, rng)
    for s in a.degrees() or {0}:
        for t in b.degrees() or {0}:
            sign = -1 if (s * t) % 2 else 1
            assert a.degree_part(s) * b.degree_part(t) == (
                b.degree_part(t) * a.degree_part(s)
            ).scale(sign)
