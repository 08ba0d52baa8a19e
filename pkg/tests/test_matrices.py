"""Connection calculus: frozen examples from the operation contracts."""

import random
from fractions import Fraction

import pytest

from drwitt import (
    Context,
    Epsilon,
    Form,
    FormMatrix,
    Weight,
    base_change,
    congruent_matrices,
    curvature,
    evaluate,
    frobenius_pullback,
    horizontal_check,
    idempotent_frobenius_check,
    invert,
    lift_connection,
    overconvergence_condition,
    rng_expansion_check,
    schanuel_complement,
)
from drwitt.context import NotInvertibleError, PreconditionError, ShapeMismatch
from drwitt.generate import lift_instance, random_idempotent

C32 = Context(p=3, n=2, m=3)


def mono(ctx, c, pairs, I=()):
    return Form.monomial(ctx, c, Weight.make(pairs, ctx.p), I)


def test_curvature_examples():
    z = Form.zero(C32)
    assert curvature(FormMatrix([[z]])).is_zero()
    # nonzero curvature: d(xy dlog1) = -xy dlog1 dlog2
    N = FormMatrix([[mono(C32, 1, [(1, 0), (1, 0)], (1,))]])
    C = curvature(N)
    assert congruent_matrices(C, FormMatrix([[mono(C32, -1, [(1, 0), (1, 0)], (1, 2))]]))
    # gauge instance: N = G^-1 dG for G = [[1, x], [0, 1]]
    x = Form.variable(C32, 1)
    N2 = FormMatrix([[z, x.d()], [z, z]])
    assert curvature(N2).is_zero()
    G = FormMatrix([[Form.one(C32), x], [z, Form.one(C32)]])
    assert congruent_matrices(base_change(FormMatrix.zeros(C32, 2), invert(G)), N2)


def test_evaluate_examples():
    z = Form.zero(C32)
    x = Form.variable(C32, 1)
    N0 = FormMatrix([[z]])
    assert evaluate(N0, FormMatrix([[x]])) == FormMatrix([[x.d()]])
    assert evaluate(N0, FormMatrix([[z]])).is_zero()
    N = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))]])
    assert evaluate(N, FormMatrix([[Form.one(C32)]])) == N


def test_base_change_identity():
    N = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))]])
    assert congruent_matrices(base_change(N, invert(FormMatrix.identity(C32, 1))), N)


def test_invert_examples():
    ctx = Context(p=3, n=1, m=3)
    one = Form.one(ctx)
    assert invert(FormMatrix([[one]])).inverse == FormMatrix([[one]])
    w9 = mono(ctx, 9, [(1, 1)])
    bc = invert(FormMatrix([[one - w9]]))
    assert bc.inverse == FormMatrix([[one + w9]])
    with pytest.raises(NotInvertibleError):
        invert(FormMatrix([[Form.variable(ctx, 1)]]))
    with pytest.raises(NotInvertibleError):
        invert(FormMatrix([[one + Form.variable(ctx, 1)]]))  # 1 + x is not a unit


def test_lift_connection_examples():
    z = Form.zero(C32)
    x = Form.variable(C32, 1)
    one = Form.one(C32)
    A = FormMatrix([[z, mono(C32, 1, [(1, 0), (0, 0)], (1,))], [z, z]])
    P = FormMatrix([[one, x], [z, z]])
    N = lift_connection(A, P)
    assert congruent_matrices(N, A)  # d(P) P = 0 here
    assert curvature(N).is_zero()
    assert congruent_matrices(
        curvature(N), (P.d() @ P @ P.d()).truncated()
    )
    ident = FormMatrix.identity(C32, 2)
    M = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,)), z], [z, z]])
    assert congruent_matrices(lift_connection(M, ident), M)


def test_lift_connection_precondition():
    z = Form.zero(C32)
    x = Form.variable(C32, 1)
    bad_P = FormMatrix([[x]])  # x^2 != x
    with pytest.raises(PreconditionError):
        lift_connection(FormMatrix([[z]]), bad_P)


def test_frobenius_pullback_examples():
    z = Form.zero(C32)
    assert frobenius_pullback(FormMatrix([[z]])).is_zero()
    N = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))]])
    assert frobenius_pullback(N) == FormMatrix([[mono(C32, 3, [(3, 0), (0, 0)], (1,))]])


def test_frobenius_pullback_raises_valuation_and_keeps_integrability():
    import random

    from drwitt.generate import random_integrable

    rng = random.Random(2)
    N = random_integrable(C32, rng, 2)
    pulled = frobenius_pullback(N)
    assert curvature(pulled).is_zero()
    if not pulled.is_zero():
        assert pulled.vp() >= (0 if N.is_zero() else N.vp()) + 1


def test_horizontal_check_examples():
    z = Form.zero(C32)
    N = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))]])
    assert horizontal_check(N, N, FormMatrix.identity(C32, 1))
    Z = FormMatrix([[z]])
    assert not horizontal_check(Z, Z, FormMatrix([[Form.variable(C32, 1)]]))


def test_overconvergence_condition_examples():
    z = Form.zero(C32)
    assert overconvergence_condition(FormMatrix([[z]]), Epsilon(Fraction(1, 4)))
    N = FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))]])
    assert overconvergence_condition(N, Epsilon(Fraction(1, 8)))
    assert not overconvergence_condition(N, Epsilon(Fraction(1, 2)))


def test_idempotent_frobenius_check():
    ident = FormMatrix.identity(C32, 2)
    assert idempotent_frobenius_check(ident)
    P = random_idempotent(C32, random.Random(5), 3)
    assert idempotent_frobenius_check(P)
    x = Form.variable(C32, 1)
    z = Form.zero(C32)
    with pytest.raises(PreconditionError):
        # idempotent but not Frobenius-fixed: not applicable
        idempotent_frobenius_check(FormMatrix([[Form.one(C32), x], [z, z]]))


def test_schanuel_examples():
    rng = random.Random(11)
    r = 2
    P = FormMatrix.identity(C32, r)
    A = FormMatrix([[Form.zero(C32)] * r for _ in range(r)])
    Q, Ncomp = schanuel_complement(P, A)
    assert Ncomp.is_zero()
    ident = FormMatrix.identity(C32, 2 * r)
    assert congruent_matrices((Q @ Q).truncated(), Q)
    assert ((ident - Q) @ Q).truncated().is_zero()
    Pc = random_idempotent(C32, rng, r)
    Ac = (Pc @ FormMatrix([[mono(C32, 1, [(1, 0), (0, 0)], (1,))] * r] * r) @ Pc).truncated()
    Q2, _ = schanuel_complement(Pc, Ac)
    assert congruent_matrices((Q2 @ Q2).truncated(), Q2)


def test_lift_instance_curvature_formula():
    rng = random.Random(3)
    A, P = lift_instance(C32, rng, 3)
    N = lift_connection(A, P)
    assert congruent_matrices(curvature(N), (P.d() @ P @ P.d()).truncated())


def test_rng_expansion_worked_example():
    mod = 16
    out = rng_expansion_check(
        [2, 2],
        [4, 4],
        mul=lambda a, b: (a * b) % mod,
        add=lambda a, b: (a + b) % mod,
        neg=lambda a: (-a) % mod,
        zero=0,
    )
    assert out % mod == 0


def test_rng_expansion_t0():
    out = rng_expansion_check(
        [5], [7], mul=lambda a, b: a * b, add=lambda a, b: a + b, neg=lambda a: -a, zero=0
    )
    assert out == 0


def test_rng_expansion_length_mismatch():
    with pytest.raises(ShapeMismatch):
        rng_expansion_check([1], [1, 2], mul=None, add=None, neg=None, zero=0)
