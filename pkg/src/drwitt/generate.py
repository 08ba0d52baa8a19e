"""Deterministic seeded generators for forms and connection instances.

Integrable instances are built as gauge transforms G^-1 dG, diagonal
exact forms, or comparison-map images of classical integrable matrices,
then conjugated by base changes assembled from Verschiebung-type
perturbations; this is the canonical recipe the property suites and the
CLI `gen` command share.
"""

from __future__ import annotations

import random

from .context import Context
from .decompose import decompose
from .forms import Form, truncate
from .lifts import CharZeroForm, FrobeniusLift, tF_form
from .matrices import BaseChange, FormMatrix, base_change, frobenius_pullback, invert
from .weights import Weight


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_monomial_weight(ctx: Context, rng: random.Random, max_pow=3, max_u=2) -> Weight:
    pairs = []
    for _ in range(ctx.n):
        j = rng.randint(0, max_pow)
        u = rng.randint(0, max_u) if j else 0
        pairs.append((j, u))
    return Weight.make(pairs, ctx.p)


def random_integral_form(
    ctx: Context,
    rng,
    max_terms: int = 4,
    max_pow: int = 3,
    max_u: int = 2,
    degree: int | None = None,
) -> Form:
    """Random element of W_m: a sum of products of Teichmuller monomials,
    V-images and dV-images, hence integral by closure."""
    rng = _rng(rng)
    p = ctx.p
    acc = Form.zero(ctx)
    for _ in range(rng.randint(1, max_terms)):
        coeff = rng.randint(1, p**ctx.m - 1)
        exps = [rng.randint(0, max_pow) for _ in range(ctx.n)]
        piece = Form.monomial(ctx, coeff, Weight.integral(exps, p))
        for _ in range(rng.randint(0, 2)):
            kind = rng.choice(("teich", "v", "dv", "dteich"))
            exps = [rng.randint(0, max_pow) for _ in range(ctx.n)]
            if all(e == 0 for e in exps):
                exps[rng.randrange(ctx.n)] = 1
            base = Form.monomial(ctx, 1, Weight.integral(exps, p))
            if kind in ("v", "dv"):
                for _ in range(rng.randint(1, max_u)):
                    base = base.verschiebung()
            if kind in ("dv", "dteich"):
                base = base.d()
            if base.is_zero():
                continue
            piece = piece * base
        acc = acc + piece
    want = degree
    if want is not None:
        acc = acc.degree_part(want)
    return truncate(acc)


def random_pure_frp(ctx: Context, rng, degree: int = 0, max_pow: int = 3, max_u: int = 2) -> Form:
    """A nonzero pure-frp form: fractional-weight monomials avoiding the
    pivot dlog index, coefficients with v_p >= u."""
    rng = _rng(rng)
    p = ctx.p
    for _ in range(200):
        acc = Form.zero(ctx)
        for _ in range(rng.randint(1, 3)):
            pairs = []
            for _i in range(ctx.n):
                j = rng.randint(0, max_pow)
                u = rng.randint(0, max_u) if j else 0
                pairs.append((j, u))
            w = Weight.make(pairs, p)
            if w.is_integral():
                continue
            i0 = w.pivot()
            choices = [
                i + 1 for i in range(ctx.n) if i != i0 and w.coords[i][0] > 0
            ]
            if degree > len(choices):
                continue
            I = tuple(sorted(rng.sample(choices, degree)))
            coeff = p ** w.u() * rng.randint(1, p**2 - 1)
            acc = acc + Form.monomial(ctx, coeff, w, I)
        acc = truncate(acc)
        if acc and decompose(acc).dfrp.is_zero() and decompose(acc).int_part.is_zero():
            return acc
    raise RuntimeError("could not generate a pure frp form")


def random_pure_int(ctx: Context, rng, degree: int = 1, max_pow: int = 3) -> Form:
    rng = _rng(rng)
    p = ctx.p
    for _ in range(200):
        acc = Form.zero(ctx)
        for _ in range(rng.randint(1, 3)):
            exps = [rng.randint(0, max_pow) for _ in range(ctx.n)]
            positive = [i + 1 for i in range(ctx.n) if exps[i] > 0]
            if len(positive) < degree:
                continue
            I = tuple(sorted(rng.sample(positive, degree)))
            acc = acc + Form.monomial(
                ctx, rng.randint(1, p**ctx.m - 1), Weight.integral(exps, p), I
            )
        acc = truncate(acc)
        if acc:
            return acc
    raise RuntimeError("could not generate a pure int form")


def random_basechange(
    ctx: Context, rng, r: int, pure_frac: bool = False, max_u: int = 2
) -> BaseChange:
    """1 + perturbation with Verschiebung-type entries (and optionally
    p-divisible integral ones); always invertible at precision m."""
    rng = _rng(rng)
    p = ctx.p
    ident = FormMatrix.identity(ctx, r)
    pert = []
    for i in range(r):
        row = []
        for j in range(r):
            f = Form.zero(ctx)
            if rng.random() < 0.7:
                u = rng.randint(1, max_u)
                exps = [rng.randint(0, 2) for _ in range(ctx.n)]
                if all(e == 0 for e in exps):
                    exps[rng.randrange(ctx.n)] = 1
                base = Form.monomial(ctx, rng.randint(1, p - 1), Weight.integral(exps, p))
                for _ in range(u):
                    base = base.verschiebung()
                f = f + base
            if not pure_frac and rng.random() < 0.3:
                exps = [rng.randint(0, 2) for _ in range(ctx.n)]
                f = f + Form.monomial(
                    ctx, p * rng.randint(1, p - 1), Weight.integral(exps, p)
                )
            row.append(f)
        pert.append(row)
    U = (ident + FormMatrix(pert)).truncated()
    return invert(U)


def _random_unit_constant_matrix(ctx: Context, rng, r: int) -> FormMatrix:
    p = ctx.p
    mod = p**ctx.m
    lower = [[rng.randrange(mod) if i > j else 0 for j in range(r)] for i in range(r)]
    upper = [[rng.randrange(mod) if i < j else 0 for j in range(r)] for i in range(r)]
    units = [rng.choice([u for u in range(1, mod) if u % p]) for _ in range(r)]

    def mk(rowsvals, diag) -> FormMatrix:
        return FormMatrix(
            [
                [
                    Form.constant(ctx, diag[i] if i == j else 0)
                    + Form.constant(ctx, rowsvals[i][j])
                    for j in range(r)
                ]
                for i in range(r)
            ]
        )

    L = mk(lower, [1] * r)
    Uu = mk(upper, units)
    return (L @ Uu).truncated()


def _nilpotent_inverse(ctx: Context, E: FormMatrix) -> FormMatrix:
    """(1 + E)^-1 = 1 - E + E^2 - ... for a strictly triangular E."""
    r = E.rows
    acc = FormMatrix.identity(ctx, r)
    term = -E
    for _ in range(r - 1):
        acc = acc + term
        term = term @ (-E)
    return acc.truncated()


def random_gauge(ctx: Context, rng, r: int) -> BaseChange:
    """Invertible degree-0 matrix with explicit inverse: unit constants
    times a unipotent upper-triangular factor with integral deg-0 forms."""
    rng = _rng(rng)
    base = _random_unit_constant_matrix(ctx, rng, r)
    base_bc = invert(base)
    extra = [
        [
            random_integral_form(ctx, rng, max_terms=1, max_pow=2, max_u=1, degree=0)
            if i < j and rng.random() < 0.6
            else Form.zero(ctx)
            for j in range(r)
        ]
        for i in range(r)
    ]
    E = FormMatrix(extra)
    G = (base @ (FormMatrix.identity(ctx, r) + E)).truncated()
    Ginv = (_nilpotent_inverse(ctx, E) @ base_bc.inverse).truncated()
    return BaseChange(G, Ginv)


def random_integrable(ctx: Context, rng, r: int, style: str | None = None) -> FormMatrix:
    """Integrable (curvature-zero) connection matrix."""
    rng = _rng(rng)
    style = style or rng.choice(("gauge", "diag_exact", "tf"))
    if style == "gauge":
        bc = random_gauge(ctx, rng, r)
        return base_change(FormMatrix.zeros(ctx, r), bc)
    if style == "diag_exact":
        z = Form.zero(ctx)
        rows = []
        for i in range(r):
            f = random_integral_form(ctx, rng, max_terms=2, max_pow=2, max_u=1, degree=0)
            rows.append([f.d() if i == j else z for j in range(r)])
        return FormMatrix(rows).truncated()
    if style == "tf":
        return tF_image_connection(ctx, rng, r)
    raise ValueError(f"unknown style {style!r}")


def random_charzero_gauge(ctx: Context, rng, r: int, max_pow: int = 2) -> list[list[CharZeroForm]]:
    """Unipotent upper-triangular polynomial matrix on the classical side."""
    rng = _rng(rng)
    one = CharZeroForm.scalar(ctx, {(0,) * ctx.n: 1})
    zero = CharZeroForm.zero(ctx)
    H = [[one if i == j else zero for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            if rng.random() < 0.7:
                e = tuple(rng.randint(0, max_pow) for _ in range(ctx.n))
                H[i][j] = CharZeroForm(ctx, {(e, ()): rng.randint(1, ctx.p**ctx.m - 1)})
    return H


def _cz_matmul(A, B, ctx):
    r, k, c = len(A), len(B), len(B[0])
    out = []
    for i in range(r):
        row = []
        for j in range(c):
            acc = CharZeroForm.zero(ctx)
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def classical_integrable(ctx: Context, rng, r: int) -> list[list[CharZeroForm]]:
    """A = H^-1 dH for a unipotent H; integrable on the classical side."""
    rng = _rng(rng)
    H = random_charzero_gauge(ctx, rng, r)
    one = CharZeroForm.scalar(ctx, {(0,) * ctx.n: 1})
    zero = CharZeroForm.zero(ctx)
    W = [[H[i][j] if i != j else zero for j in range(r)] for i in range(r)]
    # H = 1 + W with W strictly upper: finite Neumann series
    Hinv = [[one if i == j else zero for j in range(r)] for i in range(r)]
    term = [[-W[i][j] for j in range(r)] for i in range(r)]
    power = term
    for _ in range(r - 1):
        for i in range(r):
            for j in range(r):
                Hinv[i][j] = Hinv[i][j] + power[i][j]
        power = _cz_matmul(power, term, ctx)
    dH = [[H[i][j].d() for j in range(r)] for i in range(r)]
    return _cz_matmul(Hinv, dH, ctx)


def tF_image_connection(
    ctx: Context, rng, r: int, lift: FrobeniusLift | None = None
) -> FormMatrix:
    rng = _rng(rng)
    lift = lift or FrobeniusLift.canonical(ctx)
    A = classical_integrable(ctx, rng, r)
    return FormMatrix([[tF_form(A[i][j], lift) for j in range(r)] for i in range(r)]).truncated()


def random_frobenius_structured(ctx: Context, rng, r: int) -> tuple[FormMatrix, FormMatrix]:
    """(N, N0) with N = pullback(base_change(N0, U)) for a random
    overconvergent U; v_p(N|frac) >= 1 by construction."""
    rng = _rng(rng)
    N0 = random_integrable(ctx, rng, r)
    bc = random_basechange(ctx, rng, r)
    return frobenius_pullback(base_change(N0, bc)), N0


def lift_instance(ctx: Context, rng, r: int, rank: int | None = None) -> tuple[FormMatrix, FormMatrix]:
    """(A, P) satisfying the projector-lift preconditions, where A is the
    compression of an integrable direct-sum connection to im(P).

    Built by conjugating a block-diagonal integrable matrix and the
    coordinate projector by a random gauge, so d(P) is generically
    nonzero and the lifted curvature d(P) P d(P) is nontrivial.
    """
    rng = _rng(rng)
    if rank is None:
        rank = rng.randint(1, max(1, r - 1))
    Nk = random_integrable(ctx, rng, rank)
    if rank == r:
        A0 = Nk
    else:
        A0 = FormMatrix.block_diag(Nk, FormMatrix.zeros(ctx, r - rank))
    D = FormMatrix(
        [
            [Form.constant(ctx, 1 if (i == j and i < rank) else 0) for j in range(r)]
            for i in range(r)
        ]
    )
    S = random_gauge(ctx, rng, r)
    N = base_change(A0, S)
    P = (S.inverse @ D @ S.matrix).truncated()
    A = ((P @ N @ P) + (P @ P.d())).truncated()
    return A, P


def random_idempotent(ctx: Context, rng, r: int, rank: int | None = None) -> FormMatrix:
    """Constant idempotent: a conjugated coordinate projector mod p^m."""
    rng = _rng(rng)
    rank = rng.randint(0, r) if rank is None else rank
    S = _random_unit_constant_matrix(ctx, rng, r)
    Sinv = invert(S)
    D = FormMatrix(
        [
            [Form.constant(ctx, 1 if (i == j and i < rank) else 0) for j in range(r)]
            for i in range(r)
        ]
    )
    return (S @ D @ Sinv.inverse).truncated()


def nonzero_random_integral_form(ctx: Context, rng, **kw) -> Form:
    rng = _rng(rng)
    for _ in range(100):
        f = random_integral_form(ctx, rng, **kw)
        if f:
            return f
    raise RuntimeError("generator kept producing zero forms")
