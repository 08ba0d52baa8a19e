"""Frobenius lifts on the characteristic-0 polynomial side, the induced
comparison maps into the de Rham-Witt model, ghost components, and the
bridge to classical Witt coordinates.

The comparison map t_F sends a polynomial g to the unique degree-0 form
whose ghost components are the Frobenius-lift iterates of g; for the
canonical lift F_i = x_i^p it is the identity embedding of integer-weight
polynomials mod Fil^m.  The coordinate bridge (from/to_witt_coordinates)
exists so that an independent universal-Witt-polynomial oracle can
cross-check the model's ring structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from .context import Context, DrwError, NonIntegralError, PreconditionError
from .forms import Form, teichmuller, truncate
from .padic import reduce_mod, vp
from .polys import (
    Poly,
    poly_add,
    poly_diff,
    poly_divexact,
    poly_mod,
    poly_pow,
    poly_scale,
    poly_subst,
    poly_var,
)
CKey = tuple[tuple[int, ...], tuple[int, ...]]  # (exponents, dx indices)


class CharZeroForm:
    """Finite sum of monomials c * x^beta * dx_{i_1} ^ ... ^ dx_{i_t} with
    integer coefficients known mod p^m; the desk-scale stand-in for the
    lifted de Rham complex at precision m."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[CKey, int] | None = None):
        self.ctx = ctx
        mod = ctx.p**ctx.m
        self.terms: dict[CKey, int] = {}
        if terms:
            for key, c in terms.items():
                r = c % mod
                if r:
                    self.terms[key] = r

    @classmethod
    def zero(cls, ctx: Context) -> "CharZeroForm":
        return cls(ctx)

    @classmethod
    def scalar(cls, ctx: Context, g: Poly) -> "CharZeroForm":
        return cls(ctx, {(e, ()): c for e, c in g.items()})

    @classmethod
    def variable(cls, ctx: Context, i: int) -> "CharZeroForm":
        return cls.scalar(ctx, poly_var(i, ctx.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CharZeroForm)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "CharZeroForm") -> "CharZeroForm":
        self.ctx.check_same(other.ctx)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return CharZeroForm(self.ctx, out)

    def __neg__(self) -> "CharZeroForm":
        return CharZeroForm(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "CharZeroForm") -> "CharZeroForm":
        return self + (-other)

    def __mul__(self, other: "CharZeroForm") -> "CharZeroForm":
        from .forms import merge_dlog  # same sign bookkeeping as the model

        self.ctx.check_same(other.ctx)
        out: dict[CKey, int] = {}
        for (e1, I1), c1 in self.terms.items():
            for (e2, I2), c2 in other.terms.items():
                merged = merge_dlog(I1, I2)
                if merged is None:
                    continue
                sign, I = merged
                e = tuple(x + y for x, y in zip(e1, e2))
                key = (e, I)
                out[key] = out.get(key, 0) + sign * c1 * c2
        return CharZeroForm(self.ctx, out)

    def d(self) -> "CharZeroForm":
        from .forms import insert_index

        out: dict[CKey, int] = {}
        for (e, I), c in self.terms.items():
            for i0, k in enumerate(e):
                i = i0 + 1
                if k == 0 or i in I:
                    continue
                sign, J = insert_index(I, i)
                e2 = list(e)
                e2[i0] = k - 1
                key = (tuple(e2), J)
                out[key] = out.get(key, 0) + sign * c * k
        return CharZeroForm(self.ctx, out)

    def degree_part(self, t: int) -> "CharZeroForm":
        return CharZeroForm(self.ctx, {k: c for k, c in self.terms.items() if len(k[1]) == t})

    def degrees(self) -> set[int]:
        return {len(I) for _, I in self.terms}

    def scalar_poly(self) -> Poly:
        if any(I for _, I in self.terms):
            raise PreconditionError("form has positive-degree terms")
        return {e: c for (e, _), c in self.terms.items()}


@dataclass(frozen=True)
class FrobeniusLift:
    """n polynomials with F_i congruent to x_i^p mod p."""

    ctx: Context
    polys: tuple[Poly, ...]

    def __post_init__(self) -> None:
        ctx = self.ctx
        if len(self.polys) != ctx.n:
            raise DrwError("need one lift polynomial per variable")
        object.__setattr__(
            self, "polys", tuple(poly_mod(f, ctx.p**ctx.m) for f in self.polys)
        )
        for i, f in enumerate(self.polys):
            xi_p = poly_pow(poly_var(i + 1, ctx.n), ctx.p, ctx.n)
            diff = poly_add(poly_mod(f, ctx.p), poly_scale(xi_p, -1), ctx.p)
            if poly_mod(diff, ctx.p):
                raise DrwError(f"F_{i+1} is not congruent to x_{i+1}^p mod p")

    @classmethod
    def canonical(cls, ctx: Context) -> "FrobeniusLift":
        return cls(ctx, tuple(poly_pow(poly_var(i, ctx.n), ctx.p, ctx.n) for i in range(1, ctx.n + 1)))

    def apply_scalar(self, g: Poly) -> Poly:
        mod = self.ctx.p**self.ctx.m
        return poly_subst(g, list(self.polys), self.ctx.n, mod)

    def apply(self, w: CharZeroForm) -> CharZeroForm:
        """The induced dga endomorphism: x_i -> F_i, dx_i -> dF_i."""
        ctx = self.ctx
        dF = [
            CharZeroForm(
                ctx,
                {
                    (e, (j,)): c
                    for j in range(1, ctx.n + 1)
                    for e, c in poly_diff(self.polys[i], j).items()
                },
            )
            for i in range(ctx.n)
        ]
        out = CharZeroForm.zero(ctx)
        for (e, I), c in w.terms.items():
            term = CharZeroForm.scalar(ctx, poly_scale(self.apply_scalar({e: 1}), c))
            for i in I:
                term = term * dF[i - 1]
            out = out + term
        return out


def ghost(a: Form, r: int) -> Poly:
    """Ghost component: integer-weight part of F^r(a), coefficients mod
    p^{r+1}; a ring homomorphism for each r."""
    ctx = a.ctx
    if a.degrees() not in (set(), {0}):
        raise PreconditionError("ghost requires a degree-0 form")
    if not (0 <= r < ctx.m):
        raise PreconditionError(f"ghost level r = {r} must satisfy 0 <= r < m = {ctx.m}")
    b = a
    for _ in range(r):
        b = b.frobenius()
    mod_exp = r + 1
    out: Poly = {}
    for (w, _I), c in b.integer_weight_part().terms.items():
        e = tuple(j for j, _u in w.coords)
        val = reduce_mod(c, ctx.p, mod_exp)
        if val:
            out[e] = (out.get(e, 0) + val) % ctx.p ** mod_exp
    return {e: c for e, c in out.items() if c}


def from_witt_coordinates(coords: list[Poly], ctx: Context) -> Form:
    """sum_i V^i([coords_i]) mod Fil^m."""
    if len(coords) != ctx.m:
        raise PreconditionError(f"need exactly m = {ctx.m} coordinates")
    acc = Form.zero(ctx)
    for i, f in enumerate(coords):
        # V^i lands in Fil^i, so the lift is only needed mod Fil^{m-i}
        t = teichmuller(f, ctx, level=ctx.m - i)
        for _ in range(i):
            t = t.verschiebung()
        acc = acc + t
    return truncate(acc)


def to_witt_coordinates(a: Form) -> list[Poly]:
    """Left inverse of from_witt_coordinates mod Fil^m, by successive
    peeling of the Teichmuller part."""
    ctx = a.ctx
    if a.degrees() not in (set(), {0}):
        raise PreconditionError("to_witt_coordinates requires a degree-0 form")
    if not a.is_integral():
        raise NonIntegralError("to_witt_coordinates requires an integral form")
    p = ctx.p
    cur = truncate(a)
    coords: list[Poly] = []
    for step in range(ctx.m):
        a0: Poly = {}
        for (w, _I), c in cur.integer_weight_part().terms.items():
            r = reduce_mod(c, p, 1)
            if r:
                a0[tuple(j for j, _u in w.coords)] = r
        coords.append(a0)
        if step == ctx.m - 1:
            break
        diff = cur - teichmuller(a0, ctx, level=ctx.m - step)
        shifted = diff.frobenius()
        terms = {}
        for key, c in shifted.terms.items():
            if vp(c, p) < 1:
                raise PreconditionError(
                    "peeling residue not divisible by p: not a degree-0 Witt element"
                )
            terms[key] = c / p
        cur = truncate(Form(ctx, terms), ctx.m - step - 1)
    return coords


def tF_scalar(g: Poly | CharZeroForm, lift: FrobeniusLift) -> Form:
    """delta-ring comparison map on scalars: the unique integral degree-0
    form t with ghost(t, r) = lift^r(g) mod p^{r+1} for all r < m.

    Solved through the classical Witt-coordinate recursion; division by
    p^r at step r is exact by the Dwork congruence (asserted)."""
    ctx = lift.ctx
    if isinstance(g, CharZeroForm):
        ctx.check_same(g.ctx)
        g = g.scalar_poly()
    p, m, n = ctx.p, ctx.m, ctx.n
    ghosts: list[Poly] = [dict(g)]
    for _ in range(m - 1):
        ghosts.append(lift.apply_scalar(ghosts[-1]))
    # extra headroom: ghost r only matters mod p^{r+1}, but the divisions
    # below need the w_r known mod p^m, which apply_scalar maintains
    coords: list[Poly] = []
    for r in range(m):
        mod = p ** (r + 1)
        acc: Poly = {}
        for i, ai in enumerate(coords):
            acc = poly_add(acc, poly_scale(poly_pow(ai, p ** (r - i), n, mod), p**i, mod), mod)
        resid = poly_mod(poly_add(ghosts[r], poly_scale(acc, -1)), mod)
        try:
            ar = poly_mod(poly_divexact(resid, p**r), p)
        except ValueError as exc:
            raise DrwError(f"Dwork congruence failed at level {r}: {exc}") from exc
        coords.append(ar)
    return from_witt_coordinates(coords, ctx)


def tF_form(w: CharZeroForm, lift: FrobeniusLift) -> Form:
    """Extension of tF_scalar to a morphism of dgas: dx_i maps to
    d(tF_scalar(x_i))."""
    ctx = lift.ctx
    ctx.check_same(w.ctx)
    dxi = [tF_scalar(poly_var(i, ctx.n), lift).d() for i in range(1, ctx.n + 1)]
    out = Form.zero(ctx)
    for (e, I), c in w.terms.items():
        piece = tF_scalar({e: c}, lift)
        for i in I:
            piece = piece * dxi[i - 1]
        out = out + piece
    return truncate(out)


def phi_twist(a: Form) -> Form:
    """phi = p^i F on the degree-i part; a morphism of dgas."""
    ctx = a.ctx
    out = Form.zero(ctx)
    for t in sorted(a.degrees()):
        out = out + a.degree_part(t).frobenius().scale(ctx.p**t)
    return out
