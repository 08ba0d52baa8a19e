"""The fractional-exponent monomial model of the truncated de Rham-Witt
complex of F_p[x_1..x_n].

A form is a finite sum of monomials c * x^k * dlog x_I with c an exact
rational, k a weight in (Z[1/p]_{>=0})^n and I a strictly increasing list
of 1-based variable indices (each with k_i > 0).  The model rules:

    F: k -> p*k                         (coefficient unchanged)
    V: c -> p*c, k -> k/p
    d(c x^k dlog_I) = sum_{i not in I} c*k_i x^k dlog_{I+i}  (Koszul signs)

A form is integral (lies in the complex) iff every coefficient of it and
of its differential has v_p >= 0; filtration Fil^m = V^m + dV^m gives the
truncation W_m.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .context import Context, DrwError, NonIntegralError
from .padic import reduce_mod, vp
from .weights import Weight

INF = float("inf")

Key = tuple[Weight, tuple[int, ...]]


def merge_dlog(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Merge two sorted dlog index tuples; returns (sign, merged) or None
    when an index repeats (the wedge vanishes)."""
    sign = 1
    out: list[int] = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i entries of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def insert_index(I: tuple[int, ...], i: int) -> tuple[int, tuple[int, ...]]:
    """Sign and result of dlog_i wedge dlog_I (i not in I)."""
    pos = sum(1 for j in I if j < i)
    sign = -1 if pos % 2 else 1
    return sign, tuple(sorted(I + (i,)))


def delete_index(I: tuple[int, ...], i: int) -> tuple[int, tuple[int, ...]]:
    """Sign and result of the interior contraction removing dlog_i from I."""
    pos = I.index(i)
    sign = -1 if pos % 2 else 1
    return sign, I[:pos] + I[pos + 1 :]


class Form:
    """Immutable-by-convention sparse sum of monomial differential forms."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[Key, Fraction] | None = None):
        self.ctx = ctx
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c if isinstance(c, Fraction) else Fraction(c)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ctx: Context) -> "Form":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: Context) -> "Form":
        return cls.monomial(ctx, Fraction(1), Weight.zero(ctx.n), ())

    @classmethod
    def constant(cls, ctx: Context, c) -> "Form":
        return cls.monomial(ctx, Fraction(c), Weight.zero(ctx.n), ())

    @classmethod
    def monomial(cls, ctx: Context, coeff, weight: Weight, dlog: Iterable[int] = ()) -> "Form":
        I = tuple(sorted(dlog))
        if len(set(I)) != len(I):
            raise DrwError("repeated dlog index")
        weight.validate(ctx)
        for i in I:
            if not 1 <= i <= ctx.n:
                raise DrwError(f"dlog index {i} out of range 1..{ctx.n}")
            if weight.coords[i - 1][0] == 0:
                raise DrwError(f"dlog x_{i} with zero exponent in x_{i}")
        return cls(ctx, {(weight, I): Fraction(coeff)})

    @classmethod
    def variable(cls, ctx: Context, i: int) -> "Form":
        exps = [0] * ctx.n
        exps[i - 1] = 1
        return cls.monomial(ctx, 1, Weight.integral(exps, ctx.p))

    # -- basic protocol ------------------------------------------------
    def __iter__(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Form) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].coords, kv[0][1]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (w, I), c in self.sorted_terms():
            mono = "*".join(
                f"x{i+1}^({j}/{self.ctx.p}^{u})" if u else f"x{i+1}^{j}"
                for i, (j, u) in enumerate(w.coords)
                if j
            )
            dl = "".join(f" dlog{i}" for i in I)
            bits.append(f"{c}*{mono or '1'}{dl}")
        return " + ".join(bits)

    # -- degrees -------------------------------------------------------
    def degrees(self) -> set[int]:
        return {len(I) for _, I in self.terms}

    def degree_part(self, t: int) -> "Form":
        return Form(self.ctx, {k: c for k, c in self.terms.items() if len(k[1]) == t})

    def homogeneous_degree(self) -> int | None:
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise DrwError("form is not degree-homogeneous")
        return degs.pop()

    def weight_groups(self) -> dict[Weight, dict[tuple[int, ...], Fraction]]:
        out: dict[Weight, dict[tuple[int, ...], Fraction]] = {}
        for (w, I), c in self.terms.items():
            out.setdefault(w, {})[I] = c
        return out

    # -- ring / dga operations ------------------------------------------
    def __add__(self, other: "Form") -> "Form":
        self.ctx.check_same(other.ctx)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return Form(self.ctx, terms)

    def __neg__(self) -> "Form":
        return Form(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        c = Fraction(c)
        if not c:
            return Form(self.ctx)
        return Form(self.ctx, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "Form") -> "Form":
        self.ctx.check_same(other.ctx)
        p, ctx = self.ctx.p, self.ctx
        terms: dict[Key, Fraction] = {}
        for (w1, I1), c1 in self.terms.items():
            for (w2, I2), c2 in other.terms.items():
                merged = merge_dlog(I1, I2)
                if merged is None:
                    continue
                sign, I = merged
                w = w1.add(w2, p, ctx)
                key = (w, I)
                s = terms.get(key, Fraction(0)) + sign * c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return Form(ctx, terms)

    def d(self) -> "Form":
        p = self.ctx.p
        terms: dict[Key, Fraction] = {}
        for (w, I), c in self.terms.items():
            for i0, (j, u) in enumerate(w.coords):
                i = i0 + 1
                if j == 0 or i in I:
                    continue
                sign, J = insert_index(I, i)
                coeff = c * Fraction(j, p**u) * sign
                key = (w, J)
                s = terms.get(key, Fraction(0)) + coeff
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return Form(self.ctx, terms)

    def frobenius(self) -> "Form":
        p = self.ctx.p
        terms: dict[Key, Fraction] = {}
        for (w, I), c in self.terms.items():
            terms[(w.times_p(p), I)] = c
        return Form(self.ctx, terms)

    def verschiebung(self) -> "Form":
        p, ctx = self.ctx.p, self.ctx
        terms: dict[Key, Fraction] = {}
        for (w, I), c in self.terms.items():
            terms[(w.div_p(p, ctx), I)] = c * p
        return Form(ctx, terms)

    # -- integrality, valuation ----------------------------------------
    def is_integral(self) -> bool:
        p = self.ctx.p
        if any(vp(c, p) < 0 for c in self.terms.values()):
            return False
        return all(vp(c, p) >= 0 for c in self.d().terms.values())

    def vp(self) -> int | float:
        """max s with p^-s * self still integral; +inf on the zero form."""
        if not self.is_integral():
            raise NonIntegralError("vp of a non-integral form")
        if not self.terms:
            return INF
        p = self.ctx.p
        v = min(vp(c, p) for c in self.terms.values())
        da = self.d()
        if da.terms:
            v = min(v, min(vp(c, p) for c in da.terms.values()))
        return v

    def integer_weight_part(self) -> "Form":
        return Form(self.ctx, {k: c for k, c in self.terms.items() if k[0].is_integral()})

    def fractional_weight_part(self) -> "Form":
        return Form(self.ctx, {k: c for k, c in self.terms.items() if not k[0].is_integral()})


# -- the per-weight Koszul splitting (shared by decompose and truncate) --


def koszul_split(a: Form) -> tuple[Form, Form, Form, dict[Weight, Form]]:
    """Split a into (int, frp, dfrp) with the d(frp) preimages per weight.

    For each fractional weight k, with i0 the coordinate of maximal
    denominator exponent (smallest index on ties) and h = (1/k_{i0}) * iota_{i0},
    the d(frp) part at k is d(h(a_k)) and the frp part the remainder;
    integral weights go to the int part unchanged.  Exact homotopy:
    d h + h d = id on weight-k forms, so a_k = d(h(a_k)) + h(d(a_k)).
    """
    ctx = a.ctx
    p = ctx.p
    int_terms: dict[Key, Fraction] = {}
    frp = Form(ctx)
    dfrp = Form(ctx)
    preimages: dict[Weight, Form] = {}
    for w, group in a.weight_groups().items():
        if w.is_integral():
            for I, c in group.items():
                int_terms[(w, I)] = c
            continue
        i0 = w.pivot()
        k0 = w.coord(i0, p)
        pre_terms: dict[Key, Fraction] = {}
        for I, c in group.items():
            if (i0 + 1) in I:
                sign, J = delete_index(I, i0 + 1)
                key = (w, J)
                s = pre_terms.get(key, Fraction(0)) + sign * c / k0
                if s:
                    pre_terms[key] = s
                else:
                    pre_terms.pop(key, None)
        pre = Form(ctx, pre_terms)
        dpre = pre.d()
        group_form = Form(ctx, {(w, I): c for I, c in group.items()})
        frp = frp + (group_form - dpre)
        dfrp = dfrp + dpre
        if pre:
            preimages[w] = pre
    return Form(ctx, int_terms), frp, dfrp, preimages


def truncate(a: Form, level: int | None = None) -> Form:
    """Canonical representative of a modulo Fil^level = V^level + dV^level.

    int and frp coefficients reduce mod p^level; the d(frp) part reduces
    through its d-preimage mod p^{max(level, u)}, which on the pivot
    coefficient is reduction mod p^{level-u} and drops the whole weight
    group once u >= level.  Idempotent; requires an integral input.
    """
    ctx = a.ctx
    m = ctx.m if level is None else level
    if not a.is_integral():
        raise NonIntegralError("truncate requires an integral form")
    p = ctx.p
    int_part, frp, _dfrp, preimages = koszul_split(a)
    out: dict[Key, Fraction] = {}
    for (w, I), c in int_part.terms.items():
        r = reduce_mod(c, p, m)
        if r:
            out[(w, I)] = Fraction(r)
    for (w, I), c in frp.terms.items():
        r = reduce_mod(c, p, m)
        if r:
            out[(w, I)] = Fraction(r)
    acc = Form(ctx, out)
    for w, pre in preimages.items():
        s = max(m, w.u())
        red = Form(ctx, {k: Fraction(reduce_mod(c, p, s)) for k, c in pre.terms.items()})
        acc = acc + red.d()
    return acc


def congruent(a: Form, b: Form, level: int | None = None) -> bool:
    """a == b modulo Fil^level."""
    return truncate(a - b, level).is_zero()


def teichmuller(poly: dict[tuple[int, ...], int], ctx: Context, level: int | None = None) -> Form:
    """Multiplicative lift [f] mod Fil^level of f in F_p[x_1..x_n].

    Computed as (lift of f at x_i -> x_i^{1/p^{level-1}})^{p^{level-1}},
    truncated; level defaults to the context precision m.  The power runs
    over integer exponent dictionaries with coefficients mod p^level:
    degree-0 truncation only ever reduces coefficients mod that power, so
    this is exact and avoids rational arithmetic.  Callers that only need
    [f] mod a lower filtration step (e.g. under V^i) pass level = m - i.
    """
    p, n = ctx.p, ctx.n
    m = ctx.m if level is None else level
    if m < 1:
        raise DrwError("teichmuller level must be >= 1")
    mod = p**m
    base: dict[tuple[int, ...], int] = {}
    for exps, c in poly.items():
        if len(exps) != n:
            raise DrwError("exponent tuple length differs from n")
        c = c % p
        if c:
            base[tuple(exps)] = c

    def dict_mul(a, b):
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = (out.get(e, 0) + c1 * c2) % mod
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    result = {(0,) * n: 1}
    sq = base
    e = p ** (m - 1)
    while e:
        if e & 1:
            result = dict_mul(result, sq)
        e >>= 1
        if e:
            sq = dict_mul(sq, sq)
    terms: dict[Key, Fraction] = {}
    for exps, c in result.items():
        w = Weight.make([(x, m - 1) for x in exps], p)
        w.validate(ctx)  # degree overflow surfaces here when d_max is set
        terms[(w, ())] = Fraction(c)
    return truncate(Form(ctx, terms), m)
