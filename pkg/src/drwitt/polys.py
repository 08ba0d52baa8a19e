"""Sparse integer polynomials in n variables (dict exponent-tuple -> int).

Plumbing shared by the Frobenius-lift machinery: classical polynomial
rings over Z or Z/p^s sit on the characteristic-0 side of the comparison
map and as Witt coordinates.
"""

from __future__ import annotations

Poly = dict[tuple[int, ...], int]


def poly_zero() -> Poly:
    return {}


def poly_const(c: int, n: int) -> Poly:
    return {(0,) * n: c} if c else {}


def poly_var(i: int, n: int) -> Poly:
    e = [0] * n
    e[i - 1] = 1
    return {tuple(e): 1}


def poly_add(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if mod:
            s %= mod
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_scale(a: Poly, c: int, mod: int | None = None) -> Poly:
    out: Poly = {}
    for e, v in a.items():
        s = v * c
        if mod:
            s %= mod
        if s:
            out[e] = s
    return out


def poly_mul(a: Poly, b: Poly, mod: int | None = None) -> Poly:
    out: Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if mod:
                s %= mod
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_pow(a: Poly, k: int, n: int, mod: int | None = None) -> Poly:
    result = poly_const(1, n)
    sq = a
    while k:
        if k & 1:
            result = poly_mul(result, sq, mod)
        k >>= 1
        if k:
            sq = poly_mul(sq, sq, mod)
    return result


def poly_mod(a: Poly, mod: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        r = c % mod
        if r:
            out[e] = r
    return out


def poly_subst(g: Poly, subs: list[Poly], n: int, mod: int | None = None) -> Poly:
    """Evaluate g at x_i = subs[i-1] (each a polynomial in the same ring)."""
    out: Poly = {}
    powers: list[dict[int, Poly]] = [dict() for _ in range(n)]
    for e, c in g.items():
        term = poly_const(c, n)
        for i, exp in enumerate(e):
            if exp == 0:
                continue
            cache = powers[i]
            if exp not in cache:
                cache[exp] = poly_pow(subs[i], exp, n, mod)
            term = poly_mul(term, cache[exp], mod)
        out = poly_add(out, term, mod)
    return out


def poly_diff(a: Poly, i: int) -> Poly:
    """Partial derivative with respect to x_i (1-based)."""
    out: Poly = {}
    for e, c in a.items():
        k = e[i - 1]
        if k == 0:
            continue
        e2 = list(e)
        e2[i - 1] = k - 1
        out[tuple(e2)] = out.get(tuple(e2), 0) + c * k
    return {e: c for e, c in out.items() if c}


def poly_divexact(a: Poly, q: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        d, r = divmod(c, q)
        if r:
            raise ValueError(f"coefficient {c} not divisible by {q}")
        if d:
            out[e] = d
    return out
