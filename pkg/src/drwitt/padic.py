"""Exact p-adic coefficient arithmetic on rational numbers.

Coefficients live in Z_(p) extended by powers of 1/p, i.e. arbitrary
rationals whose p-part we track exactly.  We store them as plain
fractions.Fraction; the helpers here compute v_p and canonical residues
mod p^s (well defined whenever the denominator is prime to p).
"""

from __future__ import annotations

from fractions import Fraction

from .context import DrwError


def vp(q: Fraction | int, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational."""
    if q == 0:
        raise ValueError("v_p(0) is +infinity, handle separately")
    if isinstance(q, int):
        num, den = q, 1
    else:
        num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def reduce_mod(q: Fraction | int, p: int, s: int) -> int:
    """Canonical residue of a p-integral rational mod p^s, in [0, p^s).

    Requires v_p(q) >= 0 (denominator prime to p after cancelling).
    """
    if s <= 0:
        return 0
    mod = p**s
    if isinstance(q, int):
        return q % mod
    num, den = q.numerator, q.denominator
    while den % p == 0:
        if num % p:
            raise DrwError(f"cannot reduce {q} mod {p}^{s}: negative valuation")
        num //= p
        den //= p
    return (num * pow(den, -1, mod)) % mod


def coeff_to_pair(q: Fraction, p: int) -> tuple[int | str, int]:
    """Serialize q as (num, pexp) with value num / p^pexp.

    num is an int when the prime-to-p denominator is 1, otherwise the
    string "a/b".  Large integers are rendered as decimal strings.
    """
    pexp = max(0, -vp(q, p)) if q != 0 else 0
    scaled = q * p**pexp
    num, den = scaled.numerator, scaled.denominator
    if den == 1:
        out: int | str = num if abs(num) < 2**53 else str(num)
    else:
        out = f"{num}/{den}"
    return out, pexp


def coeff_from_pair(num: int | str, pexp: int, p: int) -> Fraction:
    if isinstance(num, str):
        if "/" in num:
            a, b = num.split("/", 1)
            val = Fraction(int(a), int(b))
        else:
            val = Fraction(int(num))
    else:
        val = Fraction(num)
    if pexp < 0:
        raise DrwError("pexp must be >= 0")
    return val / p**pexp
