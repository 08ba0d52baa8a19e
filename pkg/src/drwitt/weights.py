"""Exponent vectors in (Z[1/p]_{>=0})^n.

A weight stores one pair (j_i, u_i) per variable meaning k_i = j_i / p^{u_i},
kept canonical: j_i = 0 implies u_i = 0, and u_i > 0 implies p does not
divide j_i (u is minimal).  u(k) = max_i u_i measures V-depth; |k| is the
exact total degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import Context, DrwError, WeightOverflow


def _canon_pair(j: int, u: int, p: int) -> tuple[int, int]:
    if j < 0 or u < 0:
        raise DrwError(f"weight pair ({j},{u}) out of range")
    if j == 0:
        return (0, 0)
    while u > 0 and j % p == 0:
        j //= p
        u -= 1
    return (j, u)


@dataclass(frozen=True, slots=True)
class Weight:
    coords: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, pairs, p: int) -> "Weight":
        return cls(tuple(_canon_pair(j, u, p) for j, u in pairs))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls(((0, 0),) * n)

    @classmethod
    def integral(cls, exps, p: int) -> "Weight":
        return cls.make([(e, 0) for e in exps], p)

    def u(self) -> int:
        return max(ui for _, ui in self.coords)

    def is_integral(self) -> bool:
        return self.u() == 0

    def is_zero(self) -> bool:
        return all(j == 0 for j, _ in self.coords)

    def total(self, p: int) -> Fraction:
        return sum((Fraction(j, p**u) for j, u in self.coords), Fraction(0))

    def coord(self, i: int, p: int) -> Fraction:
        j, u = self.coords[i]
        return Fraction(j, p**u)

    def pivot(self) -> int:
        """0-based index of the coordinate of maximal denominator exponent,
        ties broken by smallest index."""
        best, arg = -1, 0
        for i, (_, u) in enumerate(self.coords):
            if u > best:
                best, arg = u, i
        return arg

    def times_p(self, p: int) -> "Weight":
        out = []
        for j, u in self.coords:
            if u > 0:
                out.append((j, u - 1))
            else:
                out.append((j * p, 0))
        return Weight(tuple(out))

    def div_p(self, p: int, ctx: Context) -> "Weight":
        out = []
        for j, u in self.coords:
            if j == 0:
                out.append((0, 0))
            elif j % p == 0:
                out.append((j // p, u))
            else:
                if u + 1 > ctx.u_max:
                    raise WeightOverflow(
                        f"denominator exponent {u + 1} exceeds u_max = {ctx.u_max}"
                    )
                out.append((j, u + 1))
        return Weight(tuple(out))

    def add(self, other: "Weight", p: int, ctx: Context | None = None) -> "Weight":
        out = []
        for (j1, u1), (j2, u2) in zip(self.coords, other.coords):
            u = max(u1, u2)
            j = j1 * p ** (u - u1) + j2 * p ** (u - u2)
            out.append(_canon_pair(j, u, p))
        w = Weight(tuple(out))
        if ctx is not None:
            if any(u > ctx.u_max for _, u in w.coords):
                raise WeightOverflow(f"weight {w.coords} exceeds u_max = {ctx.u_max}")
            if ctx.d_max is not None and w.total(p) > ctx.d_max:
                raise WeightOverflow(f"total degree of {w.coords} exceeds d_max = {ctx.d_max}")
        return w

    def validate(self, ctx: Context) -> None:
        if len(self.coords) != ctx.n:
            raise DrwError(f"weight has {len(self.coords)} coordinates, context has n = {ctx.n}")
        for j, u in self.coords:
            if j < 0 or u < 0:
                raise DrwError(f"weight pair ({j},{u}) out of range")
            if j == 0 and u != 0:
                raise DrwError("non-canonical weight: zero numerator with u > 0")
            if u > 0 and j % ctx.p == 0:
                raise DrwError("non-canonical weight: numerator divisible by p with u > 0")
            if u > ctx.u_max:
                raise WeightOverflow(f"denominator exponent {u} exceeds u_max = {ctx.u_max}")
        if ctx.d_max is not None and self.total(ctx.p) > ctx.d_max:
            raise WeightOverflow(f"total degree exceeds d_max = {ctx.d_max}")
