"""Shared computation context and error types.

A Context fixes the prime p, the number of variables n, the p-adic
truncation level m (we compute in W_m of the complex, i.e. modulo
Fil^m = V^m + dV^m), and caps on weight denominators / total degree.
All forms participating in one computation must share one Context.
"""

from __future__ import annotations

from dataclasses import dataclass


class DrwError(Exception):
    """Base class for all engine errors."""


class ContextMismatch(DrwError):
    pass


class PreconditionError(DrwError):
    """An operation's documented precondition does not hold."""


class NonIntegralError(PreconditionError):
    """A form required to lie in the integral complex W_m does not."""


class WeightOverflow(DrwError):
    """Weight denominator exceeds u_max or total degree exceeds d_max."""


class NotInvertibleError(PreconditionError):
    """Matrix is not invertible at the working precision."""


class ShapeMismatch(PreconditionError):
    pass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Context:
    """Carrier of (p, n, m, u_max, d_max); immutable and hashable."""

    p: int
    n: int
    m: int
    u_max: int = -1  # -1: pick default m + 4
    d_max: int | None = None

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise DrwError(f"p = {self.p} is not prime")
        if self.n < 1:
            raise DrwError("need at least one variable")
        if self.m < 1:
            raise DrwError("precision level m must be >= 1")
        if self.u_max == -1:
            object.__setattr__(self, "u_max", self.m + 4)
        if self.u_max < self.m:
            raise DrwError(f"u_max = {self.u_max} must be >= m = {self.m}")
        if self.d_max is not None and self.d_max < 1:
            raise DrwError("d_max must be positive when set")

    def check_same(self, other: "Context") -> None:
        if self != other:
            raise ContextMismatch(f"context mismatch: {self} vs {other}")
