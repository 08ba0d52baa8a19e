"""Classical truncated Witt vectors over F_p[x] via universal polynomials.

Deliberately independent of the fractional-exponent model: elements are
coordinate lists of integer polynomials, ring operations are computed by
the exact ghost-component recursion (all divisions provably exact over
Z), and ghost components follow w_r = sum p^i a_i^{p^{r-i}}.  Used only
for differential testing of the model's degree-0 ring structure.
"""

from __future__ import annotations

from .polys import Poly, poly_add, poly_divexact, poly_mod, poly_mul, poly_pow, poly_scale

Coords = list[Poly]


def ghost_polynomial(coords: Coords, r: int, p: int, n: int, mod: int | None = None) -> Poly:
    """w_r = sum_{i<=r} p^i * a_i^{p^{r-i}} over Z (or mod `mod`)."""
    acc: Poly = {}
    for i, a in enumerate(coords[: r + 1]):
        acc = poly_add(acc, poly_scale(poly_pow(a, p ** (r - i), n, mod), p**i, mod), mod)
    return acc


def _from_ghosts(ghosts: list[Poly], p: int, n: int) -> Coords:
    """Invert the ghost map; divisions are exact for ghost sequences of
    genuine Witt vectors.  Only the residue mod p^{r+1} of w_r matters
    for coordinate r, so all arithmetic happens at that modulus."""
    coords: Coords = []
    for r, w in enumerate(ghosts):
        mod = p ** (r + 1)
        acc: Poly = {}
        for i, a in enumerate(coords):
            acc = poly_add(acc, poly_scale(poly_pow(a, p ** (r - i), n, mod), p**i, mod), mod)
        resid = poly_mod(poly_add(poly_mod(w, mod), poly_scale(acc, -1)), mod)
        coords.append(poly_mod(poly_divexact(resid, p**r), p))
    return coords


def witt_sum(a: Coords, b: Coords, p: int, n: int) -> Coords:
    m = len(a)
    ghosts = [
        poly_add(
            ghost_polynomial(a, r, p, n, p ** (r + 1)),
            ghost_polynomial(b, r, p, n, p ** (r + 1)),
            p ** (r + 1),
        )
        for r in range(m)
    ]
    return _from_ghosts(ghosts, p, n)


def witt_prod(a: Coords, b: Coords, p: int, n: int) -> Coords:
    m = len(a)
    ghosts = [
        poly_mul(
            ghost_polynomial(a, r, p, n, p ** (r + 1)),
            ghost_polynomial(b, r, p, n, p ** (r + 1)),
            p ** (r + 1),
        )
        for r in range(m)
    ]
    return _from_ghosts(ghosts, p, n)
