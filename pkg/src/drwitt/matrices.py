"""Connection-matrix calculus over the model dga: curvature, evaluation,
base change, projector lifts, Frobenius pullback, the overconvergence
condition, and the successive-approximation normalization that drives the
fractional part of an integrable matrix to zero.

Matrices are dense tuples of Forms, always stored truncated mod Fil^m.
A tracked power-of-p scale (`pscale`) realizes the [1/p] localization:
the represented matrix is p^pscale times the stored entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import (
    Context,
    DrwError,
    NotInvertibleError,
    PreconditionError,
    ShapeMismatch,
)
from .decompose import Epsilon, d_inverse, decompose, zeta_check
from .forms import INF, Form, truncate


class FormMatrix:
    __slots__ = ("ctx", "rows", "cols", "entries", "pscale")

    def __init__(self, entries, pscale: int = 0):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeMismatch("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged matrix")
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.ctx = rows[0][0].ctx
        self.pscale = pscale
        for r in rows:
            for f in r:
                self.ctx.check_same(f.ctx)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, ctx: Context, rows: int, cols: int | None = None) -> "FormMatrix":
        cols = rows if cols is None else cols
        z = Form.zero(ctx)
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ctx: Context, r: int) -> "FormMatrix":
        one, z = Form.one(ctx), Form.zero(ctx)
        return cls([[one if i == j else z for j in range(r)] for i in range(r)])

    @classmethod
    def block_diag(cls, a: "FormMatrix", b: "FormMatrix") -> "FormMatrix":
        if a.pscale != b.pscale:
            raise ShapeMismatch("block_diag with mismatched scales")
        ctx = a.ctx
        z = Form.zero(ctx)
        rows = []
        for i in range(a.rows):
            rows.append(list(a.entries[i]) + [z] * b.cols)
        for i in range(b.rows):
            rows.append([z] * a.cols + list(b.entries[i]))
        return cls(rows, a.pscale)

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormMatrix)
            and self.pscale == other.pscale
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.entries, self.pscale))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(repr(f) for f in row) for row in self.entries)
        scale = f" * p^{self.pscale}" if self.pscale else ""
        return f"[{body}]{scale}"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, fn) -> "FormMatrix":
        return FormMatrix([[fn(f) for f in row] for row in self.entries], self.pscale)

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def degrees(self) -> set[int]:
        out: set[int] = set()
        for row in self.entries:
            for f in row:
                out |= f.degrees()
        return out

    # -- arithmetic ---------------------------------------------------------
    def _aligned(self, other: "FormMatrix") -> tuple["FormMatrix", "FormMatrix", int]:
        s = min(self.pscale, other.pscale)
        p = self.ctx.p

        def rescale(mat: "FormMatrix") -> "FormMatrix":
            if mat.pscale == s:
                return mat
            factor = p ** (mat.pscale - s)
            return FormMatrix([[f.scale(factor) for f in row] for row in mat.entries], s)

        return rescale(self), rescale(other), s

    def __add__(self, other: "FormMatrix") -> "FormMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("matrix addition shape mismatch")
        a, b, s = self._aligned(other)
        return FormMatrix(
            [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a.entries, b.entries)], s
        )

    def __neg__(self) -> "FormMatrix":
        return self.map(lambda f: -f)

    def __sub__(self, other: "FormMatrix") -> "FormMatrix":
        return self + (-other)

    def __matmul__(self, other: "FormMatrix") -> "FormMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch("matrix product shape mismatch")
        ctx = self.ctx
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Form.zero(ctx)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return FormMatrix(out, self.pscale + other.pscale)

    def d(self) -> "FormMatrix":
        return self.map(lambda f: f.d())

    def frobenius(self) -> "FormMatrix":
        return self.map(lambda f: f.frobenius())

    def scale_forms(self, c) -> "FormMatrix":
        return self.map(lambda f: f.scale(c))

    def truncated(self, level: int | None = None) -> "FormMatrix":
        return self.map(lambda f: truncate(f, level))

    # -- valuation & parts ----------------------------------------------------
    def vp(self) -> int | float:
        best = INF
        for row in self.entries:
            for f in row:
                v = f.vp()
                if v < best:
                    best = v
        return best if best is INF else best + self.pscale

    def int_part(self) -> "FormMatrix":
        return self.map(lambda f: decompose(f).int_part)

    def frp_part(self) -> "FormMatrix":
        return self.map(lambda f: decompose(f).frp)

    def dfrp_part(self) -> "FormMatrix":
        return self.map(lambda f: decompose(f).dfrp)

    def frac_part(self) -> "FormMatrix":
        return self.map(lambda f: decompose(f).frac)


def congruent_matrices(a: FormMatrix, b: FormMatrix, level: int | None = None) -> bool:
    diff = (a - b).truncated(level)
    return diff.is_zero()


@dataclass(frozen=True)
class BaseChange:
    """Invertible degree-0 matrix with its cached inverse at precision m."""

    matrix: FormMatrix
    inverse: FormMatrix

    @property
    def ctx(self) -> Context:
        return self.matrix.ctx


def _constant_coefficient(f: Form) -> Fraction:
    for (w, I), c in f.terms.items():
        if w.is_zero() and not I:
            return c
    return Fraction(0)


def _fraction_inverse(mat: list[list[Fraction]], p: int) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse; requires the determinant to be a p-unit."""
    from .padic import vp as frac_vp

    r = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(mat)]
    det_vp = 0
    for col in range(r):
        pivot = None
        for i in range(col, r):
            if aug[i][col]:
                if pivot is None or abs(frac_vp(aug[i][col], p)) < abs(frac_vp(aug[pivot][col], p)):
                    pivot = i
        if pivot is None:
            raise NotInvertibleError("leading part singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        det_vp += frac_vp(pv, p)
        aug[col] = [x / pv for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    if det_vp != 0:
        raise NotInvertibleError("leading part not invertible mod p")
    return [row[r:] for row in aug]


def invert(U: FormMatrix) -> BaseChange:
    """Exact inverse at precision m via constant-part inversion plus a
    truncated Neumann series; errors when the series does not converge
    (the matrix is not a unit in W_m)."""
    if not U.is_square():
        raise ShapeMismatch("only square matrices invert")
    if U.degrees() not in (set(), {0}):
        raise PreconditionError("base-change matrices must have degree-0 entries")
    ctx = U.ctx
    const = [[_constant_coefficient(f) for f in row] for row in U.entries]
    cinv = _fraction_inverse(const, ctx.p)
    X0 = FormMatrix([[Form.constant(ctx, c) for c in row] for row in cinv])
    W = (FormMatrix.identity(ctx, U.rows) - (X0 @ FormMatrix(U.entries))).truncated()
    series = FormMatrix.identity(ctx, U.rows)
    term = W
    cap = ctx.m * (ctx.u_max + 2) + 8
    steps = 0
    while not term.is_zero():
        series = (series + term).truncated()
        term = (term @ W).truncated()
        steps += 1
        if steps > cap:
            raise NotInvertibleError("Neumann series does not converge at this precision")
    inv = (series @ X0).truncated()
    inv = FormMatrix(inv.entries, -U.pscale)
    check = (inv @ U).truncated()
    if not congruent_matrices(check, FormMatrix.identity(ctx, U.rows)):
        raise NotInvertibleError("inverse verification failed")
    return BaseChange(U, inv)


# -- connection operations ------------------------------------------------


def _require_degree(N: FormMatrix, deg: int, what: str) -> None:
    if N.degrees() not in (set(), {deg}):
        raise PreconditionError(f"{what} requires degree-{deg} entries")


def curvature(N: FormMatrix) -> FormMatrix:
    """N^2 + d(N); zero iff the connection is integrable."""
    if not N.is_square():
        raise ShapeMismatch("curvature of a non-square matrix")
    _require_degree(N, 1, "curvature")
    return ((N @ N) + N.d()).truncated()


def evaluate(N: FormMatrix, u: FormMatrix) -> FormMatrix:
    """Value column N u + d(u) of the connection on a coordinate column."""
    if u.cols != 1 or N.cols != u.rows:
        raise ShapeMismatch("evaluate expects a column of matching height")
    return ((N @ u) + u.d()).truncated()


def base_change(N: FormMatrix, U: BaseChange | FormMatrix) -> FormMatrix:
    """Representative matrix after the basis change U:
    U^-1 N U + U^-1 d(U)."""
    bc = U if isinstance(U, BaseChange) else invert(U)
    return ((bc.inverse @ N @ bc.matrix) + (bc.inverse @ bc.matrix.d())).truncated()


def frobenius_pullback(N: FormMatrix) -> FormMatrix:
    """Representative matrix of the phi-pullback: p * F entrywise in
    degree 1; raises v_p by at least one and preserves integrability."""
    _require_degree(N, 1, "frobenius_pullback")
    return N.frobenius().scale_forms(N.ctx.p).truncated()


def horizontal_check(E: FormMatrix, Fm: FormMatrix, G: FormMatrix) -> bool:
    """True iff d(G) = G E - Fm G mod Fil^m (G maps the E-module to the
    Fm-module).  The relation is homogeneous in G's p-scale."""
    if G.cols != E.rows or Fm.cols != G.rows:
        raise ShapeMismatch("horizontal_check shape mismatch")
    if E.pscale or Fm.pscale:
        raise PreconditionError("connection matrices must carry p-scale 0 here")
    G0 = FormMatrix(G.entries)
    lhs = G0.d().truncated()
    rhs = ((G0 @ E) - (Fm @ G0)).truncated()
    return congruent_matrices(lhs, rhs)


def matrix_d_inverse(D: FormMatrix) -> FormMatrix:
    return D.map(lambda f: d_inverse(f) if f else Form.zero(D.ctx))


def normalize_step(N: FormMatrix) -> tuple[BaseChange, FormMatrix]:
    """One successive-approximation step: U = 1 - d^-1(N|d(frp)) raises
    the valuation of the fractional part by at least one."""
    if not curvature(N).is_zero():
        raise PreconditionError("normalize_step requires an integrable matrix")
    frac = N.frac_part()
    s = frac.vp()
    if s is INF:
        ident = FormMatrix.identity(N.ctx, N.rows)
        return BaseChange(ident, ident), N
    if s < 1:
        raise PreconditionError(
            "fractional part has v_p < 1; apply frobenius_pullback first"
        )
    U = (FormMatrix.identity(N.ctx, N.rows) - matrix_d_inverse(N.dfrp_part())).truncated()
    bc = invert(U)
    return bc, base_change(N, bc)


def normalize(N: FormMatrix, max_iter: int | None = None) -> tuple[FormMatrix, BaseChange, int]:
    """Iterate normalize_step until the fractional part vanishes mod Fil^m.

    Returns (N_out, accumulated base change, iterations); N_out has zero
    fractional part, i.e. entries in the integer-weight image of the
    comparison map.  Terminates in at most m iterations when the
    precondition v_p(N|frac) >= 1 holds.
    """
    ctx = N.ctx
    if max_iter is None:
        max_iter = ctx.m + 1
    if N.pscale < -ctx.m:
        raise PreconditionError("matrix p-scale below -m; precision exhausted")
    cur = N.truncated()
    ident = FormMatrix.identity(ctx, N.rows)
    u_cum = ident
    uinv_cum = ident
    iters = 0
    while True:
        if cur.frac_part().is_zero():
            return cur, BaseChange(u_cum, uinv_cum), iters
        if iters >= max_iter:
            raise DrwError(
                f"normalize did not converge in {max_iter} iterations; precision bug"
            )
        bc, cur = normalize_step(cur)
        u_cum = (u_cum @ bc.matrix).truncated()
        uinv_cum = (bc.inverse @ uinv_cum).truncated()
        iters += 1


def overconvergence_condition(N: FormMatrix, eps: Epsilon | Fraction) -> bool:
    """Entrywise-min zeta_check floors: int >= -1/4, frp >= 1/2,
    dfrp >= 3/4."""
    floors = (Fraction(-1, 4), Fraction(1, 2), Fraction(3, 4))
    mins = [INF, INF, INF]
    for row in N.entries:
        for f in row:
            dec = decompose(f)
            for idx, part in enumerate((dec.int_part, dec.frp, dec.dfrp)):
                v = zeta_check(part, eps)
                if v < mins[idx]:
                    mins[idx] = v
    return all(v >= floor for v, floor in zip(mins, floors))


def lift_connection(A: FormMatrix, P: FormMatrix) -> FormMatrix:
    """Lift connection data A through the projector P: N = A - d(P) P.

    Preconditions from the projector calculus: P^2 = P, A = P A, and the
    Leibniz compatibility A P + P d(P) = A.  For integrable input data the
    curvature of the lift is d(P) P d(P).
    """
    if not (P.is_square() and A.rows == P.rows and A.cols == P.cols):
        raise ShapeMismatch("lift_connection shape mismatch")
    _require_degree(P, 0, "lift_connection projector")
    _require_degree(A, 1, "lift_connection data")
    if not congruent_matrices(P @ P, P):
        raise PreconditionError("P is not idempotent mod Fil^m")
    if not congruent_matrices(P @ A, A):
        raise PreconditionError("A = P A fails mod Fil^m")
    if not congruent_matrices((A @ P) + (P @ P.d()), A):
        raise PreconditionError("A P + P d(P) = A fails mod Fil^m")
    return (A - (P.d() @ P)).truncated()


def idempotent_frobenius_check(P: FormMatrix) -> bool:
    """For a Frobenius-fixed idempotent P, d(P) must vanish mod Fil^m;
    verified constructively through d(P) = p^r F^r(d(P))."""
    if not congruent_matrices(P @ P, P):
        raise PreconditionError("P is not idempotent mod Fil^m")
    if not congruent_matrices(P.frobenius().truncated(), P.truncated()):
        raise PreconditionError("P is not Frobenius-fixed: check not applicable")
    dP = P.d().truncated()
    ctx = P.ctx
    cur = dP
    for _ in range(ctx.m):
        cur = cur.frobenius().scale_forms(ctx.p).truncated()
    if not congruent_matrices(dP, cur):
        return False
    return dP.is_zero()


def schanuel_complement(P: FormMatrix, A: FormMatrix) -> tuple[FormMatrix, FormMatrix]:
    """Block projector Q = diag(P, 0) on the doubled free module and the
    lifted connection restricted to the complement im(1 - Q)."""
    ctx = P.ctx
    r = P.rows
    Q = FormMatrix.block_diag(P, FormMatrix.zeros(ctx, r))
    A_emb = FormMatrix.block_diag(A, FormMatrix.zeros(ctx, r))
    N_lift = lift_connection(A_emb, Q)
    comp = FormMatrix.identity(ctx, 2 * r) - Q
    N_comp = (comp @ N_lift @ comp).truncated()
    return Q, N_comp


def rng_expansion_check(xs, ys, *, mul, add, neg, zero):
    """Literal evaluation of the rng identity
    prod(x_i + y_i) = prod(x_i) - sum_{f} prod(f_i), enumerating all
    2^{t+1}-1 choice functions f with f_i in {x_i + y_i, -y_i} and at
    least one -y_i.  Returns LHS - RHS (zero when the identity holds)."""
    if len(xs) != len(ys):
        raise ShapeMismatch("rng_expansion_check length mismatch")
    t1 = len(xs)
    if t1 == 0:
        raise PreconditionError("need at least one factor")

    def product(factors):
        acc = factors[0]
        for f in factors[1:]:
            acc = mul(acc, f)
        return acc

    sums = [add(x, y) for x, y in zip(xs, ys)]
    lhs = product(sums)
    rhs = product(xs)
    correction = zero
    for mask in range(1, 2**t1):
        factors = [neg(ys[i]) if (mask >> i) & 1 else sums[i] for i in range(t1)]
        correction = add(correction, product(factors))
    return add(lhs, neg(add(rhs, neg(correction))))
