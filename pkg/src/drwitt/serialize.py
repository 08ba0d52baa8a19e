"""Bit-exact structured-text serialization of forms, matrices and reports.

One JSON object per document.  The header (v, p, n, m, umax, dmax) fully
determines the Context; the payload is exactly one of "form", "forms",
"matrix", "poly", "charform", "lift", plus named auxiliary slots used by
specific commands, or "report".  Canonical output: sorted keys, compact
separators, terms ordered by (weight, dlog), one trailing newline;
parse o serialize is the identity on canonical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .context import Context, DrwError
from .forms import Form
from .lifts import CharZeroForm, FrobeniusLift
from .matrices import FormMatrix
from .padic import coeff_from_pair, coeff_to_pair
from .polys import Poly
from .weights import Weight

FORMAT_VERSION = 1

PAYLOAD_KEYS = (
    "form",
    "forms",
    "matrix",
    "matrices",
    "column",
    "projector",
    "basechange",
    "map",
    "poly",
    "charform",
    "lift",
    "xs",
    "ys",
    "report",
)


class ParseError(DrwError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        suffix = f" (at byte {position})" if position is not None else ""
        super().__init__(message + suffix)


@dataclass
class Document:
    ctx: Context
    payload: dict[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        for key in PAYLOAD_KEYS:
            if key in self.payload:
                return key
        return "empty"


# -- encoding ---------------------------------------------------------------


def form_payload(f: Form) -> list[dict]:
    p = f.ctx.p
    out = []
    for (w, I), c in f.sorted_terms():
        num, pexp = coeff_to_pair(c, p)
        out.append({"c": [num, pexp], "k": [list(pair) for pair in w.coords], "I": list(I)})
    return out


def matrix_payload(mat: FormMatrix) -> dict:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "pscale": mat.pscale,
        "entries": [[form_payload(f) for f in row] for row in mat.entries],
    }


def poly_payload(g: Poly) -> list[dict]:
    return [{"e": list(e), "c": c} for e, c in sorted(g.items())]


def charform_payload(w: CharZeroForm) -> list[dict]:
    return [
        {"e": list(e), "I": list(I), "c": c}
        for (e, I), c in sorted(w.terms.items())
    ]


def header(ctx: Context) -> dict:
    return {
        "v": FORMAT_VERSION,
        "p": ctx.p,
        "n": ctx.n,
        "m": ctx.m,
        "umax": ctx.u_max,
        "dmax": ctx.d_max,
    }


def document_obj(doc: Document) -> dict:
    obj = header(doc.ctx)
    obj.update(doc.payload)
    return obj


def serialize(doc: Document) -> str:
    return json.dumps(document_obj(doc), sort_keys=True, separators=(",", ":")) + "\n"


# -- decoding ---------------------------------------------------------------


def _parse_coeff(obj, p: int) -> Fraction:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise ParseError(f"coefficient must be a [num, pexp] pair, got {obj!r}")
    num, pexp = obj
    if not isinstance(pexp, int) or pexp < 0:
        raise ParseError(f"pexp must be a non-negative integer, got {pexp!r}")
    if not isinstance(num, (int, str)):
        raise ParseError(f"numerator must be an integer or string, got {num!r}")
    try:
        return coeff_from_pair(num, pexp, p)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {obj!r}: {exc}") from exc


def parse_form(terms_obj, ctx: Context) -> Form:
    if not isinstance(terms_obj, list):
        raise ParseError("form payload must be a list of terms")
    acc = Form.zero(ctx)
    for t in terms_obj:
        if not isinstance(t, dict) or not {"c", "k", "I"} <= set(t):
            raise ParseError(f"term must have keys c, k, I: {t!r}")
        c = _parse_coeff(t["c"], ctx.p)
        kobj = t["k"]
        if not (isinstance(kobj, list) and len(kobj) == ctx.n):
            raise ParseError(f"weight must list {ctx.n} [j, u] pairs")
        pairs = []
        for pair in kobj:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError(f"weight entry must be [j, u]: {pair!r}")
            j, u = pair
            if not (isinstance(j, int) and isinstance(u, int)) or j < 0 or u < 0:
                raise ParseError(f"weight entry out of range: {pair!r}")
            if j == 0 and u != 0:
                raise ParseError("non-canonical weight: zero numerator with u > 0")
            if u > 0 and j % ctx.p == 0:
                raise ParseError("non-canonical weight: numerator divisible by p with u > 0")
            pairs.append((j, u))
        w = Weight(tuple(pairs))
        try:
            w.validate(ctx)
            mono = Form.monomial(ctx, c, w, tuple(t["I"]))
        except DrwError as exc:
            raise ParseError(str(exc)) from exc
        acc = acc + mono
    return acc


def parse_matrix(obj, ctx: Context) -> FormMatrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("matrix payload must carry entries")
    entries = [[parse_form(cell, ctx) for cell in row] for row in obj["entries"]]
    mat = FormMatrix(entries, obj.get("pscale", 0))
    rows, cols = obj.get("rows", mat.rows), obj.get("cols", mat.cols)
    if (mat.rows, mat.cols) != (rows, cols):
        raise ParseError("matrix shape does not match declared rows/cols")
    return mat


def parse_poly(obj, ctx: Context) -> Poly:
    if not isinstance(obj, list):
        raise ParseError("poly payload must be a list of {e, c} terms")
    out: Poly = {}
    for t in obj:
        e = tuple(t["e"])
        if len(e) != ctx.n or any((not isinstance(x, int)) or x < 0 for x in e):
            raise ParseError(f"bad exponent tuple {t!r}")
        c = t["c"]
        if not isinstance(c, int):
            raise ParseError("poly coefficients must be integers")
        r = (out.get(e, 0) + c) % ctx.p**ctx.m
        if r:
            out[e] = r
        else:
            out.pop(e, None)
    return out


def parse_charform(obj, ctx: Context) -> CharZeroForm:
    if not isinstance(obj, list):
        raise ParseError("charform payload must be a list of {e, I, c} terms")
    terms = {}
    for t in obj:
        e = tuple(t["e"])
        I = tuple(t["I"])
        if len(e) != ctx.n:
            raise ParseError("charform exponents must have length n")
        terms[(e, I)] = terms.get((e, I), 0) + int(t["c"])
    return CharZeroForm(ctx, terms)


def parse_lift(obj, ctx: Context) -> FrobeniusLift:
    if not isinstance(obj, list) or len(obj) != ctx.n:
        raise ParseError("lift payload must list n polynomials")
    return FrobeniusLift(ctx, tuple(parse_poly(g, ctx) for g in obj))


def parse(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error: {exc.msg}", position=exc.pos) from exc
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    for key in ("v", "p", "n", "m"):
        if key not in obj:
            raise ParseError(f"missing header field {key!r}")
    if obj["v"] != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {obj['v']!r}")
    try:
        ctx = Context(
            p=obj["p"],
            n=obj["n"],
            m=obj["m"],
            u_max=obj.get("umax", -1),
            d_max=obj.get("dmax"),
        )
    except DrwError as exc:
        raise ParseError(f"semantic error: {exc}") from exc
    payload = {k: v for k, v in obj.items() if k in PAYLOAD_KEYS}
    return Document(ctx, payload)
