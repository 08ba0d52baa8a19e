"""Command-line front end.

Reads one JSON document from stdin (unless the command needs none),
writes a canonical JSON report document to stdout.  Exit codes:
0 success, 1 property violation found, 2 parse error, 3 precondition
failure.  All randomness is seeded; outputs are byte-deterministic
unless --timing is given.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from .context import Context, DrwError, PreconditionError
from .decompose import (
    Epsilon,
    d_inverse,
    decompose,
    find_delta,
    zeta,
    zeta_check,
)
from .forms import Form, teichmuller, truncate
from .generate import (
    random_basechange,
    random_frobenius_structured,
    random_idempotent,
    random_integrable,
    random_integral_form,
)
from .lifts import ghost, tF_form
from .matrices import (
    FormMatrix,
    base_change,
    curvature,
    evaluate,
    frobenius_pullback,
    horizontal_check,
    invert,
    lift_connection,
    normalize,
    normalize_step,
    overconvergence_condition,
    rng_expansion_check,
)
from .selftest import run_selftest
from .serialize import (
    Document,
    ParseError,
    document_obj,
    form_payload,
    matrix_payload,
    parse,
    parse_charform,
    parse_form,
    parse_lift,
    parse_matrix,
    parse_poly,
    poly_payload,
    serialize,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3

COMMANDS = (
    "add", "mul", "d", "F", "V", "integral", "vp", "truncate", "teich",
    "ghost", "tf", "decompose", "dinv", "zeta", "delta", "curvature",
    "basechange", "evaluate", "lift", "pullback", "horizontal", "step",
    "normalize", "occheck", "rng", "gen", "selftest",
)


def _effective_precision(ctx: Context, forms) -> int:
    """m minus the deepest d(frp) denominator among the outputs: the
    d-preimage of a depth-u group is only determined mod p^{m-u}."""
    worst = 0
    for f in forms:
        for w in decompose(f).preimages:
            worst = max(worst, w.u())
    return max(ctx.m - worst, 0)


def _report(ctx: Context | None, command: str, inputs: str, outputs, extra=None, timing=None):
    digest = hashlib.sha256(inputs.encode()).hexdigest()[:16]
    rep = {"command": command, "inputs_digest": digest, "outputs": outputs}
    if extra:
        rep.update(extra)
    if timing is not None:
        rep["wall_ms"] = timing
    if ctx is None:
        return json.dumps({"report": rep, "v": 1}, sort_keys=True, separators=(",", ":")) + "\n"
    return serialize(Document(ctx, {"report": rep}))


def _form_doc(ctx: Context, f: Form) -> dict:
    return document_obj(Document(ctx, {"form": form_payload(f)}))


def _matrix_doc(ctx: Context, mat: FormMatrix) -> dict:
    return document_obj(Document(ctx, {"matrix": matrix_payload(mat)}))


def _need(doc: Document, key: str):
    if key not in doc.payload:
        raise ParseError(f"command needs payload field {key!r}")
    return doc.payload[key]


def _get_form(doc: Document, key: str = "form") -> Form:
    return parse_form(_need(doc, key), doc.ctx)


def _get_two_forms(doc: Document) -> tuple[Form, Form]:
    forms = _need(doc, "forms")
    if not (isinstance(forms, list) and len(forms) == 2):
        raise ParseError("binary command needs payload {\"forms\": [a, b]}")
    return parse_form(forms[0], doc.ctx), parse_form(forms[1], doc.ctx)


def _eps(args, doc_forms) -> Epsilon:
    if args.epsilon is not None:
        return Epsilon(Fraction(args.epsilon))
    found = find_delta([f for f in doc_forms if f])
    if found is None:
        raise PreconditionError("no working epsilon on the default grid; pass --epsilon")
    return found


def _zeta_str(v) -> str:
    return "inf" if v == float("inf") else str(v)


def run_command(args, stdin_text: str) -> tuple[int, str]:
    cmd = args.command
    t0 = time.monotonic()

    if cmd == "selftest":
        rep = run_selftest(seed=args.seed, cases=args.cases, timing=args.timing)
        out = json.dumps({"report": rep, "v": 1}, sort_keys=True, separators=(",", ":")) + "\n"
        return (EXIT_OK if rep["pass"] else EXIT_VIOLATION), out

    if cmd == "gen":
        return _run_gen(args)

    doc = parse(stdin_text)
    ctx = doc.ctx
    timing = None

    def done(outputs, extra=None, code=EXIT_OK, out_forms=()):
        nonlocal timing
        if args.timing:
            timing = int((time.monotonic() - t0) * 1000)
        eff = {"effective_precision": _effective_precision(ctx, out_forms)}
        if extra:
            eff.update(extra)
        return code, _report(ctx, cmd, stdin_text, outputs, eff, timing)

    if cmd in ("add", "mul"):
        a, b = _get_two_forms(doc)
        out = truncate(a + b) if cmd == "add" else truncate(a * b)
        return done([_form_doc(ctx, out)], out_forms=[out])
    if cmd in ("d", "F", "V", "truncate"):
        a = _get_form(doc)
        out = {
            "d": lambda: a.d(),
            "F": lambda: a.frobenius(),
            "V": lambda: a.verschiebung(),
            "truncate": lambda: truncate(a),
        }[cmd]()
        return done([_form_doc(ctx, out)], out_forms=[out])
    if cmd == "integral":
        a = _get_form(doc)
        return done([a.is_integral()])
    if cmd == "vp":
        a = _get_form(doc)
        v = a.vp()
        return done(["inf" if v == float("inf") else v])
    if cmd == "teich":
        f = parse_poly(_need(doc, "poly"), ctx)
        out = teichmuller(f, ctx)
        return done([_form_doc(ctx, out)], out_forms=[out])
    if cmd == "ghost":
        a = _get_form(doc)
        return done([poly_payload(ghost(a, args.r))])
    if cmd == "tf":
        lift = parse_lift(_need(doc, "lift"), ctx)
        w = parse_charform(_need(doc, "charform"), ctx)
        out = tF_form(w, lift)
        return done([_form_doc(ctx, out)], out_forms=[out])
    if cmd == "decompose":
        dec = decompose(_get_form(doc))
        outs = [dec.int_part, dec.frp, dec.dfrp]
        return done(
            [{"int": form_payload(outs[0]), "frp": form_payload(outs[1]), "dfrp": form_payload(outs[2])}],
            out_forms=outs,
        )
    if cmd == "dinv":
        out = d_inverse(_get_form(doc))
        return done([_form_doc(ctx, out)], out_forms=[out])
    if cmd == "zeta":
        a = _get_form(doc)
        eps = _eps(args, [a])
        return done(
            [{"zeta": _zeta_str(zeta(a, eps)), "zeta_check": _zeta_str(zeta_check(a, eps)),
              "epsilon": str(eps.value)}]
        )
    if cmd == "delta":
        forms = [parse_form(t, ctx) for t in _need(doc, "forms")]
        found = find_delta(forms)
        return done([None if found is None else str(found.value)])
    if cmd == "curvature":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        out = curvature(N)
        return done([_matrix_doc(ctx, out)])
    if cmd == "basechange":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        U = parse_matrix(_need(doc, "basechange"), ctx)
        out = base_change(N, invert(U))
        return done([_matrix_doc(ctx, out)])
    if cmd == "evaluate":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        u = parse_matrix(_need(doc, "column"), ctx)
        return done([_matrix_doc(ctx, evaluate(N, u))])
    if cmd == "lift":
        A = parse_matrix(_need(doc, "matrix"), ctx)
        P = parse_matrix(_need(doc, "projector"), ctx)
        return done([_matrix_doc(ctx, lift_connection(A, P))])
    if cmd == "pullback":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        return done([_matrix_doc(ctx, frobenius_pullback(N))])
    if cmd == "horizontal":
        E = parse_matrix(_need(doc, "matrix"), ctx)
        Fm = parse_matrix(_need(doc, "matrices"), ctx)
        G = parse_matrix(_need(doc, "map"), ctx)
        return done([horizontal_check(E, Fm, G)])
    if cmd == "step":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        bc, out = normalize_step(N)
        return done([_matrix_doc(ctx, out), _matrix_doc(ctx, bc.matrix)])
    if cmd == "normalize":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        out, cum, iters = normalize(N, args.max_iter)
        violation = not out.frac_part().is_zero()
        return done(
            [_matrix_doc(ctx, out), _matrix_doc(ctx, cum.matrix)],
            extra={"iterations": iters},
            code=EXIT_VIOLATION if violation else EXIT_OK,
        )
    if cmd == "occheck":
        N = parse_matrix(_need(doc, "matrix"), ctx)
        eps = _eps(args, [f for row in N.entries for f in row])
        return done([{"satisfied": overconvergence_condition(N, eps), "epsilon": str(eps.value)}])
    if cmd == "rng":
        xs = _need(doc, "xs")
        ys = _need(doc, "ys")
        mod = args.modulus
        diff = rng_expansion_check(
            [x % mod for x in xs],
            [y % mod for y in ys],
            mul=lambda a, b: (a * b) % mod,
            add=lambda a, b: (a + b) % mod,
            neg=lambda a: (-a) % mod,
            zero=0,
        )
        return done([{"difference": diff % mod}], code=EXIT_OK if diff % mod == 0 else EXIT_VIOLATION)
    raise ParseError(f"unknown command {cmd!r}")


def _run_gen(args) -> tuple[int, str]:
    ctx = Context(p=args.p, n=args.n, m=args.m, u_max=args.umax, d_max=args.dmax)
    import random

    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "form":
        f = random_integral_form(ctx, rng)
        doc = Document(ctx, {"form": form_payload(f)})
    elif kind == "integrable":
        N = random_integrable(ctx, rng, args.rank)
        doc = Document(ctx, {"matrix": matrix_payload(N)})
    elif kind == "frobenius-structured":
        N, _ = random_frobenius_structured(ctx, rng, args.rank)
        doc = Document(ctx, {"matrix": matrix_payload(N)})
    elif kind == "basechange":
        bc = random_basechange(ctx, rng, args.rank)
        doc = Document(ctx, {"basechange": matrix_payload(bc.matrix)})
    elif kind == "idempotent":
        P = random_idempotent(ctx, rng, args.rank)
        doc = Document(ctx, {"projector": matrix_payload(P)})
    else:
        raise ParseError(f"unknown gen kind {kind!r}")
    return EXIT_OK, serialize(doc)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drwitt", description=__doc__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--umax", type=int, default=-1)
    ap.add_argument("--dmax", type=int, default=None)
    ap.add_argument("--epsilon", type=str, default=None, help="exact rational, e.g. 1/4")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=None)
    ap.add_argument("--max-iter", type=int, default=None, dest="max_iter")
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--r", type=int, default=0, help="ghost component index")
    ap.add_argument("--kind", type=str, default="form", help="gen kind")
    ap.add_argument("--modulus", type=int, default=32, help="modulus for the rng command")
    ap.add_argument("--timing", action="store_true", help="include wall-clock in reports")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    needs_stdin = args.command not in ("gen", "selftest")
    text = sys.stdin.read() if needs_stdin else ""
    try:
        code, out = run_command(args, text)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (PreconditionError, DrwError) as exc:
        sys.stderr.write(f"precondition failure: {exc}\n")
        return EXIT_PRECONDITION
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
