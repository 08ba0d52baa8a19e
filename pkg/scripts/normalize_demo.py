#!/usr/bin/env python3
"""End-to-end demo: build a connection with Frobenius structure from a
classical integrable matrix, hide it behind a random overconvergent base
change, then normalize and verify the round trip.

    python3 scripts/normalize_demo.py --p 3 --n 2 --m 3 --rank 2 --seed 7
"""

import argparse
import random

from drwitt import Context, FrobeniusLift, base_change, curvature, frobenius_pullback, horizontal_check, normalize
from drwitt.generate import random_basechange, tF_image_connection


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    ctx = Context(p=args.p, n=args.n, m=args.m)
    rng = random.Random(args.seed)

    lift = FrobeniusLift.canonical(ctx)
    N0 = tF_image_connection(ctx, rng, args.rank, lift)
    print("classical connection image N0 (integer-weight entries):")
    for row in N0.entries:
        print("  ", [repr(f) for f in row])

    U = random_basechange(ctx, rng, args.rank)
    N = frobenius_pullback(base_change(N0, U))
    frac_vp = N.frac_part().vp()
    print(f"\nconjugated + pulled back: v_p of fractional part = {frac_vp}")
    print(f"curvature zero: {curvature(N).is_zero()}")

    out, cum, iters = normalize(N)
    print(f"\nnormalize: {iters} iteration(s); fractional part zero: "
          f"{out.frac_part().is_zero()}")

    target = frobenius_pullback(N0)
    G = (U.matrix.frobenius() @ cum.matrix).truncated()
    print(f"output horizontally isomorphic to the classical image: "
          f"{horizontal_check(out, target, G)}")


if __name__ == "__main__":
    main()
