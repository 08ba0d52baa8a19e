"""Self-test driver: runs every invariant suite and assembles a Report."""

from __future__ import annotations

import hashlib
import json
import os
import time

from .properties import ALL_SUITES

DEFAULT_CASES = 25


def run_selftest(seed: int = 0, cases: int | None = None, suites=None, timing: bool = False) -> dict:
    if cases is None:
        cases = int(os.environ.get("DRW_SELFTEST_CASES", DEFAULT_CASES))
    chosen = suites or list(ALL_SUITES)
    t0 = time.monotonic()
    results = []
    for idx, name in enumerate(chosen):
        start = time.monotonic()
        res = ALL_SUITES[name](seed + idx, cases)
        entry = {
            "name": name,
            "suite": res.suite,
            "cases": res.cases,
            "pass": res.passed,
            "failures": res.failures,
        }
        if timing:
            entry["wall_ms"] = int((time.monotonic() - start) * 1000)
        results.append(entry)
    digest = hashlib.sha256(
        json.dumps({"seed": seed, "cases": cases, "suites": chosen}, sort_keys=True).encode()
    ).hexdigest()[:16]
    report = {
        "command": "selftest",
        "inputs_digest": digest,
        "seed": seed,
        "cases": cases,
        "properties": results,
        "pass": all(r["pass"] for r in results),
    }
    if timing:
        report["wall_ms"] = int((time.monotonic() - t0) * 1000)
    return report
