#!/usr/bin/env python3
"""Run every acceptance criterion with one printed line each.

    python3 scripts/run_acceptance.py
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(
        subprocess.call(
            [sys.executable, "-m", "pytest", "-s", "-q", str(ROOT / "tests" / "test_acceptance.py")]
        )
    )
