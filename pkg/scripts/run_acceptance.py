"""Run the exit criteria and print one PASS/FAIL line per criterion.

    python scripts/run_acceptance.py            # all eight
    python scripts/run_acceptance.py -k "c1 or c8"
"""

import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", "-s", *sys.argv[1:]]))
