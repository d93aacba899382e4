#!/usr/bin/env python3
"""Run the numerical verification suites and exit nonzero on any failure.

Same as `qwave verify` but importable from a checkout without installing.

Usage: python scripts/run_verification.py [--suite NAME] [--tol KEY=VALUE ...]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qwave import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", default="all")
    ap.add_argument("--tol", action="append", default=[])
    args = ap.parse_args()
    argv = ["verify", "--suite", args.suite]
    for override in args.tol:
        argv += ["--tol", override]
    return cli.main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
