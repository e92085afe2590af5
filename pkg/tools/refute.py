"""
Script to solve, compare and generate checking tree counterexamples
Usage:
  python tools/refute.py solve FILE [--engine oracle|reconstructed] [--force LIT]
  python tools/refute.py compare FILES... [--step3 fixpoint|single|off] [--report PATH]
  python tools/refute.py generate --n N --seed S [--count K] --out DIR
Exit codes: 10 satisfiable, 20 unsatisfiable, 30 divergence found, 0 clean, 1 error
Author: ctreepy developers
"""
import sys

from ctreepy.harness import main

if __name__ == '__main__':
    sys.exit(main())
