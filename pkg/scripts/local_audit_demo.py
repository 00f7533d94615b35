#!/usr/bin/env python3
"""Run the joint-versus-local update audit and print the full report.

Usage: local_audit_demo.py [samples] [seed]
"""

import sys

from cptforge.dirichlet import HyperParams
from cptforge.localsplit import local_update_audit

CASES = [
    (HyperParams((1, 1, 1, 1, 1, 1)), (0, 2)),
    (HyperParams((2, 3, 1, 4, 2, 2)), (1, 0)),
    (HyperParams((10, 35, 25, 5, 10, 15)), (0, 2)),
]


def main() -> int:
    samples = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    for alpha, cell in CASES:
        print(local_update_audit(alpha, cell, samples=samples, seed=seed).format_report())
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
