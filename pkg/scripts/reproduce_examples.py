"""Recompute both worked examples and print one line per check."""

import sys

from impcop.reproduce import checks


def main() -> int:
    results = checks()
    for c in results:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}  ({c.seconds:.2f}s)")
    return 0 if all(c.passed for c in results) else 1


if __name__ == "__main__":
    sys.exit(main())
