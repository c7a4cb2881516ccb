#!/usr/bin/env python3
"""Classify every built-in model function and check closure of the affine
family under sums and products.

Run from the repository root:

    python scripts/classify_catalogue.py
"""
from fractions import Fraction

from qres.catalogue import NAMES, builtin
from qres.operators import classify


def main() -> None:
    header = f"{'name':<14} {'hyperholo':>9} {'hypermero':>9}  eq3 residual"
    print(header)
    print("-" * len(header))
    for name in NAMES:
        entry = builtin(name)
        c = classify(entry.f)
        print(f"{name:<14} {str(c.hyperholomorphic):>9} "
              f"{str(c.hypermeromorphic):>9}  {c.eq3_residual}")

    print()
    print("closure of two affine-family instances:")
    f = builtin("prop34", (Fraction(1), Fraction(2))).f
    g = builtin("prop34", (Fraction(-3), Fraction(5))).f
    c = classify(f, partners=[g])
    for report in c.closure:
        for key, val in sorted(report.items()):
            print(f"  {key}: {val}")


if __name__ == "__main__":
    main()
