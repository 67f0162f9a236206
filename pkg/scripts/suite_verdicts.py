"""Decide every extension of the test suite by both routes and print a timing table.

    python scripts/suite_verdicts.py --field F5
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from cofrob.exact_linalg import FieldSpec
from cofrob.frobenius import ExtensionData, check_frobenius_extension, verify_certificate

from helpers import suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default="Q")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    field = FieldSpec.parse(a.field)
    print(f"{'extension':42s} {'dim C':>5s} {'dim D':>5s} {'dual':>6s} {'primal':>7s} {'t dual':>8s} {'t primal':>9s}")
    disagree = 0
    for name, lam in suite(field):
        X = ExtensionData(lam)
        t0 = time.perf_counter()
        d = check_frobenius_extension(X, seed=a.seed)
        t1 = time.perf_counter()
        p = check_frobenius_extension(X, seed=a.seed, route="primal")
        t2 = time.perf_counter()
        for v in (d, p):
            if v.is_yes:
                assert verify_certificate(X, v.witness)
        disagree += d.status != p.status
        print(f"{name:42s} {lam.source.dim:5d} {lam.target.dim:5d} {d.status:>6s} {p.status:>7s} "
              f"{t1 - t0:8.3f} {t2 - t1:9.3f}")
    print(f"disagreements: {disagree}")


if __name__ == "__main__":
    main()
