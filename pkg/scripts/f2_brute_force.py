"""Compare both decision routes against exhaustive enumeration of (alpha, beta) over F2."""
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from cofrob.frobenius import ExtensionData, check_frobenius_extension

from helpers import F2, brute_force_frobenius, suite


def main():
    for name, lam in suite(F2):
        X = ExtensionData(lam)
        A, B = X.alpha_space, X.beta_space
        t0 = time.perf_counter()
        truth = brute_force_frobenius(X, A.basis, B.basis, F2)
        dt = time.perf_counter() - t0
        d = check_frobenius_extension(X).is_yes
        p = check_frobenius_extension(X, route="primal").is_yes
        flag = "" if d == p == truth else "  MISMATCH"
        print(f"{name:42s} bits={A.dim + B.dim:3d} brute={truth!s:5s} dual={d!s:5s} primal={p!s:5s} "
              f"({dt:.2f}s){flag}")


if __name__ == "__main__":
    main()
