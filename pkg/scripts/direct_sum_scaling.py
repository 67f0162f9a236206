"""Runtime of the dual-route decision on direct-sum corings D^(n) -> D as n grows."""
import argparse
import time

from cofrob.exact_linalg import FieldSpec
from cofrob.frobenius import check_frobenius_extension, triangle_check
from cofrob.zoo import build, direct_sum_coring, standard_comodules

BASES = ["grouplike:2", "dual_numbers", "matrix_coalgebra:2", "dual_of_square_zero_local:2"]


def base(spec, field):
    name, _, arg = spec.partition(":")
    return build(name, {"n": int(arg)} if arg else {}, field).coalgebra


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--field", default="Q")
    ap.add_argument("--triangles", action="store_true", help="also replay the triangle identities")
    a = ap.parse_args()
    field = FieldSpec.parse(a.field)
    print(f"{'base':30s} {'n':>2s} {'dim C':>5s} {'verdict':>8s} {'seconds':>8s}")
    for spec in BASES:
        D = base(spec, field)
        for n in range(1, a.max_n + 1):
            ring = direct_sum_coring(D, n)
            t0 = time.perf_counter()
            v = check_frobenius_extension(ring.extension)
            if a.triangles and v.is_yes:
                sample = standard_comodules(ring.coalgebra, 4) + standard_comodules(D, 4)
                assert triangle_check(ring.extension, v.witness, sample).ok
            dt = time.perf_counter() - t0
            print(f"{spec:30s} {n:2d} {ring.coalgebra.dim:5d} {v.status:>8s} {dt:8.3f}")


if __name__ == "__main__":
    main()
