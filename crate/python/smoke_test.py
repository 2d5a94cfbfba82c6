"""Smoke test for the lattice_lab_py extension module."""

import math
import sys

import lattice_lab_py as ll


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    params = ll.LjParams.classical()
    sq = ll.LatticePoint.square(1.0)

    z6, tail = ll.epstein_zeta(sq, 6.0, 1e-10)
    check("zeta_Z2(6) = 4 zeta(3) beta(3)", close(z6, 4 * 1.2020569031595942 * math.pi**3 / 32, 1e-9))
    check("tail certificate within tolerance", tail <= 1e-10)

    theta, _ = ll.theta_function(ll.LatticePoint.square(0.5), 2.0, 1e-12)
    check("square theta value", close(theta, 1.18034, 1e-5))

    gx, gy = ll.lj_gradient(params, ll.LatticePoint.triangular(1.1))
    check("gradient vanishes at the triangular point", abs(gx) < 1e-9 and abs(gy) < 1e-9)

    verdicts = ll.classify(params, 1.0)
    check("classify at A = 1", verdicts == {"Square": "Saddle", "Triangular": "LocalMin"})

    t = ll.thresholds(params, 1e-10, False)
    check("A0", close(t["A0"][0], 1.152438, 5e-6))
    check("A1", close(t["A1"][0], 1.1430032, 5e-7))
    check("A2", close(t["A2"][0], 1.2679987, 5e-7))

    x, y = ll.reduce_to_domain(1.3, 0.4)
    check("reduction lands in the domain", 0 <= x <= 0.5 and x * x + y * y >= 1 - 1e-12)

    y_rect, _, capped = ll.minimize_rectangular(params, 1.27)
    check("rectangular minimizer at A = 1.27", close(y_rect, 1.033, 5e-3) and not capped)

    row = ll.minimize(params, 0.9)
    check("triangular minimizer at A = 0.9", row["phase"] == "Triangular")

    try:
        ll.LjParams(1.0, 1.0, 3.0, 2.0)
        check("invalid parameters raise ValueError", False)
    except ValueError:
        check("invalid parameters raise ValueError", True)

    print(f"{len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
