"""Cross-validation of the two evaluation routes for the resolvent kernel.

The kernel F(x) = integral of e^{ipx} / (|p|^alpha + |E|) underlies every
eigenfunction in the package.  It can be computed two structurally
different ways: direct oscillatory quadrature (splitting at the cosine
zeros and accelerating the alternating series), or a Mellin-Barnes contour
integral of a gamma-product kernel (a Fox H-function).  Agreement between
the two is a strong end-to-end check because they share no code beyond the
gamma function.

At alpha = 2 there is also an exact answer, (pi/kappa) e^{-kappa |x|} with
kappa = sqrt(|E|), which both routes must reproduce.

Run:  python demos/03_kernel_cross_validation.py
"""

import math

from fracpoint import falpha, falpha1

ALPHAS = (1.5, 2.0, 2.5, 3.5, 4.0, 5.5)
ENERGIES = (0.25, 1.0, 4.0)
XS = (0.1, 0.5, 1.0, 2.0, 5.0)


def main():
    print("kernel value cross-check (quadrature vs contour):")
    print(f"{'alpha':>6} {'|E|':>5} {'x':>4} {'quadrature':>18} "
          f"{'fox-h contour':>18} {'abs dev':>10}")
    worst = 0.0
    for alpha in ALPHAS:
        for e in ENERGIES:
            for x in XS:
                q = falpha(alpha, e, x, "quadrature")
                f = falpha(alpha, e, x, "foxh")
                worst = max(worst, abs(f - q))
                if x == 1.0:  # print one row per (alpha, E)
                    print(f"{alpha:>6g} {e:>5g} {x:>4g} {q:>18.12f} "
                          f"{f:>18.12f} {abs(f - q):>10.2e}")
    print(f"worst deviation over {len(ALPHAS) * len(ENERGIES) * len(XS)} "
          f"points: {worst:.2e}")

    print("\nexact exponential pair at alpha = 2:")
    for kappa in (0.5, 1.0, 2.0):
        x = 1.0
        exact = (math.pi / kappa) * math.exp(-kappa * x)
        val = falpha(2.0, kappa ** 2, x, "foxh")
        print(f"  kappa={kappa}: contour {val:.12f}  exact {exact:.12f}  "
              f"rel dev {abs(val - exact) / exact:.2e}")

    print("\nderivative kernel, three independent routes at alpha=4, x=0.5:")
    for method in ("quadrature", "foxh", "finite_difference"):
        print(f"  {method:<18} {falpha1(4.0, 1.0, 0.5, method):.12f}")


if __name__ == "__main__":
    main()
