"""The textbook limit: an attractive point interaction at alpha = 2.

At alpha = 2 the operator is the ordinary 1-D Schroedinger operator with an
attractive delta well of strength v0 < 0, whose single bound state is known
in closed form: E = -v0^2/4 and psi(x) = sqrt(kappa) e^{-kappa |x|} with
kappa = |v0|/2.  This demo runs the full generic pipeline (coupling matrix,
determinant root, null vector, momentum normalization, Fourier inversion)
and compares every stage against the textbook answer.

Run:  python demos/04_classical_delta_well.py
"""

import math

import numpy as np

from fracpoint import (SpectralProblem, find_eigenvalues, phi, residual,
                       sample_grid)


def main():
    for v0 in (-0.5, -1.0, -2.0):
        kappa = abs(v0) / 2
        prob = SpectralProblem(alpha=2.0, n=0, v0=v0)
        sol = find_eigenvalues(prob)[0]
        print(f"v0 = {v0:+.1f}")
        print(f"  eigenvalue: solver {sol.energy:+.12f}   "
              f"textbook {-v0 ** 2 / 4:+.12f}")
        print(f"  coefficient: K0 = {sol.coefficients[0].real:.12f}   "
              f"textbook sqrt(2 kappa |E|)... = {math.sqrt(2 * kappa ** 3):.12f}")
        print(f"  residual of the eigenvalue equation: {sol.residual_norm:.2e}")

        grid = sample_grid(sol, -12.0, 12.0, 1201)
        exact = np.sqrt(kappa) * np.exp(-kappa * np.abs(grid.xs))
        dev = np.max(np.abs(grid.values - exact))
        print(f"  profile: max pointwise dev vs sqrt(kappa) e^(-kappa|x|) "
              f"= {dev:.2e}")
        print(f"  norm: trapezoid integral of psi^2 = {grid.trapezoid_norm():.6f}")

        # momentum profile at a few points: phi(p) = K0/(p^2 + kappa^2)
        p = 0.7
        expect = sol.coefficients[0].real / (p ** 2 + kappa ** 2)
        print(f"  phi({p}) = {phi(sol, p).real:.12f}   "
              f"expected {expect:.12f}")

        # the residual oracle detects a wrong eigenvalue immediately
        from fracpoint import EigenSolution
        bad = EigenSolution(energy=sol.energy * 1.05,
                            coefficients=sol.coefficients,
                            residual_norm=0.0, problem=prob)
        print(f"  residual with a 5% wrong energy: "
              f"{residual(prob, bad):.2e} (should be large)\n")


if __name__ == "__main__":
    main()
