"""Coupling matrix, determinant condition, root finding, coefficients,
normalization, and the eigenvalue-equation residual."""

import math

import numpy as np
import pytest

from fracpoint.errors import DomainError, InvalidInput, RankError
from fracpoint.spectrum import (CouplingMatrix, EigenSolution,
                                SpectralProblem, closed_n0, closed_n1,
                                coefficients, coupling_matrix, det_condition,
                                find_eigenvalues, normalize, residual)

# frozen with 30-digit arithmetic from the closed forms
N0_ALPHA15_V1 = -0.45617799047081542
N1_A35_V2 = -0.9564822971008089
N1_A55_V1 = -0.11218151584921298


def test_problem_validation():
    with pytest.raises(DomainError):
        SpectralProblem(alpha=3.0, n=1, v0=1.0)  # needs alpha > 3
    with pytest.raises(DomainError):
        SpectralProblem(alpha=2.0, n=0, v0=0.0)
    with pytest.raises(DomainError):
        SpectralProblem(alpha=9.0, n=-1, v0=1.0)


class TestCouplingMatrix:
    def test_n0_example(self):
        A = coupling_matrix(SpectralProblem(2.0, 0, -1.0), 1.0)
        assert isinstance(A, CouplingMatrix)
        assert A.entries.shape == (1, 1)
        assert A.entries[0, 0] == pytest.approx(0.5, rel=1e-14)

    def test_n1_diagonal_vanishes(self):
        for alpha in (3.5, 4.0, 7.2):
            A = coupling_matrix(SpectralProblem(alpha, 1, 1.7), 0.9).entries
            assert A[0, 0] == 0.0
            assert A[1, 1] == 0.0

    def test_n1_offdiagonal_example(self):
        A = coupling_matrix(SpectralProblem(4.0, 1, 1.0), 1.0).entries
        assert A[0, 1] == pytest.approx(1j / (4 * math.sin(3 * math.pi / 4)),
                                        rel=1e-14)
        assert A[1, 0] == pytest.approx(-1j / (4 * math.sin(math.pi / 4)),
                                        rel=1e-14)
        prod = A[0, 1] * A[1, 0]
        assert prod.imag == 0.0
        assert prod.real == pytest.approx(0.125, rel=1e-14)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_parity_zero_pattern(self, n):
        rng = np.random.default_rng(n)
        for _ in range(8):
            alpha = 2 * n + 1 + 0.2 + 5 * rng.random()
            e = 10.0 ** rng.uniform(-2, 2)
            v0 = float(rng.uniform(0.1, 2.0)) * (-1) ** n
            A = coupling_matrix(SpectralProblem(alpha, n, v0), e).entries
            for h in range(n + 1):
                for k in range(n + 1):
                    if (n + k - h) % 2:
                        assert A[h, k] == 0.0
                    else:
                        # every nonzero entry is i^n times a real number
                        rotated = A[h, k] / (1j ** n)
                        assert rotated.imag == pytest.approx(0.0, abs=1e-16)


class TestDetCondition:
    def test_n0_values(self):
        prob = SpectralProblem(2.0, 0, -1.0)
        assert det_condition(prob, 1.0) == pytest.approx(-0.5, rel=1e-14)
        assert abs(det_condition(prob, 0.25)) < 1e-12

    def test_n1_root_value(self):
        prob = SpectralProblem(4.0, 1, 1.0)
        assert abs(det_condition(prob, 0.125)) < 1e-12

    def test_realness_for_higher_n(self):
        for n, alpha in ((1, 4.0), (2, 6.5), (3, 8.2)):
            d = det_condition(SpectralProblem(alpha, n, -0.8), 0.37)
            assert abs(d.imag) < 1e-12


class TestFindEigenvalues:
    def test_classical_delta_well(self):
        sols = find_eigenvalues(SpectralProblem(2.0, 0, -1.0))
        assert len(sols) == 1
        assert sols[0].energy == pytest.approx(-0.25, rel=1e-12)

    def test_classical_family(self):
        for v0 in (-0.5, -1.0, -2.0):
            sols = find_eigenvalues(SpectralProblem(2.0, 0, v0))
            assert sols[0].energy == pytest.approx(-v0 ** 2 / 4, rel=1e-12)

    def test_no_bound_state_for_repulsive_delta(self):
        assert find_eigenvalues(SpectralProblem(2.0, 0, 1.0)) == []

    @pytest.mark.parametrize("alpha", [1.5, 2.0, 2.5])
    @pytest.mark.parametrize("v0", [-0.5, -1.0, -2.0])
    def test_n0_matches_closed_form(self, alpha, v0):
        sols = find_eigenvalues(SpectralProblem(alpha, 0, v0))
        assert len(sols) == 1
        assert sols[0].energy == pytest.approx(closed_n0(alpha, v0), rel=1e-10)

    @pytest.mark.parametrize("alpha", [3.5, 4.0, 5.5])
    @pytest.mark.parametrize("v0", [0.5, 1.0, 2.0])
    def test_n1_matches_closed_form_and_symmetry(self, alpha, v0):
        plus = find_eigenvalues(SpectralProblem(alpha, 1, v0))
        minus = find_eigenvalues(SpectralProblem(alpha, 1, -v0))
        assert len(plus) == len(minus) == 1
        assert plus[0].energy == pytest.approx(closed_n1(alpha, v0), rel=1e-10)
        assert plus[0].energy == minus[0].energy  # exact, not approximate

    def test_frozen_root_value(self):
        sols = find_eigenvalues(SpectralProblem(3.5, 1, 2.0))
        assert sols[0].energy == pytest.approx(N1_A35_V2, rel=1e-10)

    def test_bracket_validation(self):
        with pytest.raises(InvalidInput):
            find_eigenvalues(SpectralProblem(2.0, 0, -1.0), e_min_abs=1.0,
                             e_max_abs=0.5)

    def test_solutions_ordered_by_magnitude(self):
        sols = find_eigenvalues(SpectralProblem(6.0, 2, -1.3))
        mags = [abs(s.energy) for s in sols]
        assert mags == sorted(mags)
        assert all(s.energy < 0 for s in sols)
        assert all(s.residual_norm < 1e-10 for s in sols)


class TestClosedForms:
    def test_n0_values(self):
        assert closed_n0(2.0, -1.0) == pytest.approx(-0.25, rel=1e-14)
        assert closed_n0(1.5, -1.0) == pytest.approx(N0_ALPHA15_V1, rel=1e-13)
        assert closed_n0(2.0, 1.0) is None
        assert closed_n0(3.0, 0.0) is None

    def test_n0_domain(self):
        with pytest.raises(DomainError):
            closed_n0(1.0, -1.0)

    def test_n1_values(self):
        assert closed_n1(4.0, 1.0) == pytest.approx(-0.125, rel=1e-14)
        assert closed_n1(4.0, -1.0) == closed_n1(4.0, 1.0)
        assert closed_n1(3.5, 2.0) == pytest.approx(N1_A35_V2, rel=1e-13)
        assert closed_n1(5.5, 1.0) == pytest.approx(N1_A55_V1, rel=1e-13)

    def test_n1_domain(self):
        with pytest.raises(DomainError):
            closed_n1(3.0, 1.0)
        with pytest.raises(InvalidInput):
            closed_n1(4.0, 0.0)


class TestCoefficients:
    def test_n0_trivial_direction(self):
        prob = SpectralProblem(2.0, 0, -1.0)
        k = coefficients(prob, 0.25)
        assert k.shape == (1,)
        assert k[0].real > 0
        assert k[0].imag == 0.0

    def test_n1_structure(self):
        prob = SpectralProblem(4.0, 1, 1.0)
        k = coefficients(prob, 0.125)
        A = coupling_matrix(prob, 0.125).entries
        # K_1 = a_{1,0} K_0 with purely imaginary a_{1,0}
        assert k[1] == pytest.approx(A[1, 0] * k[0], rel=1e-12)
        assert abs(k[1].real) < 1e-14
        assert k[0].real > 0

    @pytest.mark.parametrize("alpha,n,v0,e_abs", [
        (2.0, 0, -1.0, 0.25),
        (4.0, 1, 1.0, 0.125),
        (3.5, 1, 2.0, abs(N1_A35_V2)),
    ])
    def test_nullspace_quality(self, alpha, n, v0, e_abs):
        prob = SpectralProblem(alpha, n, v0)
        k = coefficients(prob, e_abs)
        A = coupling_matrix(prob, e_abs).entries
        defect = np.linalg.norm((A - np.eye(n + 1)) @ k)
        assert defect <= 1e-10 * np.linalg.norm(k)

    def test_rank_error_away_from_root(self):
        prob = SpectralProblem(2.0, 0, -1.0)
        with pytest.raises(RankError):
            coefficients(prob, 1.0)  # not a root: A - I is invertible


class TestNormalize:
    def test_classical_scale(self):
        prob = SpectralProblem(2.0, 0, -1.0)
        k = normalize(prob, 0.25, np.array([3.7 + 0.0j]))
        assert abs(k[0]) == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_scaling_invariance(self):
        prob = SpectralProblem(4.0, 1, 1.0)
        base = normalize(prob, 0.125, coefficients(prob, 0.125))
        scaled = normalize(prob, 0.125, 17.0 * coefficients(prob, 0.125))
        assert np.allclose(base, scaled, rtol=1e-12)

    def test_n1_closed_scale(self):
        prob = SpectralProblem(4.0, 1, 1.0)
        e_abs = 0.125
        k = normalize(prob, e_abs, coefficients(prob, e_abs))
        from fracpoint.closed_integrals import MomentQuery, m_closed
        a10 = abs(coupling_matrix(prob, e_abs).entries[1, 0])
        c = math.sqrt(2 * math.pi) / math.sqrt(
            m_closed(MomentQuery(0, 4.0, e_abs)) +
            a10 ** 2 * m_closed(MomentQuery(2, 4.0, e_abs)))
        assert abs(k[0]) == pytest.approx(c, rel=1e-12)

    def test_rejects_zero_vector(self):
        prob = SpectralProblem(2.0, 0, -1.0)
        with pytest.raises(InvalidInput):
            normalize(prob, 0.25, np.array([0.0j]))

    def test_momentum_norm_is_two_pi(self):
        from fracpoint.closed_integrals import _m_value
        for alpha, n, v0 in ((2.5, 0, -1.0), (5.5, 1, 2.0)):
            sol = find_eigenvalues(SpectralProblem(alpha, n, v0))[0]
            e_abs = abs(sol.energy)
            K = sol.coefficients
            form = sum(np.conj(K[h]) * K[k] * _m_value(h + k, alpha, e_abs)
                       for h in range(n + 1) for k in range(n + 1))
            assert form.real == pytest.approx(2 * math.pi, rel=1e-10)
            assert abs(form.imag) < 1e-12


class TestResidual:
    def test_solved_cases_are_consistent(self):
        for alpha, n, v0 in ((2.0, 0, -1.0), (4.0, 1, 1.0)):
            sol = find_eigenvalues(SpectralProblem(alpha, n, v0))[0]
            assert residual(sol.problem, sol) < 1e-6

    def test_perturbed_energy_is_detected(self):
        for alpha, n, v0 in ((2.0, 0, -1.0), (4.0, 1, 1.0)):
            sol = find_eigenvalues(SpectralProblem(alpha, n, v0))[0]
            bad = EigenSolution(energy=sol.energy * 1.01,
                                coefficients=sol.coefficients,
                                residual_norm=sol.residual_norm,
                                problem=sol.problem)
            assert residual(bad.problem, bad) > 1e-3

    def test_higher_n_machinery(self):
        # generality check: n=2 states solved by the same path
        sols = find_eigenvalues(SpectralProblem(6.0, 2, -1.3))
        assert len(sols) >= 1
        for sol in sols:
            assert residual(sol.problem, sol) < 1e-8
