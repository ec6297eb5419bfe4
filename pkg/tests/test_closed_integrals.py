"""Closed moment integrals against the quadrature oracle and exact values."""

import math

import numpy as np
import pytest

from fracpoint.closed_integrals import (MomentQuery, j_closed, m_closed,
                                        power_kernel)
from fracpoint.errors import DomainError
from fracpoint.quadrature import integrate_halfline

GRID_M = (0, 1, 2)
GRID_ALPHA = (1.5, 2.0, 2.5, 3.5, 4.0, 5.5)
GRID_E = (0.1, 1.0, 10.0)


def kernel(m, alpha, e):
    return power_kernel(m, alpha, e)


def kernel_sq(m, alpha, e):
    return power_kernel(m, alpha, e, power=2)


def test_j_examples():
    assert j_closed(MomentQuery(0, 2.0, 1.0)) == pytest.approx(math.pi, rel=1e-14)
    assert j_closed(MomentQuery(1, 4.0, 7.3)) == 0.0
    assert j_closed(MomentQuery(2, 4.0, 1.0)) == pytest.approx(
        math.pi * math.sqrt(2) / 2, rel=1e-14)
    assert j_closed(MomentQuery(0, 4.0, 16.0)) == pytest.approx(
        math.pi / (8 * math.sqrt(2)), rel=1e-14)


def test_m_examples():
    assert m_closed(MomentQuery(0, 2.0, 1.0)) == pytest.approx(math.pi / 2, rel=1e-14)
    assert m_closed(MomentQuery(3, 9.0, 2.0)) == 0.0
    assert m_closed(MomentQuery(0, 4.0, 1.0)) == pytest.approx(
        3 * math.pi / (4 * math.sqrt(2)), rel=1e-14)


def test_domain_validation():
    with pytest.raises(DomainError):
        MomentQuery(2, 3.0, 1.0)  # alpha == m+1: divergent
    with pytest.raises(DomainError):
        MomentQuery(0, 2.0, 0.0)  # energy magnitude must be positive
    with pytest.raises(DomainError):
        MomentQuery(-1, 5.0, 1.0)


@pytest.mark.parametrize("m", GRID_M)
@pytest.mark.parametrize("alpha", GRID_ALPHA)
@pytest.mark.parametrize("e", GRID_E)
def test_matches_quadrature_oracle(m, alpha, e):
    if alpha <= m + 1:
        pytest.skip("outside domain")
    q = MomentQuery(m, alpha, e)
    jq = 2.0 * integrate_halfline(kernel(m, alpha, e), alpha - m, 1e-11).value \
        if m % 2 == 0 else 0.0
    mq = 2.0 * integrate_halfline(kernel_sq(m, alpha, e), 2 * alpha - m,
                                  1e-11).value if m % 2 == 0 else 0.0
    if m % 2 == 0:
        assert j_closed(q) == pytest.approx(jq, rel=1e-8)
        assert m_closed(q) == pytest.approx(mq, rel=1e-8)
    else:
        assert j_closed(q) == 0.0 == m_closed(q)


@pytest.mark.parametrize("m,alpha", [(0, 1.7), (0, 4.0), (2, 3.6), (2, 5.5)])
def test_energy_scaling_law(m, alpha):
    unit = j_closed(MomentQuery(m, alpha, 1.0))
    for e in (0.031, 0.7, 42.0):
        expect = e ** ((m + 1 - alpha) / alpha) * unit
        assert j_closed(MomentQuery(m, alpha, e)) == pytest.approx(
            expect, rel=5e-15)


def test_sine_denominator_never_singular():
    rng = np.random.default_rng(3)
    for _ in range(200):
        m = int(rng.integers(0, 4))
        alpha = m + 1 + 0.01 + 8 * rng.random()
        e = 10.0 ** rng.uniform(-4, 4)
        q = MomentQuery(m, alpha, e)
        assert math.isfinite(j_closed(q))
        assert math.isfinite(m_closed(q))
        if m % 2 == 0:
            assert j_closed(q) > 0
            assert m_closed(q) > 0


def test_power_kernel_is_stable_at_extreme_arguments():
    f = power_kernel(2, 3.1, 1.3)
    w = np.array([1e-3, 1.0, 1e50, 1e120, 1e250])
    vals = f(w)
    assert np.all(np.isfinite(vals))
    # naive evaluation already breaks at 1e120 (w**3.1 overflows) while the
    # true value w^-1.1 is perfectly representable
    assert vals[3] == pytest.approx(1e120 ** -1.1, rel=1e-12)


def test_slow_decay_tail_keeps_full_mass():
    # decay exponent 1.1: the tail substitution probes w ~ 1e100 and beyond,
    # where a naively written kernel silently underflows and loses ~1e-9 of
    # mass; the stable kernel must stay at closed-form accuracy
    alpha, m, e = 3.1, 2, 1.3111974420192738
    res = integrate_halfline(power_kernel(m, alpha, e), alpha - m, 1e-12)
    exact = j_closed(MomentQuery(m, alpha, e)) / 2.0
    assert res.value == pytest.approx(exact, rel=1e-11)


@pytest.mark.parametrize("m,alpha,e", [(0, 2.0, 1.0), (0, 3.5, 0.4),
                                       (2, 4.5, 2.2), (2, 5.5, 0.9)])
def test_m_is_minus_denergy_derivative_of_j(m, alpha, e):
    # dJ/d|E| = -M, checked by central differences
    h = 1e-5 * e
    dj = (j_closed(MomentQuery(m, alpha, e + h)) -
          j_closed(MomentQuery(m, alpha, e - h))) / (2 * h)
    assert -dj == pytest.approx(m_closed(MomentQuery(m, alpha, e)), rel=1e-5)
