"""Closed forms of the two moment-integral families behind the solver.

For ``m >= 0``, ``alpha > m + 1`` and ``|E| > 0``::

    J(m, alpha, |E|) = ∫_R q^m / (|q|^alpha + |E|) dq
                     = [1 + (-1)^m] |E|^((m+1-alpha)/alpha)
                       * pi / (alpha sin(pi (m+1)/alpha))

    M(m, alpha, |E|) = ∫_R q^m / (|q|^alpha + |E|)^2 dq
                     = [1 + (-1)^m] |E|^((m+1-2 alpha)/alpha)
                       * (alpha - m - 1)/alpha
                       * pi / (alpha sin(pi (m+1)/alpha))

Both vanish identically for odd ``m`` and are strictly positive for even
``m``.  Energies enter only through their magnitude: negative-energy
denominators ``|q|^alpha - E`` equal ``|q|^alpha + |E|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["MomentQuery", "j_closed", "m_closed", "power_kernel"]


@dataclass(frozen=True)
class MomentQuery:
    """A (moment power, fractional order, energy magnitude) triple.

    Construction enforces the convergence domain ``alpha > m + 1`` and a
    strictly positive energy magnitude.
    """

    m: int
    alpha: float
    energy_abs: float

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise DomainError("moment power m must be a nonnegative integer")
        if not self.alpha > self.m + 1:
            raise DomainError(
                f"alpha = {self.alpha} must exceed m + 1 = {self.m + 1}; "
                "the moment integral diverges otherwise"
            )
        if not self.energy_abs > 0.0:
            raise DomainError("energy_abs must be strictly positive")


def _parity_factor(m: int) -> float:
    return 1.0 + (-1.0) ** m


def _j_value(m: int, alpha: float, energy_abs: float) -> float:
    # sine argument lies in (0, pi) for alpha > m + 1, so the denominator
    # is strictly positive
    if m % 2:
        return 0.0
    hat = math.pi / (alpha * math.sin(math.pi * (m + 1) / alpha))
    return _parity_factor(m) * energy_abs ** ((m + 1 - alpha) / alpha) * hat


def _m_value(m: int, alpha: float, energy_abs: float) -> float:
    if m % 2:
        return 0.0
    hat = (alpha - m - 1) / alpha * math.pi / (
        alpha * math.sin(math.pi * (m + 1) / alpha))
    return _parity_factor(m) * energy_abs ** ((m + 1 - 2 * alpha) / alpha) * hat


def j_closed(q: MomentQuery) -> float:
    """First-family moment integral ``∫ q^m / (|q|^alpha + |E|) dq``.

    Exactly 0 for odd ``m``; strictly positive for even ``m``.
    """
    return _j_value(q.m, q.alpha, q.energy_abs)


def m_closed(q: MomentQuery) -> float:
    """Second-family moment integral ``∫ q^m / (|q|^alpha + |E|)^2 dq``.

    Related to the first family by ``M = (alpha - m - 1)/alpha * J / |E|``;
    written with ``alpha - m - 1`` so positivity on the valid domain is
    manifest.
    """
    return _m_value(q.m, q.alpha, q.energy_abs)


def power_kernel(m: int, alpha: float, energy_abs: float, power: int = 1):
    """Vectorized integrand ``w^m / (w^alpha + |E|)^power``, written so it
    stays finite for w far beyond the overflow point of ``w**alpha``.

    The naive expression turns into ``inf/inf`` or silently underflows to 0
    once ``w**alpha`` overflows (w around 1e99 already for alpha = 3.1),
    which would starve the tail-substituted quadrature of real mass.  For
    w > 1 the equivalent form ``w^(m - power*alpha) / (1 + |E| w^-alpha)^power``
    is used instead; it only underflows where the true integrand is below
    the smallest normal double.
    """

    def f(w):
        w = np.asarray(w, float)
        out = np.empty_like(w)
        big = w > 1.0
        with np.errstate(under="ignore"):
            wb = w[big]
            out[big] = wb ** (m - power * alpha) / (
                1.0 + energy_abs * wb ** (-alpha)) ** power
            ws = w[~big]
            out[~big] = ws ** m / (ws ** alpha + energy_abs) ** power
        return out

    return f
