"""Bound-state spectrum of the fractional Laplacian with a delta-derivative
point interaction.

The operator acts in Fourier space as ``|p|^alpha phi(p)`` plus a rank-type
coupling generated by the n-th delta derivative of strength ``v0``.  For a
trial energy ``E = -|E| < 0`` the self-consistency of the polynomial ansatz
``phi(p) = sum_h K_h p^h / (|p|^alpha + |E|)`` closes into an
``(n+1) x (n+1)`` linear system ``K = A(E) K`` whose matrix has the closed
form::

    A[h, k] = -i^n (-1)^(n-h) (v0 / 2 pi) C(n, h) J(n+k-h, alpha, |E|)

with ``J`` the first-family moment integral.  Eigenvalues are the negative
energies at which ``det(A(E) - I) = 0``; the associated coefficient vector
is the (one-dimensional) null space of ``A - I``, normalized so that the
momentum-space profile carries ``∫ |phi|^2 dp = 2 pi``.

Entries of ``A`` are ``i^n`` times a real number and vanish exactly when
``n + k - h`` is odd, so the similarity ``D = diag(i^h)`` turns ``A`` into
a real matrix: ``det(A - I)`` is real for every n and the null vector can
be taken in the form ``K_h = i^h rho_h`` with real ``rho`` (this is what
makes the position-space eigenfunction real-valued).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .closed_integrals import _j_value, _m_value, power_kernel
from .errors import DomainError, InvalidInput, RankError, SolverError
from .quadrature import integrate_halfline

__all__ = [
    "SpectralProblem",
    "CouplingMatrix",
    "EigenSolution",
    "coupling_matrix",
    "det_condition",
    "find_eigenvalues",
    "closed_n0",
    "closed_n1",
    "coefficients",
    "normalize",
    "residual",
]

DEFAULT_P_SAMPLES = (0.0, 0.5, 1.0, 3.0)


@dataclass(frozen=True)
class SpectralProblem:
    """Problem data (alpha, n, v0): fractional order, delta-derivative order
    and coupling strength.

    Requires ``alpha > 2 n + 1`` (convergence of every coupling moment) and
    ``v0 != 0`` (the free operator has no bound state).
    """

    alpha: float
    n: int
    v0: float

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError("n must be a nonnegative integer")
        if not self.alpha > 2 * self.n + 1:
            raise DomainError(
                f"alpha = {self.alpha} must exceed 2 n + 1 = {2 * self.n + 1}"
            )
        if self.v0 == 0.0:
            raise DomainError("v0 must be nonzero")


@dataclass(frozen=True)
class CouplingMatrix:
    """The (n+1) x (n+1) coupling matrix at a trial energy magnitude."""

    entries: np.ndarray
    energy_abs: float


@dataclass(frozen=True)
class EigenSolution:
    """A negative eigenvalue with its normalized coefficient vector."""

    energy: float
    coefficients: np.ndarray
    residual_norm: float
    problem: SpectralProblem = field(repr=False, default=None)


def coupling_matrix(prob: SpectralProblem, energy_abs: float) -> CouplingMatrix:
    """Closed-form coupling matrix ``A(E)`` at ``|E| = energy_abs``.

    Entries vanish exactly when ``n + k - h`` is odd; every nonzero entry is
    ``i^n`` times a real number.
    """
    if not energy_abs > 0.0:
        raise DomainError("energy_abs must be positive")
    n, alpha = prob.n, prob.alpha
    pref = -(1j ** n) * prob.v0 / (2.0 * math.pi)
    A = np.zeros((n + 1, n + 1), dtype=complex)
    for h in range(n + 1):
        row = pref * (-1.0) ** (n - h) * math.comb(n, h)
        for k in range(n + 1):
            J = _j_value(n + k - h, alpha, energy_abs)
            if J != 0.0:
                A[h, k] = row * J
    return CouplingMatrix(entries=A, energy_abs=energy_abs)


def det_condition(prob: SpectralProblem, energy_abs: float) -> complex:
    """``det(A(E) - I)``; its negative-energy zeros are the eigenvalues."""
    A = coupling_matrix(prob, energy_abs).entries
    return complex(np.linalg.det(A - np.eye(prob.n + 1)))


def _real_rotated(A: np.ndarray) -> np.ndarray:
    """Similarity transform diag(i^h)^-1 A diag(i^h), which is real."""
    n1 = A.shape[0]
    D = 1j ** np.arange(n1)
    R = (A / D[:, None]) * D[None, :]
    if np.max(np.abs(R.imag)) > 1e-12 * max(np.max(np.abs(R)), 1.0):
        raise SolverError("coupling matrix failed the reality rotation")
    return R.real


def _nullvector_full_pivot(B: np.ndarray) -> np.ndarray:
    """One-dimensional null space of a small real matrix via Gaussian
    elimination with full pivoting.  Raises RankError otherwise."""
    B = np.array(B, dtype=float)
    n = B.shape[0]
    col_perm = np.arange(n)
    scale = max(np.max(np.abs(B)), 1.0)
    rank = 0
    for step in range(n):
        sub = np.abs(B[step:, step:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        piv = sub[i, j]
        if piv <= 1e-10 * scale:
            break
        i += step
        j += step
        B[[step, i]] = B[[i, step]]
        B[:, [step, j]] = B[:, [j, step]]
        col_perm[[step, j]] = col_perm[[j, step]]
        B[step + 1:] -= np.outer(B[step + 1:, step] / B[step, step], B[step])
        rank += 1
    nullity = n - rank
    if nullity != 1:
        raise RankError(
            f"null space has dimension {nullity}, expected 1 "
            "(degenerate or spurious root)"
        )
    x = np.zeros(n)
    x[n - 1] = 1.0
    for i in range(rank - 1, -1, -1):
        x[i] = -np.dot(B[i, i + 1:], x[i + 1:]) / B[i, i]
    out = np.zeros(n)
    out[col_perm] = x
    return out


def coefficients(prob: SpectralProblem, energy_abs_root: float) -> np.ndarray:
    """Unnormalized coefficient vector at a determinant root.

    Solved on the real similarity transform of ``A - I`` and rotated back as
    ``K_h = i^h rho_h``, which keeps the momentum profile Hermitian (and the
    position-space eigenfunction real).  The leading nonzero ``rho`` entry
    is made positive, so ``K_0`` is real and positive whenever it is
    nonzero.
    """
    A = coupling_matrix(prob, energy_abs_root).entries
    R = _real_rotated(A)
    rho = _nullvector_full_pivot(R - np.eye(prob.n + 1))
    lead = np.flatnonzero(np.abs(rho) > 1e-12 * np.max(np.abs(rho)))[0]
    if rho[lead] < 0:
        rho = -rho
    return (1j ** np.arange(prob.n + 1)) * rho


def normalize(prob: SpectralProblem, energy_abs: float,
              k_raw: np.ndarray) -> np.ndarray:
    """Scale a coefficient vector so that ``∫ |phi|^2 dp = 2 pi``.

    The quadratic form ``sum conj(K_h) K_k M(h+k)`` is real and positive
    for any nonzero vector; the scale factor is the positive real root.
    """
    k_raw = np.asarray(k_raw, dtype=complex)
    if not np.any(k_raw != 0):
        raise InvalidInput("k_raw must be nonzero")
    n, alpha = prob.n, prob.alpha
    M = np.array([[_m_value(h + k, alpha, energy_abs)
                   for k in range(n + 1)] for h in range(n + 1)])
    form = np.conj(k_raw) @ (M @ k_raw)
    if abs(form.imag) > 1e-10 * abs(form):
        raise SolverError("normalization form is not real")
    if form.real <= 0.0:
        raise SolverError("normalization form is not positive")
    return k_raw * math.sqrt(2.0 * math.pi / form.real)


def residual(prob: SpectralProblem, sol: EigenSolution,
             p_samples=DEFAULT_P_SAMPLES, quad_tol: float = 1e-12) -> float:
    """Eigenvalue-equation residual, the end-to-end oracle for a solution.

    Evaluates ``| |p|^alpha phi(p) + i^n (v0/2pi) ∫ (p-q)^n phi(q) dq
    - E phi(p) |`` at the sample momenta, with the convolution moment
    integrals computed by adaptive quadrature (not the closed forms), and
    returns the maximum.  Exact algebra reduces the expression to
    ``sum_h p^h (K_h - K_h')`` with ``K_h'`` the coefficients recomputed
    from the quadrature moments of phi.
    """
    n, alpha, v0 = prob.n, prob.alpha, prob.v0
    e_abs = abs(sol.energy)
    K = np.asarray(sol.coefficients, dtype=complex)

    moments = np.zeros(2 * n + 1)
    for m in range(0, 2 * n + 1, 2):
        moments[m] = 2.0 * integrate_halfline(
            power_kernel(m, alpha, e_abs), alpha - m, quad_tol).value
    mu = np.array([sum(K[h] * moments[j + h] for h in range(n + 1))
                   for j in range(n + 1)])

    worst = 0.0
    for p in p_samples:
        poly = sum(K[h] * p ** h for h in range(n + 1))
        conv = (1j ** n) * v0 / (2.0 * math.pi) * sum(
            math.comb(n, j) * (-1.0) ** j * p ** (n - j) * mu[j]
            for j in range(n + 1))
        worst = max(worst, abs(poly + conv))
    return worst


def closed_n0(alpha: float, v0: float) -> float | None:
    """Closed-form eigenvalue for the plain delta interaction (n = 0).

    Returns ``-[-v0 / (alpha sin(pi/alpha))]^(alpha/(alpha-1))`` for
    ``v0 < 0`` and None when no bound state exists (``v0 >= 0``).
    """
    if not alpha > 1.0:
        raise DomainError("alpha must exceed 1 for n = 0")
    if v0 >= 0.0:
        return None
    base = -v0 / (alpha * math.sin(math.pi / alpha))
    return -base ** (alpha / (alpha - 1.0))


def closed_n1(alpha: float, v0: float) -> float:
    """Closed-form eigenvalue for the delta-derivative interaction (n = 1).

    Defined for every nonzero ``v0`` and invariant under ``v0 -> -v0``.
    """
    if not alpha > 3.0:
        raise DomainError("alpha must exceed 3 for n = 1")
    if v0 == 0.0:
        raise InvalidInput("v0 must be nonzero")
    s = math.sin(3.0 * math.pi / alpha) * math.sin(math.pi / alpha)
    base = abs(v0) / (alpha * math.sqrt(s))
    return -base ** (alpha / (alpha - 2.0))


def _bisect_real_det(f, a, b, fa, fb, rel_tol=1e-13, max_iter=200):
    for _ in range(max_iter):
        m = math.sqrt(a * b)  # log-midpoint: the scan grid is logarithmic
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0) != (fm < 0):
            b, fb = m, fm
        else:
            a, fa = m, fm
        if b - a <= rel_tol * b:
            return 0.5 * (a + b)
    raise SolverError("bisection failed to converge")


def find_eigenvalues(prob: SpectralProblem, e_min_abs: float = 1e-8,
                     e_max_abs: float = 1e8, tol: float = 1e-10,
                     scan_points: int = 400,
                     p_samples=DEFAULT_P_SAMPLES) -> list[EigenSolution]:
    """All negative eigenvalues found on ``|E| in [e_min_abs, e_max_abs]``.

    The real part of ``det(A(E) - I)`` is scanned on a log-spaced grid,
    sign changes are bracketed and refined by bisection plus one Newton
    polish, and each root is packaged with its normalized coefficient
    vector and quadrature residual.  An empty list is a valid outcome
    (no bound state).  Roots are returned in increasing ``|E|`` order.
    """
    if not (0.0 < e_min_abs < e_max_abs):
        raise InvalidInput("need 0 < e_min_abs < e_max_abs")
    if not tol > 0.0:
        raise InvalidInput("tol must be positive")

    def fre(e):
        return det_condition(prob, e).real

    grid = np.geomspace(e_min_abs, e_max_abs, scan_points)
    vals = np.array([fre(e) for e in grid])
    if not np.all(np.isfinite(vals)):
        raise SolverError("determinant scan produced non-finite values")

    roots: list[float] = []
    for i in range(len(grid) - 1):
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(grid[i]))
            continue
        if (fa < 0) != (fb < 0):
            roots.append(_bisect_real_det(fre, float(grid[i]),
                                          float(grid[i + 1]), fa, fb))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))

    # one Newton polish with a central-difference derivative
    polished = []
    for r in roots:
        h = 1e-6 * r
        d = (fre(r + h) - fre(r - h)) / (2.0 * h)
        if d != 0.0:
            step = fre(r) / d
            if abs(step) < 0.1 * r:
                r = r - step
        polished.append(r)

    # merge near-coincident roots (suspected degenerate)
    polished.sort()
    merged: list[float] = []
    for r in polished:
        if merged and abs(r - merged[-1]) <= 1e-6 * r:
            warnings.warn(
                f"merged nearly coincident roots near |E| = {r:.6g}; "
                "suspected degenerate eigenvalue", RuntimeWarning)
            merged[-1] = 0.5 * (merged[-1] + r)
        else:
            merged.append(r)

    solutions = []
    for r in merged:
        dv = det_condition(prob, r)
        if abs(dv.imag) > 1e-10:
            raise SolverError(
                f"determinant has imaginary part {dv.imag:.3e} at the root; "
                "the real-root reduction is invalid here"
            )
        k_hat = normalize(prob, r, coefficients(prob, r))
        sol = EigenSolution(energy=-r, coefficients=k_hat,
                            residual_norm=0.0, problem=prob)
        res = residual(prob, sol, p_samples, quad_tol=min(1e-12, tol / 10))
        if res > tol:
            raise SolverError(
                f"residual {res:.3e} exceeds the solver tolerance {tol:.1e} "
                f"at |E| = {r:.12g}"
            )
        solutions.append(EigenSolution(energy=-r, coefficients=k_hat,
                                       residual_norm=res, problem=prob))
    return solutions
