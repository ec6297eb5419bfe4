"""Adaptive quadrature for algebraic-tail and Fourier-type improper integrals.

Two integral families are supported, matching what the spectral solver needs:

* half-line integrals of algebraically decaying integrands,
  ``I = ∫_0^∞ f(w) dw`` with ``|f(w)| = O(w^{-d})``, ``d > 1``;
* Fourier cosine / sine moment integrals
  ``∫_0^∞ p^m g(p) {cos, sin}(p x) dp`` of a positive, algebraically
  decaying amplitude ``g``.

The building block is an adaptive Gauss-Kronrod 7/15 panel rule.  Algebraic
tails are compressed onto ``(0, 1]`` by the power substitution
``w = u^{-1/(d-1)}``, which turns an ``O(w^{-d})`` tail into a bounded
integrand.  Oscillatory integrals are split at the zeros of the
trigonometric factor; the resulting alternating series of half-period
contributions is summed with repeated averaging (Euler transformation),
which converges even when the amplitude decays as slowly as ``p^{-0.5}``.

Integrands must accept numpy arrays: they are evaluated on whole panels of
Kronrod nodes at once.  All routines are pure functions and thread-safe.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NonConvergence

__all__ = [
    "QuadratureResult",
    "FourierMomentResult",
    "integrate_halfline",
    "integrate_fourier_cos",
    "integrate_fourier_moment",
]

DEFAULT_BUDGET = 10**6  # hard cap on integrand evaluations per call

# 15-point Kronrod nodes (positive half, |x| descending) and weights, with
# the embedded 7-point Gauss weights.  Standard QUADPACK dqk15 constants.
_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full symmetric node/weight tables, nodes ascending
_XGK = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])
_WGK = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
_WG = np.zeros(15)
_WG[1:14:2] = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])
_EPS_REL = 4e-16  # rounding floor, relative to a panel's own magnitude


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral together with an error estimate.

    Attributes
    ----------
    value : float
        The computed integral.  Always finite.
    abs_error_estimate : float
        Conservative absolute error estimate, >= 0.
    evaluations : int
        Number of integrand evaluations spent, >= 1.
    """

    value: float
    abs_error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class FourierMomentResult(QuadratureResult):
    """Result of a Fourier moment integral.

    ``odd`` is True when the moment power is odd, in which case the full-line
    integral equals ``i`` times :attr:`value` (the caller handles the ``i``
    prefactor); for even moments the full-line integral is :attr:`value`
    itself.
    """

    odd: bool = False


class _Budget:
    __slots__ = ("used", "cap")

    def __init__(self, cap: int):
        self.used = 0
        self.cap = cap

    def charge(self, n: int) -> None:
        self.used += n
        if self.used > self.cap:
            raise NonConvergence(
                f"evaluation budget of {self.cap} integrand calls exhausted"
            )


def _panel_batch(f, a, b, budget: _Budget, complex_ok: bool = False):
    """Kronrod 15 / Gauss 7 estimates on a batch of panels.

    ``a`` and ``b`` are 1-D arrays of panel endpoints; returns the K15
    values and |K15 - G7| error estimates.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    c = 0.5 * (a + b)[:, None]
    h = 0.5 * (b - a)[:, None]
    x = c + h * _XGK
    budget.charge(x.size)
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        raise InvalidInput("integrand produced a non-finite value")
    k15 = (y * _WGK).sum(axis=1) * h[:, 0]
    g7 = (y * _WG).sum(axis=1) * h[:, 0]
    return k15, np.abs(k15 - g7)


def _adaptive(f, panels, tol, budget: _Budget, *, absolute=False,
              max_splits=20_000):
    """Adaptively refine ``panels`` until the summed error estimate is below
    the target (``tol`` absolute, or ``tol * (1 + |value|)`` otherwise).

    Panels whose error sits at the rounding floor of their own magnitude are
    frozen instead of split further.  Returns (value, error_estimate).
    """
    a0 = np.array([p[0] for p in panels])
    b0 = np.array([p[1] for p in panels])
    vals, errs = _panel_batch(f, a0, b0, budget)
    heap = []
    active_err = 0.0
    frozen_err = 0.0
    total = float(vals.sum())
    counter = 0
    for i in range(len(panels)):
        heapq.heappush(heap, (-errs[i], counter, a0[i], b0[i], vals[i], errs[i]))
        active_err += errs[i]
        counter += 1
    for _ in range(max_splits):
        target = tol if absolute else tol * (1.0 + abs(total))
        if active_err + frozen_err <= target:
            break
        if not heap:
            raise NonConvergence(
                "error estimate stagnated above the requested tolerance"
            )
        _, _, a, b, v, e = heapq.heappop(heap)
        active_err -= e
        at_floor = e <= _EPS_REL * abs(v) or e == 0.0
        too_thin = (b - a) <= 1e-15 * (abs(a) + abs(b)) or (b - a) < 1e-290
        if at_floor or too_thin:
            frozen_err += e
            continue
        m = 0.5 * (a + b)
        v2, e2 = _panel_batch(f, np.array([a, m]), np.array([m, b]), budget)
        total += float(v2.sum()) - v
        active_err += float(e2.sum())
        heapq.heappush(heap, (-e2[0], counter, a, m, v2[0], e2[0]))
        heapq.heappush(heap, (-e2[1], counter + 1, m, b, v2[1], e2[1]))
        counter += 2
    else:
        raise NonConvergence("adaptive refinement exceeded the split limit")
    return total, active_err + frozen_err


def _geometric_head(hi: float, levels: int):
    """Panels covering (0, hi] with geometric refinement toward 0."""
    edges = hi * 0.5 ** np.arange(levels)
    panels = [(edges[j + 1], edges[j]) for j in range(levels - 1)]
    panels.append((0.0, edges[-1]))
    return panels


def integrate_halfline(f, decay_exponent: float, tol: float,
                       budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Integrate ``f`` over (0, ∞) for an algebraically decaying integrand.

    Parameters
    ----------
    f : callable
        Vectorized integrand, continuous on (0, ∞), integrable at 0 and
        ``O(w**-decay_exponent)`` as ``w → ∞``.  The tail substitution
        evaluates ``f`` at very large ``w``, so algebraic kernels must be
        written in a form that stays finite there (see
        ``closed_integrals.power_kernel``); a kernel whose numerator or
        denominator overflows separately silently loses tail mass.
    decay_exponent : float
        Lower bound on the algebraic decay rate; must exceed 1.
    tol : float
        Tolerance, interpreted as ``tol * (1 + |value|)`` absolute-plus-
        relative.
    budget : int
        Maximum number of integrand evaluations.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    InvalidInput
        If ``decay_exponent <= 1`` or the integrand returns NaN/inf.
    NonConvergence
        If the error estimate cannot be brought below the tolerance.
    """
    if not decay_exponent > 1.0:
        raise InvalidInput("decay_exponent must exceed 1 for an integrable tail")
    if not tol > 0.0:
        raise InvalidInput("tol must be positive")
    bud = _Budget(budget)
    ex = 1.0 / (decay_exponent - 1.0)

    def tail(u):
        # w = u**(-ex) maps (0, 1] onto [1, ∞); the O(w^-d) tail becomes O(1)
        with np.errstate(over="ignore", divide="ignore"):
            w = u ** (-ex)
            return ex * f(w) * u ** (-ex - 1.0)

    v1, e1 = _adaptive(f, _geometric_head(1.0, 42), tol / 2, bud)
    v2, e2 = _adaptive(tail, _geometric_head(1.0, 42), tol / 2, bud)
    value = v1 + v2
    err = max(e1 + e2, _EPS_REL * abs(value))
    if not np.isfinite(value):
        raise NonConvergence("half-line integral did not produce a finite value")
    return QuadratureResult(float(value), float(err), bud.used)


def _euler_sum(terms: np.ndarray):
    """Sum an alternating-sign series by repeated averaging of its partial
    sums.  Returns (value, error_estimate).  ``terms`` has the series terms
    along the last axis; leading axes are broadcast (batch mode)."""
    partial = np.cumsum(terms, axis=-1)
    row = partial
    while row.shape[-1] > 1:
        row = 0.5 * (row[..., 1:] + row[..., :-1])
    best = row[..., 0]
    row = partial[..., :-1]
    while row.shape[-1] > 1:
        row = 0.5 * (row[..., 1:] + row[..., :-1])
    est = np.abs(best - row[..., 0]) * 4.0 + _EPS_REL * np.abs(best)
    return best, est


def _fourier_scaled(amp, x: float, kind: str, tol: float, bud: _Budget):
    """``∫_0^∞ amp(p) trig(p x) dp`` for x > 0 via zero splitting.

    ``kind`` is "cos" or "sin".  The substitution u = p x makes the zeros of
    the trigonometric factor x-independent; the head below the first zero is
    integrated adaptively and the half-period terms (each refined to an
    absolute per-term target) are Euler-accelerated.  Error targets are
    carried in u-space as ``tol * x``, which maps back to the requested
    value-space tolerance after the final division by x.
    """
    trig = np.cos if kind == "cos" else np.sin
    z0 = 0.5 * np.pi if kind == "cos" else np.pi

    def integrand(u):
        return amp(u / x) * trig(u)

    tol_u = tol * x
    head, head_err = _adaptive(integrand, _geometric_head(z0, 48),
                               tol_u / 4, bud, absolute=True)

    terms: list[float] = []
    term_errs: list[float] = []
    n_terms = 48
    max_terms = 768
    while True:
        tol_term = tol_u / (2.0 * n_terms)
        for k in range(len(terms), n_terms):
            a = z0 + np.pi * k
            v, e = _adaptive(integrand, [(a, a + np.pi)], tol_term, bud,
                             absolute=True)
            terms.append(v)
            term_errs.append(e)
        series, acc_err = _euler_sum(np.array(terms))
        err_u = head_err + sum(term_errs) + float(acc_err)
        value = (head + series) / x
        err = err_u / x
        if err <= tol * (1.0 + abs(value)) or n_terms >= max_terms:
            break
        n_terms *= 2
    if err > tol * (1.0 + abs(value)):
        raise NonConvergence(
            "oscillatory series did not reach the requested tolerance"
        )
    return value, max(err, _EPS_REL * abs(value))


def integrate_fourier_cos(g, x: float, decay_exponent: float, tol: float,
                          budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Compute ``2 ∫_0^∞ g(p) cos(p x) dp`` for an even amplitude ``g``.

    The value is even in ``x`` (only ``|x|`` is used).  For ``|x| < 1e-12``
    the zero-frequency limit degenerates the zero-splitting scheme, so the
    plain half-line rule is used instead.
    """
    if not decay_exponent > 1.0:
        raise InvalidInput("decay_exponent must exceed 1")
    xa = abs(float(x))
    if xa < 1e-12:
        base = integrate_halfline(g, decay_exponent, tol / 2, budget)
        return QuadratureResult(2.0 * base.value, 2.0 * base.abs_error_estimate,
                                base.evaluations)
    bud = _Budget(budget)
    value, err = _fourier_scaled(g, xa, "cos", tol / 2, bud)
    return QuadratureResult(2.0 * value, 2.0 * err, bud.used)


def integrate_fourier_moment(g, moment: int, x: float, decay_exponent: float,
                             tol: float,
                             budget: int = DEFAULT_BUDGET) -> FourierMomentResult:
    """Moment integral ``∫_R p^moment g(|p|) e^{ipx} dp`` reduced to its real
    half-line form.

    Even moments return ``2 ∫_0^∞ p^m g(p) cos(p x) dp`` with ``odd=False``;
    odd moments return ``2 ∫_0^∞ p^m g(p) sin(p x) dp`` (odd in ``x``) with
    ``odd=True`` -- the ``i`` prefactor of the full-line integral is left to
    the caller.

    Raises
    ------
    InvalidInput
        If ``moment < 0`` or the tail of ``p^moment g`` decays with exponent
        <= 1 (``decay_exponent - moment <= 1``).
    """
    if moment < 0 or int(moment) != moment:
        raise InvalidInput("moment must be a nonnegative integer")
    moment = int(moment)
    if not decay_exponent - moment > 1.0:
        raise InvalidInput(
            "insufficient decay: need decay_exponent - moment > 1"
        )
    odd = bool(moment % 2)
    if moment == 0:
        base = integrate_fourier_cos(g, x, decay_exponent, tol, budget)
        return FourierMomentResult(base.value, base.abs_error_estimate,
                                   base.evaluations, odd=False)

    def amp(p):
        return p ** moment * g(p)

    xa = abs(float(x))
    if odd and xa < 1e-12:
        return FourierMomentResult(0.0, 0.0, 1, odd=True)
    if not odd and xa < 1e-12:
        base = integrate_halfline(amp, decay_exponent - moment, tol / 2, budget)
        return FourierMomentResult(2.0 * base.value, 2.0 * base.abs_error_estimate,
                                   base.evaluations, odd=False)
    bud = _Budget(budget)
    value, err = _fourier_scaled(amp, xa, "sin" if odd else "cos", tol / 2, bud)
    if odd and x < 0:
        value = -value
    return FourierMomentResult(2.0 * value, 2.0 * err, bud.used, odd=odd)


def fourier_moment_relaxed(g, moment: int, x_abs: float, tol: float,
                           budget: int = DEFAULT_BUDGET):
    """Like :func:`integrate_fourier_moment` restricted to x > 0, but
    accepting conditionally convergent integrals (amplitude decay merely
    positive).  Used internally for derivative kernels at small alpha."""
    if x_abs <= 0.0:
        raise InvalidInput("x_abs must be positive")

    def amp(p):
        return p ** moment * g(p) if moment else g(p)

    bud = _Budget(budget)
    kind = "sin" if moment % 2 else "cos"
    value, err = _fourier_scaled(amp, float(x_abs), kind, tol / 2, bud)
    return QuadratureResult(2.0 * value, 2.0 * err, bud.used)


# ---------------------------------------------------------------------------
# batched grid evaluation
#
# Same zero-splitting + Euler algorithm as the scalar path, vectorized over
# an array of abscissas.  The panel layout is fixed (geometric head levels,
# fixed sub-panels per half period) and escalated globally until every
# point's error estimate is below target.  Used for dense eigenfunction
# grids, where a per-point adaptive call would dominate the runtime.
# ---------------------------------------------------------------------------

def _fixed_panel_nodes(panels_lo, panels_hi):
    a = np.asarray(panels_lo, float)
    b = np.asarray(panels_hi, float)
    c = 0.5 * (a + b)[:, None]
    h = 0.5 * (b - a)[:, None]
    return (c + h * _XGK).ravel(), h[:, 0]


def _subdivided(lo, hi, nsub):
    edges = np.linspace(lo, hi, nsub + 1, axis=-1).reshape(-1)
    # consecutive edges per original panel
    lo2 = []
    hi2 = []
    k = nsub + 1
    for i in range(len(lo)):
        seg = edges[i * k:(i + 1) * k]
        lo2.extend(seg[:-1])
        hi2.extend(seg[1:])
    return np.array(lo2), np.array(hi2)


def _ratio_head(hi: float, ratio: float, floor: float = 1e-11):
    """Geometric panel edges on (0, hi] with the given refinement ratio."""
    levels = int(np.ceil(np.log(hi / floor) / np.log(ratio)))
    edges = hi / ratio ** np.arange(levels + 1)
    lo = np.concatenate([edges[1:], [0.0]])
    hi_ = edges
    return lo[::-1], hi_[::-1]


def fourier_moment_grid(g, moment: int, xs: np.ndarray, decay_exponent: float,
                        tol: float = 1e-9, chunk: int = 1024) -> np.ndarray:
    """``2 ∫_0^∞ p^moment g(p) trig(p x) dp`` for every ``x`` in ``xs``.

    ``trig`` is cos for even and sin for odd moments; the sign of odd-moment
    values follows the sign of x.  Entries with ``|x| < 1e-12`` use the
    zero-frequency path.  ``decay_exponent`` is the decay rate of ``g``.
    """
    xs = np.asarray(xs, float)
    out = np.empty(xs.shape, float)
    odd = bool(moment % 2)
    z0 = np.pi if odd else 0.5 * np.pi
    trig = np.sin if odd else np.cos

    small = np.abs(xs) < 1e-12
    if np.any(small):
        if odd:
            out[small] = 0.0
        else:
            def amp0(p):
                return p ** moment * g(p) if moment else g(p)
            out[small] = 2.0 * integrate_halfline(
                amp0, decay_exponent - moment, tol).value

    big = ~small
    if not np.any(big):
        return out
    xa = np.abs(xs[big])
    values = np.empty(xa.shape, float)

    def block(xb, u_nodes, tr, hw):
        p = u_nodes[None, :] / xb[:, None]
        ampv = p ** moment * g(p) if moment else g(p)
        prod = ampv.reshape(len(xb), -1, 15) * tr
        v15 = (prod * _WGK).sum(axis=2) * hw
        v7 = (prod * _WG).sum(axis=2) * hw
        return v15, np.abs(v15 - v7)

    n_terms, nsub, ratio = 48, 2, 1.35
    layout = None
    for start in range(0, xa.size, chunk):
        xb = xa[start:start + chunk]
        while True:
            if layout is None:
                h_lo, h_hi = _ratio_head(z0, ratio)
                head_u, head_h = _fixed_panel_nodes(h_lo, h_hi)
                head_tr = trig(head_u).reshape(-1, 15)
                t_lo = z0 + np.pi * np.arange(n_terms)
                t_lo2, t_hi2 = _subdivided(t_lo, t_lo + np.pi, nsub)
                term_u, term_h = _fixed_panel_nodes(t_lo2, t_hi2)
                term_tr = trig(term_u).reshape(-1, 15)
                layout = (head_u, head_tr, head_h, term_u, term_tr, term_h)
            head_u, head_tr, head_h, term_u, term_tr, term_h = layout

            hv, he = block(xb, head_u, head_tr, head_h)
            head = hv.sum(axis=1)
            head_err = he.sum(axis=1)
            tv, te = block(xb, term_u, term_tr, term_h)
            terms = tv.reshape(len(xb), n_terms, nsub).sum(axis=2)
            perr = te.sum(axis=1)

            series, acc_err = _euler_sum(terms)
            vals = (head + series) / xb
            errs = (head_err + perr + acc_err) / xb
            ok = errs <= tol * (1.0 + np.abs(vals))
            if np.all(ok) or (n_terms >= 768 and nsub >= 8 and ratio <= 1.1):
                break
            # escalate whichever component dominates the worst point
            worst = int(np.argmax(errs - tol * (1.0 + np.abs(vals))))
            if acc_err[worst] > (head_err + perr)[worst] and n_terms < 768:
                n_terms *= 2
            elif head_err[worst] > perr[worst] and ratio > 1.1:
                ratio = 1.0 + (ratio - 1.0) / 2.0
            else:
                nsub *= 2
            layout = None
        values[start:start + chunk] = 2.0 * vals

    out[big] = values
    if odd:
        out[big] *= np.sign(xs[big])
    return out
