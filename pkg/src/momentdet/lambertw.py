"""Principal-branch Lambert W for non-negative arguments.

``W(t)`` is the unique ``w >= 0`` with ``w * exp(w) = t`` for ``t >= 0``.
It locates the peak of the log-power integrands used throughout this
package (at ``x = exp(W(p)) - 1``) and drives the saddle-point estimates,
so it must stay accurate from subnormal ``t`` up to ``t ~ 1e12`` and beyond.

The solver is Halley's iteration in one of two formulations:

* ``t >= 2``: iterate on ``f(w) = w + ln w - ln t``.  This form never
  exponentiates ``w``, so it cannot overflow for huge ``t``, and its
  residual is evaluated as ``t * expm1(w + ln w - ln t)`` which stays
  exact in the ulp sense even when ``t`` is enormous.
* ``t < 2``: iterate on ``f(w) = w * exp(w) - t`` directly; for small
  ``t`` the log form is singular (``ln w -> -inf``) while the direct form
  is perfectly conditioned.

Initial guesses: the asymptotic ``ln t - ln ln t`` for ``t > e``, a scaled
``log1p`` for moderate ``t``, and the Maclaurin series
``t (1 - t + 1.5 t^2)`` near zero.  Halley converges cubically from these,
so well under the 50-iteration cap in practice.

Useful sandwich for ``t > e``::

    ln t - ln ln t  <=  W(t)  <=  ln t - ln(ln t - ln ln t)

Both endpoints tighten as ``t`` grows; they make cheap a-priori brackets
and seed the iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "TOL_W",
    "WValue",
    "lambert_w0",
    "lambert_w_bounds",
    "w_frac_diff",
    "w_ratio_power",
]

#: Relative residual tolerance: |w e^w - t| <= TOL_W * max(t, 1).
TOL_W = 1e-12

_MAX_ITER = 50


@dataclass(frozen=True)
class WValue:
    """A solved Lambert W point: argument, value, and achieved residual."""

    t: float
    w: float
    residual: float


def _initial_guess(t: float) -> float:
    if t > math.e:
        lt = math.log(t)
        return lt - math.log(lt)
    if t >= 0.25:
        return 0.7 * math.log1p(t)
    # Maclaurin series W(t) = t - t^2 + 1.5 t^3 - ...
    return t * (1.0 - t + 1.5 * t * t)


def _halley_log_form(t: float) -> tuple[float, float]:
    """Solve w + ln w = ln t (valid for t >= 2, overflow-free)."""
    lt = math.log(t)
    w = lt - math.log(lt) if lt > 1.0 else 1.0
    for _ in range(_MAX_ITER):
        f = w + math.log(w) - lt
        fp = (w + 1.0) / w
        fpp = -1.0 / (w * w)
        dw = 2.0 * f * fp / (2.0 * fp * fp - f * fpp)
        w -= dw
        if abs(dw) <= 1e-16 * w:
            break
    # |w e^w - t| = t * |expm1(w + ln w - ln t)|
    residual = abs(t * math.expm1(w + math.log(w) - lt))
    return w, residual


def _halley_direct(t: float) -> tuple[float, float]:
    """Solve w e^w = t directly (valid for 0 <= t < 2)."""
    w = _initial_guess(t)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - t
        if f == 0.0:
            break
        # Halley step for f = w e^w - t
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        dw = f / denom
        w -= dw
        if abs(dw) <= 1e-16 * max(w, 1e-300):
            break
    residual = abs(w * math.exp(w) - t)
    return w, residual


def lambert_w0(t: float) -> WValue:
    """Evaluate the principal branch W(t) for t >= 0.

    Raises DomainError for negative or non-finite t, and ConvergenceError
    if the residual tolerance ``TOL_W * max(t, 1)`` is not met.
    """
    t = float(t)
    if math.isnan(t) or math.isinf(t) or t < 0.0:
        raise DomainError(f"lambert_w0 requires finite t >= 0, got {t!r}")
    if t == 0.0:
        return WValue(t=0.0, w=0.0, residual=0.0)
    if t >= 2.0:
        w, residual = _halley_log_form(t)
    else:
        w, residual = _halley_direct(t)
    if not residual <= TOL_W * max(t, 1.0):
        raise ConvergenceError(
            f"lambert_w0({t!r}) residual {residual:.3e} exceeds "
            f"{TOL_W:.0e} * max(t, 1) after {_MAX_ITER} iterations"
        )
    return WValue(t=t, w=w, residual=residual)


def lambert_w_bounds(t: float) -> tuple[float, float]:
    """A-priori sandwich (lower, upper) for W(t); requires t > e."""
    t = float(t)
    if not t > math.e:
        raise DomainError(f"lambert_w_bounds requires t > e, got {t!r}")
    lt = math.log(t)
    llt = math.log(lt)
    lower = lt - llt
    upper = lt - math.log(lt - llt)
    return lower, upper


def _w_unit_increment(t: float) -> tuple[float, float, float]:
    """Solve for d = W(t+1) − W(t) without subtractive cancellation.

    Taking ``ln w + w = ln t`` at t and t+1 and subtracting gives the
    exact scalar equation ``d + log1p(d/w0) = log1p(1/t) = L``, whose
    terms are all well-scaled even when d underflows the spacing of w
    itself.  The float difference of the two solver outputs seeds a
    Newton polish of that equation.  Returns (w0, d, L).
    """
    w0 = lambert_w0(t).w
    w1 = lambert_w0(t + 1.0).w
    ell = math.log1p(1.0 / t)
    d = w1 - w0
    for _ in range(3):
        f = d + math.log1p(d / w0) - ell
        d -= f / (1.0 + 1.0 / (w0 + d))
    return w0, d, ell


def w_ratio_power(t: float) -> float:
    """Evaluate (W(t+1)/W(t))**t; lies in [1, exp(1/(W(t)+1))] for t > 0.

    The exponent ``t·ln(W(t+1)/W(t))`` is evaluated as ``t·(L − d)`` with
    L = log1p(1/t) and d = W(t+1) − W(t) from the increment equation;
    forming it from two separate logarithms would lose the bound's
    O(1/t)-thin margin to cancellation for large ``t``.
    """
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"w_ratio_power requires finite t > 0, got {t!r}")
    w0, d, ell = _w_unit_increment(t)
    return math.exp(t * (ell - d))


def w_frac_diff(t: float) -> float:
    """Evaluate (t+1)/W(t+1) - t/W(t); lies in [0, 1/W(t+1)] for t > 0.

    ``t/W(t) = exp(W(t))`` is the peak abscissa shifted by one, so this
    difference equals ``(t/W(t))·expm1(d)`` with d = W(t+1) − W(t),
    which stays fully precise when the two fractions grow huge.
    """
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"w_frac_diff requires finite t > 0, got {t!r}")
    w0, d, _ = _w_unit_increment(t)
    return (t / w0) * math.expm1(d)
