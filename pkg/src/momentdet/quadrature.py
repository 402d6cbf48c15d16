"""Log-domain adaptive quadrature for the package's integral family.

Two integrals are evaluated, both entirely in the log domain because
their values span hundreds of orders of magnitude:

* ``S(p) = ∫₀^∞ ln(1+x)^p · e^{−x} dx`` for real p ≥ 0
  (``integrate_logweighted``); S(100) is already ~4.5·10⁴¹ and p up to a
  few thousand must work.
* ``∫₀¹ (ln t)^n · e^{−t} dt`` for integer n ≥ 0
  (``integrate_unit_log_power``), rewritten via t = e^{−u} as
  ``(−1)^n ∫₀^∞ u^n · e^{−u − e^{−u}} du`` so the integrand is positive
  and the sign is exact.

Combining the two yields the derivatives of the gamma function at 1::

    Γ⁽ⁿ⁾(1) = ∫₀¹ (ln t)^n e^{−t} dt + e^{−1}·S(n)

Method: each integrand has a single interior peak (located via Lambert W
for S, via bisection of the stationarity equation for the unit integral).
The axis is truncated where the log-integrand has dropped 60 nats below
the peak (contributions below e^{−60} of the peak mass are invisible at
the supported tolerances), split into [left-of-peak, right-of-peak]
panels, and each panel is integrated with the tanh-sinh (double
exponential) rule at geometrically refined step sizes.  Node weights are
combined with a max-shift log-sum-exp, so only log-magnitudes are ever
stored.  Refinement stops when two successive levels agree to the
requested relative tolerance; the last inter-level difference is the
reported error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError
from .lambertw import lambert_w0
from .logdomain import SignedLogValue, sum_signed

__all__ = [
    "DEFAULT_REL_TOL",
    "QuadratureResult",
    "gamma_derivative",
    "integrate_logweighted",
    "integrate_unit_log_power",
    "log_power_integral",
    "validate_rel_tol",
]

#: Default relative tolerance for all integrators.
DEFAULT_REL_TOL = 1e-9

#: Truncate the axis where the log-integrand is this far below its peak.
_CUTOFF_DROP = 60.0

#: Integrand peaks closer to 0 than this are not worth a panel split;
#: a [0, peak] panel this narrow breaks down in subnormal-float territory.
_PEAK_SPLIT_FLOOR = 1e-280

#: tanh-sinh parameter range: nodes at t = k·h for |t| ≤ _TMAX.
_TMAX = 4.0
_MIN_LEVEL = 3
_MAX_LEVEL = 12

_LOG_HALF_PI = math.log(math.pi / 2.0)


@dataclass(frozen=True)
class QuadratureResult:
    """An integral value with its error estimate and node count."""

    value: SignedLogValue
    est_rel_error: float
    nodes_used: int

    def __post_init__(self) -> None:
        if math.isnan(self.est_rel_error) or self.est_rel_error < 0.0:
            raise ValueError(f"est_rel_error must be >= 0, got {self.est_rel_error!r}")
        if self.nodes_used <= 0:
            raise ValueError(f"nodes_used must be positive, got {self.nodes_used!r}")


def validate_rel_tol(rel_tol: float) -> float:
    """Check rel_tol against the supported open range (1e-14, 1e-2)."""
    rel_tol = float(rel_tol)
    if not (1e-14 < rel_tol < 1e-2):
        raise DomainError(f"rel_tol must lie in (1e-14, 1e-2), got {rel_tol!r}")
    return rel_tol


def _logsumexp(values: np.ndarray) -> float:
    if values.size == 0:
        return -math.inf
    shift = float(np.max(values))
    if shift == -math.inf:
        return -math.inf
    return shift + math.log(float(np.sum(np.exp(values - shift))))


def _panel_log_integral(
    logf: Callable[[np.ndarray], np.ndarray], a: float, b: float, level: int
) -> tuple[float, int]:
    """One tanh-sinh pass over [a, b] at step h = 2^{−level}; returns log value."""
    h = 2.0 ** (-level)
    k = np.arange(-int(_TMAX / h), int(_TMAX / h) + 1)
    trans = np.pi / 2.0 * np.sinh(k * h)
    x = (a + b) / 2.0 + (b - a) / 2.0 * np.tanh(trans)
    # log of the rule weight h·(π/2)·cosh(t) / cosh²((π/2)·sinh t), scaled to [a,b]
    logw = (
        math.log(h)
        + math.log((b - a) / 2.0)
        + _LOG_HALF_PI
        + np.log(np.cosh(k * h))
        - 2.0 * np.log(np.cosh(trans))
    )
    # tanh saturates for extreme nodes; those land exactly on a or b where
    # the integrand may be singular — their true weight is negligible.
    inside = (x > a) & (x < b)
    vals = np.full(x.shape, -np.inf)
    vals[inside] = logf(x[inside]) + logw[inside]
    return _logsumexp(vals[np.isfinite(vals)]), int(x.size)


def _integrate_panel(
    logf: Callable[[np.ndarray], np.ndarray], a: float, b: float, rel_tol: float
) -> tuple[float, float, int]:
    """Refine one panel until successive levels agree to rel_tol.

    Returns (log value, estimated relative error, nodes used); raises
    QuadratureError with the partial estimate if _MAX_LEVEL is reached
    without agreement.
    """
    nodes = 0
    prev = math.nan
    for level in range(_MIN_LEVEL, _MAX_LEVEL + 1):
        cur, n = _panel_log_integral(logf, a, b, level)
        nodes += n
        if level > _MIN_LEVEL:
            if prev == cur:  # covers the both-(-inf) empty-mass case
                return cur, 0.0, nodes
            err = abs(math.expm1(prev - cur))
            if err <= rel_tol:
                return cur, err, nodes
        prev = cur
    raise QuadratureError(
        f"panel [{a:.6g}, {b:.6g}] did not converge to rel_tol={rel_tol:.1e} "
        f"within {_MAX_LEVEL} refinement levels",
        partial=SignedLogValue.from_log(prev),
    )


def _find_cutoff(logf_scalar: Callable[[float], float], peak_x: float, peak_log: float) -> float:
    """Rightmost abscissa kept: where logf has dropped _CUTOFF_DROP below peak."""
    target = peak_log - _CUTOFF_DROP
    hi = peak_x + 10.0
    for _ in range(200):
        if logf_scalar(hi) <= target:
            break
        hi *= 2.0
    else:  # pragma: no cover - the integrands decay at least linearly
        raise QuadratureError(f"no cutoff found beyond x = {hi:.3e}")
    lo = peak_x
    for _ in range(60):
        mid = (lo + hi) / 2.0
        if logf_scalar(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def _combine_panels(
    logf: Callable[[np.ndarray], np.ndarray],
    panels: list[tuple[float, float]],
    rel_tol: float,
) -> tuple[float, float, int]:
    """Integrate panels independently and merge (log value, rel err, nodes)."""
    logs: list[float] = []
    errs: list[float] = []
    nodes = 0
    per_panel_tol = rel_tol / 2.0
    for a, b in panels:
        lg, err, n = _integrate_panel(logf, a, b, per_panel_tol)
        logs.append(lg)
        errs.append(err)
        nodes += n
    total = _logsumexp(np.array(logs))
    est = sum(e * math.exp(lg - total) for e, lg in zip(errs, logs))
    return total, est, nodes


def integrate_logweighted(p: float, rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Evaluate S(p) = ∫₀^∞ ln(1+x)^p · e^{−x} dx in the log domain.

    Supports real p ≥ 0 up to at least a few thousand; the result value
    is always positive.
    """
    p = float(p)
    if not (math.isfinite(p) and p >= 0.0):
        raise DomainError(f"integrate_logweighted requires finite p >= 0, got {p!r}")
    rel_tol = validate_rel_tol(rel_tol)

    if p == 0.0:
        def logf(x: np.ndarray) -> np.ndarray:
            return -x

        def logf_scalar(x: float) -> float:
            return -x

        peak_x, peak_log = 0.0, 0.0
    else:
        def logf(x: np.ndarray) -> np.ndarray:
            return p * np.log(np.log1p(x)) - x

        def logf_scalar(x: float) -> float:
            if x <= 0.0:
                return -math.inf
            return p * math.log(math.log1p(x)) - x

        peak_x = math.expm1(lambert_w0(p).w)
        peak_log = logf_scalar(peak_x)

    cutoff = _find_cutoff(logf_scalar, peak_x, peak_log)
    # Below _PEAK_SPLIT_FLOOR a [0, peak] panel would sit on the subnormal
    # float lattice (nodes collapse, widths underflow) while contributing
    # only ~peak_x relative mass, so integrate in one panel instead.
    if peak_x < _PEAK_SPLIT_FLOOR:
        panels = [(0.0, cutoff)]
    else:
        panels = [(0.0, peak_x), (peak_x, cutoff)]
    total, est, nodes = _combine_panels(logf, panels, rel_tol)
    return QuadratureResult(
        value=SignedLogValue.from_log(total), est_rel_error=est, nodes_used=nodes
    )


def _unit_peak(n: int) -> float:
    """Stationary point of n·ln u − u − e^{−u} on (0, n+2), by bisection."""
    def slope(u: float) -> float:
        return n / u - 1.0 + math.exp(-u)

    lo, hi = 1e-12, float(n) + 2.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if slope(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def integrate_unit_log_power(n: int, rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Evaluate ∫₀¹ (ln t)^n · e^{−t} dt for integer n ≥ 0.

    Computed as (−1)^n · ∫₀^∞ u^n · e^{−u − e^{−u}} du, so the returned
    sign is exactly (−1)^n and the magnitude integrand is positive.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"integrate_unit_log_power requires an integer n >= 0, got {n!r}")
    rel_tol = validate_rel_tol(rel_tol)

    if n == 0:
        def logf(u: np.ndarray) -> np.ndarray:
            return -u - np.exp(-u)

        def logf_scalar(u: float) -> float:
            return -u - math.exp(-u)

        peak_u, peak_log = 0.0, -1.0
    else:
        def logf(u: np.ndarray) -> np.ndarray:
            return n * np.log(u) - u - np.exp(-u)

        def logf_scalar(u: float) -> float:
            if u <= 0.0:
                return -math.inf
            return n * math.log(u) - u - math.exp(-u)

        peak_u = _unit_peak(n)
        peak_log = logf_scalar(peak_u)

    cutoff = _find_cutoff(logf_scalar, peak_u, peak_log)
    panels = [(peak_u, cutoff)] if peak_u == 0.0 else [(0.0, peak_u), (peak_u, cutoff)]
    total, est, nodes = _combine_panels(logf, panels, rel_tol)
    sign = -1 if n % 2 else 1
    return QuadratureResult(
        value=SignedLogValue.from_log(total, sign=sign), est_rel_error=est, nodes_used=nodes
    )


def gamma_derivative(n: int, rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Evaluate Γ⁽ⁿ⁾(1) = ∫₀¹ (ln t)^n e^{−t} dt + e^{−1}·S(n).

    The two pieces have opposite signs for odd n but never cancel
    catastrophically: the unit part dominates (its magnitude stays within
    [e^{−1}·n!, n!] while e^{−1}·S(n) is smaller from n = 3 on).
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DomainError(f"gamma_derivative requires an integer n >= 0, got {n!r}")
    rel_tol = validate_rel_tol(rel_tol)

    unit = integrate_unit_log_power(n, rel_tol=rel_tol)
    tail = integrate_logweighted(float(n), rel_tol=rel_tol)
    tail_scaled = tail.value * SignedLogValue.from_log(-1.0)
    value = sum_signed((unit.value, tail_scaled))

    if value.is_zero():
        est = math.inf
    else:
        abs_err = _logsumexp(
            np.array(
                [
                    math.log(unit.est_rel_error) + unit.value.logmag
                    if unit.est_rel_error > 0.0
                    else -math.inf,
                    math.log(tail.est_rel_error) + tail_scaled.logmag
                    if tail.est_rel_error > 0.0
                    else -math.inf,
                ]
            )
        )
        est = math.exp(abs_err - value.logmag)
    return QuadratureResult(
        value=value, est_rel_error=est, nodes_used=unit.nodes_used + tail.nodes_used
    )


@lru_cache(maxsize=4096)
def _log_power_integral_cached(p: float, rel_tol: float) -> float:
    return integrate_logweighted(p, rel_tol=rel_tol).value.logmag


def log_power_integral(p: float, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Cached log-magnitude of S(p); the workhorse for moment generation."""
    return _log_power_integral_cached(float(p), float(rel_tol))
