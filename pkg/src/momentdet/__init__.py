"""momentdet: moment-determinacy diagnostics and log-domain numerics.

The package has two halves.

The numeric half evaluates, entirely in the log domain, the special
functions behind a family of moment sequences built from products of
gamma factors and the log-power integrals
S(p) = ∫₀^∞ ln(1+x)^p e^{−x} dx: Lambert W (``lambertw``), tanh-sinh
quadrature for S(p), the unit-interval companion ∫₀¹ (ln t)^n e^{−t} dt
and the gamma derivatives Γ⁽ⁿ⁾(1) they combine into (``quadrature``), and
saddle-point asymptotics of S(t) with numeric verification of the
Laplace-method hypotheses (``asymptotics``).

The diagnostic half generates and serializes exact log-domain moment
sequences (``moments``) and classifies them against moment-determinacy
conditions — Carleman's series test on both supports, the quadratic and
q-modulated growth-rate conditions, the q-series divergence test, and
Hardy's moment bound — with evidence-graded verdicts and quantitative
diagnostics (``criteria``).  A command-line front end (``cli``) exposes
generation, checking, and reproducible reference tables.
"""

from __future__ import annotations

from .asymptotics import (
    ConditionCheck,
    SaddleReport,
    asymptotic_kn,
    laplace_estimate_exact,
    laplace_estimate_leading,
    saddle_point,
    verify_laplace_conditions,
)
from .criteria import (
    INCONCLUSIVE,
    SATISFIED,
    VIOLATED,
    QFunction,
    Verdict,
    analyze,
    check_carleman,
    check_growth_rate,
    check_hardy,
    check_q_divergence,
)
from .errors import (
    ConvergenceError,
    DomainError,
    FamilyParseError,
    QuadratureError,
    SequenceError,
)
from .lambertw import (
    TOL_W,
    WValue,
    lambert_w0,
    lambert_w_bounds,
    w_frac_diff,
    w_ratio_power,
)
from .logdomain import SignedLogValue, sum_signed
from .moments import (
    FamilySpec,
    MomentSequence,
    carleman_terms,
    from_csv,
    from_json,
    generate_from_label,
    generate_moments,
    lognormal_moments,
    moment_ratios,
    parse_family,
    to_csv,
    to_json,
)
from .quadrature import (
    DEFAULT_REL_TOL,
    QuadratureResult,
    gamma_derivative,
    integrate_logweighted,
    integrate_unit_log_power,
    log_power_integral,
    validate_rel_tol,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionCheck",
    "ConvergenceError",
    "DEFAULT_REL_TOL",
    "DomainError",
    "FamilyParseError",
    "FamilySpec",
    "INCONCLUSIVE",
    "MomentSequence",
    "QFunction",
    "QuadratureError",
    "QuadratureResult",
    "SATISFIED",
    "SaddleReport",
    "SequenceError",
    "SignedLogValue",
    "TOL_W",
    "VIOLATED",
    "Verdict",
    "WValue",
    "analyze",
    "asymptotic_kn",
    "carleman_terms",
    "check_carleman",
    "check_growth_rate",
    "check_hardy",
    "check_q_divergence",
    "from_csv",
    "from_json",
    "gamma_derivative",
    "generate_from_label",
    "generate_moments",
    "integrate_logweighted",
    "integrate_unit_log_power",
    "lambert_w0",
    "lambert_w_bounds",
    "laplace_estimate_exact",
    "laplace_estimate_leading",
    "log_power_integral",
    "lognormal_moments",
    "moment_ratios",
    "parse_family",
    "saddle_point",
    "sum_signed",
    "to_csv",
    "to_json",
    "validate_rel_tol",
    "verify_laplace_conditions",
    "w_frac_diff",
    "w_ratio_power",
]
