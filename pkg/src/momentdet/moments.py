"""Exact log-domain moment sequences for the constructed and stock families.

The central family is the product construction

    log m_n = Σᵢ [ log Γ(δᵢ·n + 1) + log S(n·rᵢ) ],       S(p) = ∫₀^∞ ln(1+x)^p e^{−x} dx

over factors (δᵢ, rᵢ) with δ ∈ [0, 2], r ∈ [0, 1].  The flagship instance
uses two factors (1, 1): m_n = (n!)²·K_n² with K_n = S(n).  Stock
calibration families are the plain exponential (m_n = n!, factors
{(1, 0)}), the squared exponential (m_n = (2n)!, factors {(2, 0)}), and a
lognormal-type sequence (m_n = e^{n²/2}).

Symmetrization modes for measures on the whole line (odd moments zero):

* ``symmetric-root`` (default symmetric construction): even moments equal
  the base Stieltjes family's m_n — the distribution of a random sign
  times the square root of the base variable.  Stored entry j holds
  m_{2j}.
* ``symmetric-product`` (documented alternative): the literal independent
  product of symmetrized factors, whose even moments are
  Σᵢ [log Γ(2jδᵢ + 1) + log S(2j·rᵢ)] — genuinely larger than the
  symmetric-root moments from the same factors.

Construction validates the structural invariants of a genuine moment
sequence: m₀ = 1, positivity, and log-convexity
(m_n² ≤ m_{n−1}·m_{n+1}, by the Cauchy–Schwarz inequality), within a
small float slack.

Sequences serialize to JSON and CSV with log-magnitudes rendered through
``repr``/``%.17g`` so a save/load round-trip is bit-exact.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

from .errors import DomainError, FamilyParseError, SequenceError
from .logdomain import SignedLogValue
from .quadrature import DEFAULT_REL_TOL, log_power_integral

__all__ = [
    "FamilySpec",
    "MomentSequence",
    "carleman_terms",
    "from_csv",
    "from_json",
    "generate_from_label",
    "generate_moments",
    "lognormal_moments",
    "moment_ratios",
    "parse_family",
    "to_csv",
    "to_json",
]

_SYMMETRIZATIONS = ("none", "symmetric-root", "symmetric-product")
_SUPPORTS = ("stieltjes", "hamburger-symmetric")

#: Float slack for the structural validation gates (m₀ = 1, log-convexity).
_VALIDATION_SLACK = 1e-6


def _format_number(x: float) -> str:
    return f"{x:g}"


def _default_label(factors: tuple[tuple[float, float], ...], symmetrization: str) -> str:
    head = {"none": "product", "symmetric-root": "symroot", "symmetric-product": "symprod"}[
        symmetrization
    ]
    body = ",".join(f"({_format_number(d)},{_format_number(r)})" for d, r in factors)
    return f"{head}[{body}]"


@dataclass(frozen=True)
class FamilySpec:
    """A product family: factors (δ, r), an optional symmetrization, a label."""

    factors: tuple[tuple[float, float], ...]
    symmetrization: str = "none"
    label: str = ""

    def __post_init__(self) -> None:
        factors = tuple((float(d), float(r)) for d, r in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise DomainError("FamilySpec requires at least one (delta, r) factor")
        for d, r in factors:
            if not (0.0 <= d <= 2.0):
                raise DomainError(f"delta must lie in [0, 2], got {d!r}")
            if not (0.0 <= r <= 1.0):
                raise DomainError(f"r must lie in [0, 1], got {r!r}")
        if self.symmetrization not in _SYMMETRIZATIONS:
            raise DomainError(
                f"symmetrization must be one of {_SYMMETRIZATIONS}, got {self.symmetrization!r}"
            )
        if not self.label:
            object.__setattr__(
                self, "label", _default_label(factors, self.symmetrization)
            )


@dataclass(frozen=True)
class MomentSequence:
    """A validated moment sequence in the log domain.

    ``log_moments[j]`` holds m_j on Stieltjes support and m_{2j} on
    hamburger-symmetric support (odd moments are implicitly zero there).
    ``label`` preserves provenance even for sequences without a parsed
    FamilySpec (e.g. the lognormal stock family or loaded files).
    """

    support: str
    n_max: int
    log_moments: tuple[SignedLogValue, ...]
    family: FamilySpec | None = None
    label: str | None = None
    _skip_validation: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.support not in _SUPPORTS:
            raise SequenceError(f"support must be one of {_SUPPORTS}, got {self.support!r}")
        entries = tuple(self.log_moments)
        object.__setattr__(self, "log_moments", entries)
        if self.n_max != len(entries) - 1:
            raise SequenceError(
                f"n_max = {self.n_max} inconsistent with {len(entries)} stored entries"
            )
        if self.n_max < 2:
            raise SequenceError(f"a moment sequence needs n_max >= 2, got {self.n_max}")
        if self._skip_validation:
            return
        logs = []
        for j, entry in enumerate(entries):
            if entry.sign != 1:
                raise SequenceError(
                    f"stored moment at index {j} must be positive, got sign {entry.sign}"
                )
            logs.append(entry.logmag)
        if abs(logs[0]) > _VALIDATION_SLACK:
            raise SequenceError(f"m_0 must equal 1, got log m_0 = {logs[0]!r}")
        for j in range(1, len(logs) - 1):
            gap = logs[j - 1] + logs[j + 1] - 2.0 * logs[j]
            if gap < -_VALIDATION_SLACK:
                raise SequenceError(
                    f"log-convexity violated at index {j} "
                    f"(log m_{j-1} + log m_{j+1} - 2 log m_{j} = {gap:.3e})"
                )

    def moment(self, k: int) -> SignedLogValue:
        """The k-th raw moment m_k (odd orders are zero on symmetric support)."""
        if k < 0:
            raise SequenceError(f"moment order must be >= 0, got {k}")
        if self.support == "stieltjes":
            if k > self.n_max:
                raise SequenceError(f"moment order {k} exceeds n_max = {self.n_max}")
            return self.log_moments[k]
        if k % 2 == 1:
            return SignedLogValue.zero()
        if k // 2 > self.n_max:
            raise SequenceError(f"moment order {k} exceeds stored range 2n_max = {2 * self.n_max}")
        return self.log_moments[k // 2]


# -- generation --------------------------------------------------------------


def _base_log_moment(factors: tuple[tuple[float, float], ...], n: float, rel_tol: float) -> float:
    total = 0.0
    for d, r in factors:
        total += math.lgamma(d * n + 1.0)
        p = n * r
        if p > 0.0:
            total += log_power_integral(p, rel_tol)
        # p == 0 contributes log S(0) = log 1 = 0 exactly
    return total


def generate_moments(
    family: FamilySpec, n_max: int, rel_tol: float = DEFAULT_REL_TOL
) -> MomentSequence:
    """Generate the moment sequence of a product family up to order n_max.

    Stieltjes mode stores m_0..m_{n_max}; the symmetrization modes store
    the even moments m_0, m_2, ..., m_{2·n_max}.
    """
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 2:
        raise DomainError(f"generate_moments requires an integer n_max >= 2, got {n_max!r}")
    if family.symmetrization == "symmetric-product":
        orders: list[float] = [2.0 * j for j in range(n_max + 1)]
        support = "hamburger-symmetric"
    else:
        orders = [float(n) for n in range(n_max + 1)]
        support = "stieltjes" if family.symmetrization == "none" else "hamburger-symmetric"
    logs = []
    for n in orders:
        try:
            logs.append(_base_log_moment(family.factors, n, rel_tol))
        except Exception as exc:
            raise type(exc)(
                f"while generating moment of order {_format_number(n)} "
                f"for {family.label!r}: {exc}"
            ) from exc
    entries = tuple(SignedLogValue.from_log(lg) for lg in logs)
    return MomentSequence(
        support=support,
        n_max=n_max,
        log_moments=entries,
        family=family,
        label=family.label,
    )


def lognormal_moments(n_max: int) -> MomentSequence:
    """Stock lognormal-type calibration family: m_n = e^{n²/2} (closed form)."""
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 2:
        raise DomainError(f"lognormal_moments requires an integer n_max >= 2, got {n_max!r}")
    entries = tuple(SignedLogValue.from_log(n * n / 2.0) for n in range(n_max + 1))
    return MomentSequence(
        support="stieltjes", n_max=n_max, log_moments=entries, family=None, label="lognormal"
    )


# -- family description grammar ---------------------------------------------

_FAMILY_HEADS = {"product": "none", "symroot": "symmetric-root", "symprod": "symmetric-product"}
_FAMILY_RE = re.compile(r"^(product|symroot|symprod)\[(.*)\]$")
_PAIR_RE = re.compile(r"\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)")


def parse_family(text: str) -> FamilySpec:
    """Parse a family description string.

    Grammar: ``exp`` | ``exp2`` | ``product[(δ,r),...]`` |
    ``symroot[(δ,r),...]`` | ``symprod[(δ,r),...]``.
    (``lognormal`` is a closed-form stock sequence, not a product family;
    see generate_from_label.)
    """
    text = text.strip()
    if text == "exp":
        return FamilySpec(factors=((1.0, 0.0),), symmetrization="none", label="exp")
    if text == "exp2":
        return FamilySpec(factors=((2.0, 0.0),), symmetrization="none", label="exp2")
    m = _FAMILY_RE.match(text)
    if m is None:
        raise FamilyParseError(
            f"unrecognized family {text!r}; expected exp, exp2, lognormal, "
            "product[(delta,r),...], symroot[...], or symprod[...]"
        )
    head, body = m.groups()
    pairs = []
    pos = 0
    while pos < len(body):
        pm = _PAIR_RE.match(body, pos)
        if pm is None:
            raise FamilyParseError(f"malformed factor list in {text!r} at position {pos}")
        try:
            pairs.append((float(pm.group(1)), float(pm.group(2))))
        except ValueError as exc:
            raise FamilyParseError(f"non-numeric factor in {text!r}: {exc}") from exc
        pos = pm.end()
        if pos < len(body):
            if body[pos] != ",":
                raise FamilyParseError(f"expected ',' between factors in {text!r} at {pos}")
            pos += 1
            if pos == len(body):
                raise FamilyParseError(f"trailing ',' in factor list of {text!r}")
    if not pairs:
        raise FamilyParseError(f"family {text!r} has an empty factor list")
    return FamilySpec(factors=tuple(pairs), symmetrization=_FAMILY_HEADS[head], label=text)


def generate_from_label(
    text: str, n_max: int, rel_tol: float = DEFAULT_REL_TOL
) -> MomentSequence:
    """Generate a sequence from a family description string (CLI entry point)."""
    if text.strip() == "lognormal":
        return lognormal_moments(n_max)
    return generate_moments(parse_family(text), n_max, rel_tol=rel_tol)


# -- derived sequences --------------------------------------------------------


def moment_ratios(seq: MomentSequence) -> list[float]:
    """Log of consecutive stored-moment ratios.

    Stieltjes: ln(m_{n+1}/m_n) for n = 0..n_max−1; hamburger-symmetric:
    ln(m_{2n+2}/m_{2n}).  Requires at least three stored entries.
    """
    if len(seq.log_moments) < 3:
        raise SequenceError("moment_ratios requires at least 3 stored entries")
    for j, entry in enumerate(seq.log_moments):
        if entry.sign != 1:
            raise SequenceError(f"moment_ratios: stored moment {j} is not positive")
    logs = [entry.logmag for entry in seq.log_moments]
    return [logs[n + 1] - logs[n] for n in range(len(logs) - 1)]


def carleman_terms(seq: MomentSequence) -> list[float]:
    """The series terms a_n = m_n^{−1/(2n)} (even-moment variant on
    hamburger-symmetric support: a_n = m_{2n}^{−1/(2n)}), for n = 1..n_max.

    These are O(1) magnitudes, returned as ordinary floats.
    """
    for j, entry in enumerate(seq.log_moments):
        if entry.sign != 1:
            raise SequenceError(f"carleman_terms: stored moment {j} is not positive")
    logs = [entry.logmag for entry in seq.log_moments]
    return [math.exp(-logs[n] / (2.0 * n)) for n in range(1, len(logs))]


# -- serialization ------------------------------------------------------------


def to_json(seq: MomentSequence) -> str:
    """Serialize to JSON; log-magnitudes are rendered via repr for bit-exactness."""
    doc = {
        "support": seq.support,
        "n_max": seq.n_max,
        "label": seq.label,
        "moments": [
            {"sign": entry.sign, "logmag": repr(entry.logmag)} for entry in seq.log_moments
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _rehydrate(support: object, n_max: object, label: object, rows: list[tuple[int, float]]):
    if not isinstance(support, str) or support not in _SUPPORTS:
        raise SequenceError(f"bad support field {support!r}")
    if not isinstance(n_max, int):
        raise SequenceError(f"bad n_max field {n_max!r}")
    entries = tuple(SignedLogValue.from_log(logmag, sign=sign) for sign, logmag in rows)
    family = None
    if isinstance(label, str) and label:
        try:
            family = parse_family(label)
        except (FamilyParseError, DomainError):
            family = None
    return MomentSequence(
        support=support,
        n_max=n_max,
        log_moments=entries,
        family=family,
        label=label if isinstance(label, str) and label else None,
    )


def from_json(text: str) -> MomentSequence:
    """Load a sequence from its JSON form; bit-exact inverse of to_json."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceError(f"invalid JSON moment file: {exc}") from exc
    if not isinstance(doc, dict) or "moments" not in doc:
        raise SequenceError("JSON moment file must be an object with a 'moments' array")
    rows: list[tuple[int, float]] = []
    for i, item in enumerate(doc["moments"]):
        try:
            rows.append((int(item["sign"]), float(item["logmag"])))
        except (TypeError, KeyError, ValueError) as exc:
            raise SequenceError(f"bad moment entry at index {i}: {exc}") from exc
    return _rehydrate(doc.get("support"), doc.get("n_max"), doc.get("label"), rows)


def to_csv(seq: MomentSequence) -> str:
    """Serialize to CSV (n, sign, logmag at 17 significant digits)."""
    lines = [
        f"# support: {seq.support}",
        f"# n_max: {seq.n_max}",
    ]
    if seq.label:
        lines.append(f"# label: {seq.label}")
    lines.append("n,sign,logmag")
    for j, entry in enumerate(seq.log_moments):
        lines.append(f"{j},{entry.sign},{entry.logmag:.17g}")
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> MomentSequence:
    """Load a sequence from its CSV form; bit-exact inverse of to_csv."""
    support: object = None
    n_max: object = None
    label: object = None
    rows: list[tuple[int, float]] = []
    expected_index = 0
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                key, value = key.strip(), value.strip()
                if key == "support":
                    support = value
                elif key == "n_max":
                    try:
                        n_max = int(value)
                    except ValueError as exc:
                        raise SequenceError(f"line {lineno}: bad n_max {value!r}") from exc
                elif key == "label":
                    label = value
            continue
        if line == "n,sign,logmag":
            saw_header = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise SequenceError(f"line {lineno}: expected 'n,sign,logmag', got {raw!r}")
        try:
            j, sign, logmag = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise SequenceError(f"line {lineno}: {exc}") from exc
        if j != expected_index:
            raise SequenceError(f"line {lineno}: expected index {expected_index}, got {j}")
        expected_index += 1
        rows.append((sign, logmag))
    if not saw_header or not rows:
        raise SequenceError("CSV moment file is missing its header or data rows")
    if n_max is None:
        n_max = len(rows) - 1
    return _rehydrate(support, n_max, label, rows)
