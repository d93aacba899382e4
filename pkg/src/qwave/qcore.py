"""Stable q-deformed exponentials and first-order jets in eps = q - 1.

The q-exponential is e_q(z) = [1 + (1-q) z]**(1/(1-q)) on the principal
branch, with e_1(z) = exp(z).  Writing w = (1-q) z, the exponent is

    log1p(w) / (1-q) = z * S(w),        S(w) = log1p(w) / w,

so the 1/(1-q) pole never appears explicitly and q - 1 as small as 1e-12
costs no precision.  S is evaluated by an alternating series for |w| below
SERIES_RADIUS and through a compensated complex log1p otherwise; the two
paths agree to ~1e-15 across the switch.

Jets are truncated first-order Taylor pairs (value at q = 1, d/dq at q = 1)
with ring arithmetic.  They mechanize the first-order expansions the wave
modules need and serve as oracles for the closed forms implemented there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchCutViolation, DivisionByZeroJet, NonFiniteInput

# Below this |w| the S and E series are exact to double precision with the
# term counts used; above it the compensated direct forms are.
SERIES_RADIUS = 1e-4


def _as_finite_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteInput(f"{name} must be finite, got {value!r}")
    return z


def _require_off_cut(v: complex, context: str) -> None:
    # Principal branch cut: the closed negative real axis, zero included.
    if v.imag == 0.0 and v.real <= 0.0:
        raise BranchCutViolation(f"{context}: {v!r} lies on the branch cut")


def complex_log1p(w: complex) -> complex:
    """log(1 + w) on the principal branch, accurate for small |w|.

    Uses the compensated form log(u) * w / (u - 1) with u = 1 + w, which
    evaluates the logarithm at the rounded point and rescales by the exact
    argument, keeping full relative precision down to |w| ~ eps.
    """
    u = 1.0 + w
    if u == 1.0 + 0.0j:
        return complex(w)
    d = u - 1.0
    if d == w:
        return cmath.log(u)
    return cmath.log(u) * (w / d)


def complex_expm1(z: complex) -> complex:
    """exp(z) - 1 without cancellation for small |z|."""
    re = math.expm1(z.real) * math.cos(z.imag) - 2.0 * math.sin(0.5 * z.imag) ** 2
    im = math.exp(z.real) * math.sin(z.imag)
    return complex(re, im)


def _log1p_over_w_series(w: complex) -> complex:
    # S(w) = sum_{j=0..7} (-w)^j / (j+1); |w| < 1e-4 makes the tail < 1e-33.
    acc = 1.0 / 8.0
    for k in range(7, 0, -1):
        acc = 1.0 / k - w * acc
    return acc


_INV_FACTORIALS = (1.0, 1 / 2.0, 1 / 6.0, 1 / 24.0, 1 / 120.0, 1 / 720.0, 1 / 5040.0, 1 / 40320.0)


def _expm1_over_w_series(w: complex) -> complex:
    # E(w) = sum_{j=0..7} w^j / (j+1)!
    acc = _INV_FACTORIALS[-1]
    for coef in reversed(_INV_FACTORIALS[:-1]):
        acc = coef + w * acc
    return acc


def stable_log1p_over_w(w) -> complex:
    """log1p(w)/w with the removable singularity at w = 0 filled with 1."""
    w = _as_finite_complex(w, "w")
    _require_off_cut(1.0 + w, "log1p(w)/w")
    if w == 0:
        return 1.0 + 0.0j
    if abs(w) < SERIES_RADIUS:
        return _log1p_over_w_series(w)
    return complex_log1p(w) / w


def stable_expm1_over_w(w) -> complex:
    """expm1(w)/w with the removable singularity at w = 0 filled with 1."""
    w = _as_finite_complex(w, "w")
    if w == 0:
        return 1.0 + 0.0j
    if abs(w) < SERIES_RADIUS:
        return _expm1_over_w_series(w)
    return complex_expm1(w) / w


def q_pow(z, q: float, scale: float = 1.0) -> complex:
    """[1 + (1-q) z]**(scale/(1-q)) on the principal branch.

    The exponent is computed as scale * z * S((1-q) z), so any power whose
    exponent numerator is known in closed form (1, q, 2q-1, ...) shares one
    cancellation-free code path.  q = 1 returns exp(scale * z).
    """
    z = _as_finite_complex(z, "z")
    if not math.isfinite(q):
        raise NonFiniteInput(f"q must be finite, got {q!r}")
    if q == 1.0:
        return cmath.exp(scale * z)
    w = (1.0 - q) * z
    _require_off_cut(1.0 + w, "q_pow base")
    if w == 0:
        return cmath.exp(scale * z)
    if abs(w) < SERIES_RADIUS:
        s = _log1p_over_w_series(w)
    else:
        s = complex_log1p(w) / w
    return cmath.exp(scale * z * s)


def q_exp(z, q: float) -> complex:
    """q-deformed exponential [1 + (1-q) z]**(1/(1-q)); exp(z) at q = 1."""
    return q_pow(z, q, 1.0)


@dataclass(frozen=True)
class QJet:
    """First-order Taylor pair (value at q = 1, d/dq at q = 1)."""

    v0: complex
    v1: complex

    def __post_init__(self):
        object.__setattr__(self, "v0", _as_finite_complex(self.v0, "v0"))
        object.__setattr__(self, "v1", _as_finite_complex(self.v1, "v1"))

    def __add__(self, other) -> "QJet":
        o = as_jet(other)
        return QJet(self.v0 + o.v0, self.v1 + o.v1)

    __radd__ = __add__

    def __neg__(self) -> "QJet":
        return QJet(-self.v0, -self.v1)

    def __sub__(self, other) -> "QJet":
        o = as_jet(other)
        return QJet(self.v0 - o.v0, self.v1 - o.v1)

    def __rsub__(self, other) -> "QJet":
        return as_jet(other) - self

    def __mul__(self, other) -> "QJet":
        o = as_jet(other)
        return QJet(self.v0 * o.v0, self.v0 * o.v1 + self.v1 * o.v0)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QJet":
        o = as_jet(other)
        if o.v0 == 0:
            raise DivisionByZeroJet("jet division by a jet with zero value part")
        v0 = self.v0 / o.v0
        return QJet(v0, (self.v1 - v0 * o.v1) / o.v0)

    def __rtruediv__(self, other) -> "QJet":
        return as_jet(other) / self


def as_jet(value) -> QJet:
    """Coerce a scalar to a constant jet; pass jets through."""
    if isinstance(value, QJet):
        return value
    return QJet(complex(value), 0.0)


def jet_exp(a: QJet) -> QJet:
    e = cmath.exp(a.v0)
    return QJet(e, a.v1 * e)


def jet_ln(a: QJet) -> QJet:
    """Principal-branch logarithm of a jet."""
    if a.v0 == 0:
        raise DivisionByZeroJet("jet logarithm of a jet with zero value part")
    _require_off_cut(a.v0, "jet_ln")
    return QJet(cmath.log(a.v0), a.v1 / a.v0)


def jet_pow_linear(a: QJet, alpha: float, beta: float) -> QJet:
    """a**(alpha + beta*(q-1)) for an exponent affine in q."""
    return jet_exp(QJet(alpha, beta) * jet_ln(a))


def q_exp_jet(z) -> QJet:
    """Jet of the q-exponential at fixed argument: (exp(z), (z^2/2) exp(z))."""
    z = _as_finite_complex(z, "z")
    e = cmath.exp(z)
    return QJet(e, 0.5 * z * z * e)


def log1p_over_w_jet(lead) -> QJet:
    """Jet of S(w) = log1p(w)/w along a path w(q) = (q-1)*lead + O((q-1)^2).

    S(0) = 1 and S'(0) = -1/2, so the chain rule gives (1, -lead/2).  This is
    how the wave modules absorb the 1/(q-1) poles of their exponents into
    plain jet arithmetic.
    """
    return QJet(1.0, -0.5 * complex(lead))


def expm1_over_w_jet(lead) -> QJet:
    """Jet of E(w) = expm1(w)/w along w(q) = (q-1)*lead + O((q-1)^2)."""
    return QJet(1.0, 0.5 * complex(lead))
