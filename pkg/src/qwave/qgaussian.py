"""Time-dependent q-Gaussian packet and its first-order expansion.

The packet is

    psi(x,t) = {1 + (q-1)[a(t) x^2 + b(t) x + c(t)]}^(1/(1-q))

with coefficients (natural units, the convention m q alpha = 1 baked in)

    a(t) = m q / D,   b(t) = 1 / (beta D),   D = 1 + i hbar (q+1) t,

and c(t) the integral of its Riccati-type ODE with c(0) = 0.  The printed
closed form of c pairs 1/(q-1) against 1/(1-q) and cancels only
analytically; evaluated literally it destroys every significant digit by
q-1 = 1e-6.  Here the pair is folded into expm1:

    c = (L/(q+1)) * expm1(M)/M - kq e^M + kq / D,
    L = Log D,  M = (q-1) L / (q+1),  kq = 1/(4 m q beta^2),

which is exact at t = 0 (all three terms cancel, c(0) = 0 recovers
psi(0,0) = 1) and smooth through q = 1.  Substituting the ansatz into the
wave equation reduces it to the polynomial identity
-i hbar q G' = (hbar^2/2m)[(1 + (q-1)G) Gxx - q Gx^2], G = ax^2+bx+c, and
the coefficient ODEs this implies are solved by the forms above, so the
packet is an exact solution, not merely a first-order one.

Everything q-dependent is exposed three ways: exact (coeffs_exact,
exact_qgaussian), first-order closed forms (coeffs_first_order,
approx_qgaussian), and mechanically derived jets (wavefunction_jet),
which arbitrate between the other two in the tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import qcore, verify
from .errors import (
    BranchCutViolation,
    InvalidQ,
    NonFiniteInput,
    StepTooCoarse,
)
from .qcore import QJet, as_jet, jet_exp, jet_ln, log1p_over_w_jet, expm1_over_w_jet


@dataclass(frozen=True)
class GaussianParams:
    """Packet parameters: mass, width parameter beta, q, hbar."""

    m: float
    beta: float
    q: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "beta", "q", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise NonFiniteInput(f"{name} must be finite")
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m!r}")
        if self.beta == 0:
            raise ValueError("beta must be nonzero")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")
        # the coefficient formulas divide by q and by q+1
        if self.q == 0.0:
            raise InvalidQ("q = 0 breaks the c(t) formula (divides by q)")
        if self.q == -1.0:
            raise InvalidQ("q = -1 breaks the coefficient denominators (q+1)")


@dataclass(frozen=True)
class GaussianCoeffSet:
    """Exact coefficient values a(t), b(t), c(t) at one time."""

    a: complex
    b: complex
    c: complex


@dataclass(frozen=True)
class GaussianCoeffJet:
    """First-order splits a = a1 + (q-1) a2 etc. at one time."""

    a1: complex
    a2: complex
    b1: complex
    b2: complex
    c1: complex
    c2: complex


def _denominator(t: float, params: GaussianParams) -> complex:
    return 1.0 + 1j * params.hbar * (params.q + 1.0) * t


def coeffs_exact(t: float, params: GaussianParams) -> GaussianCoeffSet:
    """Exact a(t), b(t), c(t); c via the expm1 pairing described above."""
    if not math.isfinite(t):
        raise NonFiniteInput(f"t must be finite, got {t!r}")
    q = params.q
    D = _denominator(t, params)
    a = params.m * q / D
    b = 1.0 / (params.beta * D)
    kq = 1.0 / (4.0 * params.m * q * params.beta * params.beta)
    L = cmath.log(D)  # Re D = 1, so the principal log is the smooth branch
    M = (q - 1.0) * L / (q + 1.0)
    c = (L / (q + 1.0)) * qcore.stable_expm1_over_w(M) - kq * cmath.exp(M) + kq / D
    return GaussianCoeffSet(a=a, b=b, c=c)


def coeffs_first_order(t: float, params: GaussianParams) -> GaussianCoeffJet:
    """Closed-form first-order splits of the coefficients."""
    if not math.isfinite(t):
        raise NonFiniteInput(f"t must be finite, got {t!r}")
    m, beta, hbar = params.m, params.beta, params.hbar
    D0 = 1.0 + 2j * hbar * t
    L0 = cmath.log(D0)
    kappa = 1.0 / (4.0 * m * beta * beta)
    a1 = m / D0
    a2 = m * (1.0 + 1j * hbar * t) / (D0 * D0)
    b1 = 1.0 / (beta * D0)
    b2 = -1j * hbar * t / (beta * D0 * D0)
    c1 = L0 / 2.0 - 1j * hbar * t / (2.0 * m * beta * beta * D0)
    c2 = (
        kappa
        + 1j * hbar * t / (2.0 * D0)
        - kappa * (1.0 + 3j * hbar * t) / (D0 * D0)
        + L0 * L0 / 8.0
        - (1.0 + 2.0 * m * beta * beta) / (8.0 * m * beta * beta) * L0
    )
    return GaussianCoeffJet(a1=a1, a2=a2, b1=b1, b2=b2, c1=c1, c2=c2)


def _coeff_jets(t: float, params: GaussianParams) -> tuple[QJet, QJet, QJet]:
    """Coefficient jets in eps = q-1 derived mechanically from the formulas.

    This is the independent derivation: no copied first-order algebra, just
    jet arithmetic applied to a = mq/D, b = 1/(beta D) and the expm1 form
    of c.  The eps-linear factors of D and M are absorbed by the
    dedicated pole jets (log1p_over_w_jet, expm1_over_w_jet).
    """
    m, beta, hbar = params.m, params.beta, params.hbar
    # D = 1 + i hbar (2+eps) t
    D = QJet(1.0 + 2j * hbar * t, 1j * hbar * t)
    a = QJet(m, m) / D  # numerator m q = m (1 + eps)
    b = 1.0 / (beta * D)
    kappa = 1.0 / (4.0 * m * beta * beta)
    kq = as_jet(kappa) / QJet(1.0, 1.0)  # kappa / q
    mu = jet_ln(D) / QJet(2.0, 1.0)  # L / (q+1); M = eps * mu
    c = mu * expm1_over_w_jet(mu.v0) - kq * QJet(1.0, mu.v0) + kq / D
    return a, b, c


def wavefunction_jet(x: float, t: float, params: GaussianParams) -> QJet:
    """eps-jet of the packet at a point, from the coefficient jets alone."""
    if not (math.isfinite(x) and math.isfinite(t)):
        raise NonFiniteInput(f"point must be finite, got {(x, t)!r}")
    a, b, c = _coeff_jets(t, params)
    G = a * (x * x) + b * x + c
    # ln psi = -G * S(eps G) with S = log1p(w)/w
    return jet_exp(-(G * log1p_over_w_jet(G.v0)))


def _log_psi(x: float, t: float, params: GaussianParams, family: str) -> complex:
    """Continuous-branch log of the packet, the safe base for q-th powers."""
    q = params.q
    if family == "exact":
        cs = coeffs_exact(t, params)
        G = cs.a * x * x + cs.b * x + cs.c
        return -G * qcore.stable_log1p_over_w((q - 1.0) * G)
    if family == "approx":
        j = coeffs_first_order(t, params)
        G0 = j.a1 * x * x + j.b1 * x + j.c1
        G1 = j.a2 * x * x + j.b2 * x + j.c2
        corr = -(q - 1.0) * (G1 - 0.5 * G0 * G0)
        if corr == -1.0:
            raise BranchCutViolation("first-order packet vanishes here")
        return -G0 + qcore.complex_log1p(corr)
    raise ValueError(f"family must be 'exact' or 'approx', got {family!r}")


def exact_qgaussian(x: float, t: float, params: GaussianParams) -> complex:
    """Exact packet value; branch checks live in the q-power core."""
    if not (math.isfinite(x) and math.isfinite(t)):
        raise NonFiniteInput(f"point must be finite, got {(x, t)!r}")
    cs = coeffs_exact(t, params)
    G = cs.a * x * x + cs.b * x + cs.c
    # {1+(q-1)G}^{1/(1-q)} = e_q(-G): the sign convention of this packet
    # is opposite to the plane-wave phase argument
    return qcore.q_exp(-G, params.q)


def approx_qgaussian(
    x: float, t: float, params: GaussianParams, literal_typo: bool = False
) -> complex:
    """First-order packet assembled from the closed-form coefficient splits.

    {1 - (q-1)[a2 x^2 + b2 x + c2 - (a1 x^2 + b1 x + c1)^2 / 2]} e^{-(a1 x^2 + b1 x + c1)}

    literal_typo=True reproduces a transcription slip seen in print where
    the squared bracket reads a1 x^2 + b1 x c1 (a product swallowing the
    "+"): kept only so the discrepancy can be demonstrated, never used
    by anything else.  The default reading is the one certified against
    wavefunction_jet.
    """
    if not (math.isfinite(x) and math.isfinite(t)):
        raise NonFiniteInput(f"point must be finite, got {(x, t)!r}")
    j = coeffs_first_order(t, params)
    eps = params.q - 1.0
    G0 = j.a1 * x * x + j.b1 * x + j.c1
    G1 = j.a2 * x * x + j.b2 * x + j.c2
    squared = j.a1 * x * x + j.b1 * x * j.c1 if literal_typo else G0
    return (1.0 - eps * (G1 - 0.5 * squared * squared)) * cmath.exp(-G0)


def ratio_gaussian(x: float, t: float, params: GaussianParams) -> float:
    """Modulus of approx/exact, the packet's deviation diagnostic."""
    den = exact_qgaussian(x, t, params)
    if den == 0:
        raise ZeroDivisionError("exact packet vanishes at this point")
    return abs(approx_qgaussian(x, t, params) / den)


def gaussian_terms(
    x: float,
    t: float,
    params: GaussianParams,
    scheme: verify.FDScheme | None = None,
    family: str = "exact",
    fd_tol: float = 1e-6,
) -> tuple[complex, complex]:
    """FD-evaluated equation terms (i hbar dt psi^q, (hbar^2/2m) d2x psi).

    The packet has no closed-form derivative API, so both terms come from
    Richardson-extrapolated finite differences on the continuous-branch
    log representation.  Raises StepTooCoarse when the FD error estimate
    exceeds fd_tol relative to the larger term: a residual smaller than
    the differencing noise would otherwise masquerade as zero.
    """
    if family not in ("exact", "approx"):
        raise ValueError(f"family must be 'exact' or 'approx', got {family!r}")
    q, hbar, m = params.q, params.hbar, params.m

    def psi_q_of_t(tv: float) -> complex:
        return cmath.exp(q * _log_psi(x, tv, params, family))

    def psi_of_x(xv: float) -> complex:
        return cmath.exp(_log_psi(xv, t, params, family))

    scheme_t = scheme if scheme is not None else verify.default_scheme(deriv=1)
    scheme_x = scheme if scheme is not None else verify.default_scheme(deriv=2)
    dt_val, dt_err = verify.fd_derivative(psi_q_of_t, t, scheme_t, deriv=1)
    d2x_val, d2x_err = verify.fd_derivative(psi_of_x, x, scheme_x, deriv=2)
    term_t = 1j * hbar * dt_val
    term_x = (hbar * hbar / (2.0 * m)) * d2x_val
    scale = max(abs(term_t), abs(term_x))
    noise = hbar * dt_err + (hbar * hbar / (2.0 * m)) * d2x_err
    if scale > 0.0 and noise > fd_tol * scale:
        raise StepTooCoarse(
            f"FD error {noise:.3e} exceeds {fd_tol:.1e} of term scale {scale:.3e}"
        )
    return term_t, term_x


def residual_qgaussian(
    x: float,
    t: float,
    params: GaussianParams,
    scheme: verify.FDScheme | None = None,
    family: str = "exact",
    fd_tol: float = 1e-6,
) -> complex:
    """FD residual i hbar dt(psi^q) + (hbar^2/2m) d2x(psi) of a packet family."""
    term_t, term_x = gaussian_terms(x, t, params, scheme, family, fd_tol)
    return term_t + term_x
