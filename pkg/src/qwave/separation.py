"""Separated product solutions psi(x,t) = f(t) g(x) of the q-Schrodinger equation.

Because (fg)^q = f^q g^q, the product ansatz splits the nonlinear equation
into a pair sharing one separation constant lam:

    i hbar d/dt (f^q) = lam f,
    -(hbar^2 / 2m) d2/dx2 (g) = lam g^q.

The exact factors are

    f(t) = [1 + i (1-q) E t / (hbar q)]^(1/(q-1)),
    g(x) = [1 + i (1-q) p x / (hbar sqrt(2(q+1)))]^(2/(1-q)),

self-consistent with lam = E = p^2/(2m).  Both satisfy closed-form
derivative identities, d/dt (f^q) = -(iE/hbar) f and
d2/dx2 (g) = -(p^2/hbar^2) g^q, so the exact residuals reduce to
(E - lam) f and (p^2/2m - lam) g^q with no branch bookkeeping at all.

As in the plane-wave module, residual_f / residual_g insert a whole wave
family into its governing equation (the approximants leave genuine
O((q-1)^2) remainders), while expansion_residual_f / expansion_residual_g
combine the truncated first-order forms, whose brackets coincide and
cancel identically at the eigenvalue.

The factor f is undefined at q = 0 (its formula divides by q) and g needs
q + 1 > 0 (the formula divides by sqrt(2(q+1))); both are rejected with
InvalidQ rather than left to raise arithmetic errors mid-formula.
"""

from __future__ import annotations

import cmath
import math

from .errors import BranchCutViolation, InvalidQ, NonFiniteInput
from .qcore import stable_log1p_over_w


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(f"{name} must be finite, got {value!r}")


def _check_q_for_f(q: float) -> None:
    if q == 0.0:
        raise InvalidQ("f(t) is undefined at q = 0 (formula divides by q)")


def _check_q_for_g(q: float) -> None:
    if q <= -1.0:
        raise InvalidQ(f"g(x) needs q + 1 > 0, got q = {q!r}")


# -- time factor --------------------------------------------------------


def exact_f(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """Exact time factor; q -> 1 limit is e^{-iEt/hbar}."""
    _require_finite(t=t, E=E, q=q, hbar=hbar)
    _check_q_for_f(q)
    z = -1j * E * t / (hbar * q)
    # bracket argument i(1-q)Et/(hbar q) = (q-1) z; exponent 1/(q-1) makes
    # ln f = z * log1p(w)/w, stable down to q-1 ~ 1e-12
    w = (q - 1.0) * z
    return cmath.exp(z * stable_log1p_over_w(w))


def exact_f_q(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """q-th power of the exact time factor."""
    _require_finite(t=t, E=E, q=q, hbar=hbar)
    _check_q_for_f(q)
    z = -1j * E * t / (hbar * q)
    w = (q - 1.0) * z
    return cmath.exp(q * z * stable_log1p_over_w(w))


def exact_dt_f_q(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """d/dt of f^q, which collapses to -(iE/hbar) f for every q."""
    return -(1j * E / hbar) * exact_f(t, E, q, hbar)


def approx_f(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """First-order time factor e^{-i tau}[1 + (q-1)(i tau + tau^2/2)], tau = Et/hbar."""
    _require_finite(t=t, E=E, q=q, hbar=hbar)
    tau = E * t / hbar
    return cmath.exp(-1j * tau) * (1.0 + (q - 1.0) * (1j * tau + tau * tau / 2.0))


def approx_f_q(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """First-order expansion of f^q: the i*tau term cancels, leaving tau^2/2."""
    _require_finite(t=t, E=E, q=q, hbar=hbar)
    tau = E * t / hbar
    return cmath.exp(-1j * tau) * (1.0 + (q - 1.0) * tau * tau / 2.0)


def dt_approx_f_q(t: float, E: float, q: float, hbar: float = 1.0) -> complex:
    """Exact d/dt of the first-order f^q."""
    _require_finite(t=t, E=E, q=q, hbar=hbar)
    tau = E * t / hbar
    bracket = 1.0 + (q - 1.0) * tau * tau / 2.0 + (q - 1.0) * 1j * tau
    return -(1j * E / hbar) * cmath.exp(-1j * tau) * bracket


def residual_f(
    t: float,
    E: float,
    q: float,
    lam: float | None = None,
    hbar: float = 1.0,
    family: str = "approx",
) -> complex:
    """Residual i hbar d/dt(f^q) - lam f of a time-factor family.

    lam defaults to E, the eigenvalue of the exact factor.  The exact
    family then cancels identically; the approx family treats the
    first-order factor as a bona fide candidate and leaves an O((q-1)^2)
    remainder, powering 1 + (q-1)A along its continuous logarithm.
    """
    if lam is None:
        lam = E
    _require_finite(lam=lam)
    if family == "exact":
        return 1j * hbar * exact_dt_f_q(t, E, q, hbar) - lam * exact_f(t, E, q, hbar)
    if family == "approx":
        _require_finite(t=t, E=E, q=q, hbar=hbar)
        tau = E * t / hbar
        eps = q - 1.0
        amp = 1.0 + eps * (1j * tau + tau * tau / 2.0)
        amp_dot = eps * (1j * E / hbar + E * E * t / (hbar * hbar))
        if amp == 0.0:
            raise BranchCutViolation("first-order time factor vanishes here")
        # i hbar d/dt [e^{-iq tau} amp^q] assembled in closed form
        term_t = (
            q
            * cmath.exp(-1j * q * tau)
            * cmath.exp((q - 1.0) * cmath.log(amp))
            * (E * amp + 1j * hbar * amp_dot)
        )
        return term_t - lam * approx_f(t, E, q, hbar)
    raise ValueError(f"family must be 'exact' or 'approx', got {family!r}")


def expansion_residual_f(
    t: float, E: float, q: float, lam: float | None = None, hbar: float = 1.0
) -> complex:
    """Residual from the truncated pair (approx_f, dt_approx_f_q).

    At lam = E the two first-order brackets are the same polynomial in
    tau, so this vanishes identically, not merely to O((q-1)^2).
    """
    if lam is None:
        lam = E
    _require_finite(lam=lam)
    return 1j * hbar * dt_approx_f_q(t, E, q, hbar) - lam * approx_f(t, E, q, hbar)


# -- space factor -------------------------------------------------------


def exact_g(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """Exact space factor; q -> 1 limit is e^{ipx/hbar}."""
    _require_finite(x=x, p=p, q=q, hbar=hbar)
    _check_q_for_g(q)
    mu = p / (hbar * math.sqrt(2.0 * (q + 1.0)))
    z = 2j * mu * x
    # bracket argument i(1-q) mu x = (1-q) z / 2; exponent 2/(1-q)
    w = 1j * (1.0 - q) * mu * x
    return cmath.exp(z * stable_log1p_over_w(w))


def exact_g_q(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """q-th power of the exact space factor."""
    _require_finite(x=x, p=p, q=q, hbar=hbar)
    _check_q_for_g(q)
    mu = p / (hbar * math.sqrt(2.0 * (q + 1.0)))
    z = 2j * mu * x
    w = 1j * (1.0 - q) * mu * x
    return cmath.exp(q * z * stable_log1p_over_w(w))


def exact_d2x_g(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """d2/dx2 of g, which collapses to -(p^2/hbar^2) g^q for every q."""
    return -(p * p / (hbar * hbar)) * exact_g_q(x, p, q, hbar)


def approx_g(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """First-order space factor e^{i xi}[1 + (1-q)/4 (i xi + xi^2)], xi = px/hbar."""
    _require_finite(x=x, p=p, q=q, hbar=hbar)
    xi = p * x / hbar
    return cmath.exp(1j * xi) * (1.0 + (1.0 - q) / 4.0 * (1j * xi + xi * xi))


def approx_g_q(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """First-order expansion of g^q: e^{i xi}[1 + 3(q-1)/4 i xi - (q-1)/4 xi^2]."""
    _require_finite(x=x, p=p, q=q, hbar=hbar)
    xi = p * x / hbar
    bracket = 1.0 + 3.0 * (q - 1.0) / 4.0 * 1j * xi - (q - 1.0) / 4.0 * xi * xi
    return cmath.exp(1j * xi) * bracket


def d2x_approx_g(x: float, p: float, q: float, hbar: float = 1.0) -> complex:
    """Exact d2/dx2 of the first-order space factor."""
    _require_finite(x=x, p=p, q=q, hbar=hbar)
    xi = p * x / hbar
    bracket = 1.0 - 3.0 * (1.0 - q) / 4.0 * 1j * xi + (1.0 - q) / 4.0 * xi * xi
    return -(p * p / (hbar * hbar)) * cmath.exp(1j * xi) * bracket


def residual_g(
    x: float,
    p: float,
    lam: float | None,
    q: float,
    hbar: float = 1.0,
    m: float = 1.0,
    family: str = "approx",
) -> complex:
    """Residual -(hbar^2/2m) d2/dx2(g) - lam g^q of a space-factor family.

    lam defaults to p^2/(2m).  Families as in residual_f.
    """
    if lam is None:
        lam = p * p / (2.0 * m)
    _require_finite(lam=lam, m=m)
    if family == "exact":
        term_x = -(hbar * hbar / (2.0 * m)) * exact_d2x_g(x, p, q, hbar)
        return term_x - lam * exact_g_q(x, p, q, hbar)
    if family == "approx":
        _require_finite(x=x, p=p, q=q, hbar=hbar)
        xi = p * x / hbar
        amp = 1.0 + (1.0 - q) / 4.0 * (1j * xi + xi * xi)
        if amp == 0.0:
            raise BranchCutViolation("first-order space factor vanishes here")
        # unwrapped q-th power of the approximant e^{i xi} amp
        gq = cmath.exp(1j * q * xi + q * cmath.log(amp))
        term_x = -(hbar * hbar / (2.0 * m)) * d2x_approx_g(x, p, q, hbar)
        return term_x - lam * gq
    raise ValueError(f"family must be 'exact' or 'approx', got {family!r}")


def expansion_residual_g(
    x: float,
    p: float,
    lam: float | None,
    q: float,
    hbar: float = 1.0,
    m: float = 1.0,
) -> complex:
    """Residual from the truncated pair (d2x_approx_g, approx_g_q).

    Identically zero at lam = p^2/(2m): the brackets of the two truncated
    forms are equal term by term.
    """
    if lam is None:
        lam = p * p / (2.0 * m)
    _require_finite(lam=lam, m=m)
    term_x = -(hbar * hbar / (2.0 * m)) * d2x_approx_g(x, p, q, hbar)
    return term_x - lam * approx_g_q(x, p, q, hbar)
