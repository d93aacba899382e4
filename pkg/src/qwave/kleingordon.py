"""Plane-wave solutions of the nonlinear q-Klein-Gordon equation.

The equation is

    (1/c^2) d2/dt2 F - d2/dx2 F + (q m^2 c^2 / hbar^2) F^(2q-1) = 0,

solved exactly by the q-exponential of the phase u = kx - wt (no hbar in
the phase; this module works in (k, omega) rather than (p, E)).  The
closed-form second derivatives both collapse onto q F^(2q-1):

    d2/dx2 F = -k^2 q [1+i(1-q)u]^((2q-1)/(1-q)),
    d2/dt2 F = -w^2 q [same],

so the exact residual is q F^(2q-1) (-w^2/c^2 + k^2 + m^2 c^2/hbar^2),
zero precisely on the dispersion relation w^2 = c^2 k^2 + m^2 c^4/hbar^2.
The equation never states that relation; it is what the residual engine
derives, exposed as dispersion_omega.

First order in (q-1), the expansions of d2x F, d2t F and q F^(2q-1) all
share one bracket q + 2i(q-1)u - (q-1)u^2/2, which is the entire
self-consistency mechanism: expansion_residual_kg combines the truncated
forms and vanishes identically on shell, while residual_kg with
family="approx" inserts the approximant into the full equation (powering
along its continuous logarithm) and leaves a genuine O((q-1)^2) remainder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import qcore
from .errors import BranchCutViolation, NonFiniteInput


def dispersion_omega(k: float, m: float, c: float = 1.0, hbar: float = 1.0) -> float:
    """Positive root of w^2 = c^2 k^2 + m^2 c^4 / hbar^2."""
    return math.hypot(c * k, m * c * c / hbar)


@dataclass(frozen=True)
class KGWave:
    """Relativistic wave parameters: wavenumber, frequency, mass, c, hbar."""

    k: float
    omega: float
    m: float
    c: float = 1.0
    hbar: float = 1.0
    dispersion: bool = False

    def __post_init__(self):
        for name in ("k", "omega", "m", "c", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise NonFiniteInput(f"{name} must be finite")
        if self.m < 0:
            raise ValueError(f"mass must be nonnegative, got {self.m!r}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c!r}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")
        if self.dispersion and self.omega != dispersion_omega(
            self.k, self.m, self.c, self.hbar
        ):
            raise ValueError("dispersion waves require omega = dispersion_omega(k)")

    @classmethod
    def on_shell(
        cls, k: float, m: float, c: float = 1.0, hbar: float = 1.0
    ) -> "KGWave":
        """Wave with the dispersion relation built in."""
        return cls(
            k=k,
            omega=dispersion_omega(k, m, c, hbar),
            m=m,
            c=c,
            hbar=hbar,
            dispersion=True,
        )


def phase(x: float, t: float, w: KGWave) -> float:
    """Dimensionless phase u = k x - omega t."""
    if not (math.isfinite(x) and math.isfinite(t)):
        raise NonFiniteInput(f"point must be finite, got {(x, t)!r}")
    return w.k * x - w.omega * t


def exact_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """Exact wave: q-exponential of iu."""
    return qcore.q_exp(1j * phase(x, t, w), q)


def exact_F_2qm1(x: float, t: float, w: KGWave, q: float) -> complex:
    """(2q-1)-th power of the exact wave, [1+i(1-q)u]**((2q-1)/(1-q))."""
    return qcore.q_pow(1j * phase(x, t, w), q, 2.0 * q - 1.0)


def exact_d2x_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """d2/dx2 of the exact wave."""
    return -(w.k * w.k) * q * exact_F_2qm1(x, t, w, q)


def exact_d2t_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """d2/dt2 of the exact wave."""
    return -(w.omega * w.omega) * q * exact_F_2qm1(x, t, w, q)


def approx_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """First-order wave e^{iu}[1 + (1-q)u^2/2]."""
    u = phase(x, t, w)
    return cmath.exp(1j * u) * (1.0 + (1.0 - q) * u * u / 2.0)


def _bracket(u: float, q: float) -> complex:
    # the single bracket shared by d2x_approx_F, d2t_approx_F, approx_qF2qm1
    return q + 2j * (q - 1.0) * u - (q - 1.0) * u * u / 2.0


def d2x_approx_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """Exact d2/dx2 of the first-order wave."""
    u = phase(x, t, w)
    return -(w.k * w.k) * cmath.exp(1j * u) * _bracket(u, q)


def d2t_approx_F(x: float, t: float, w: KGWave, q: float) -> complex:
    """Exact d2/dt2 of the first-order wave."""
    u = phase(x, t, w)
    return -(w.omega * w.omega) * cmath.exp(1j * u) * _bracket(u, q)


def approx_qF2qm1(x: float, t: float, w: KGWave, q: float) -> complex:
    """First-order expansion of q F^(2q-1): e^{iu} times the shared bracket."""
    u = phase(x, t, w)
    return cmath.exp(1j * u) * _bracket(u, q)


def kg_terms(
    x: float, t: float, w: KGWave, q: float, family: str = "exact"
) -> tuple[complex, complex, complex]:
    """The three equation addends ((1/c^2) d2t F, -d2x F, mass term).

    family "exact" uses the closed forms; family "approx" inserts the
    first-order wave, powering its amplitude along log1p so that
    F^(2q-1) never crosses the principal branch cut for |u| > pi.
    """
    mass_coef = (w.m * w.c / w.hbar) ** 2
    if family == "exact":
        g2 = exact_F_2qm1(x, t, w, q)
        term_tt = (1.0 / (w.c * w.c)) * (-(w.omega * w.omega) * q * g2)
        term_xx = (w.k * w.k) * q * g2
        term_mass = mass_coef * q * g2
        return term_tt, term_xx, term_mass
    if family == "approx":
        u = phase(x, t, w)
        amp = 1.0 + (1.0 - q) * u * u / 2.0
        if amp <= 0.0:
            raise BranchCutViolation(
                f"approximant amplitude 1 + (1-q) u^2/2 = {amp!r} is not positive"
            )
        power = cmath.exp(
            1j * (2.0 * q - 1.0) * u
            + (2.0 * q - 1.0) * math.log1p((1.0 - q) * u * u / 2.0)
        )
        term_tt = (1.0 / (w.c * w.c)) * d2t_approx_F(x, t, w, q)
        term_xx = -d2x_approx_F(x, t, w, q)
        term_mass = mass_coef * q * power
        return term_tt, term_xx, term_mass
    raise ValueError(f"family must be 'exact' or 'approx', got {family!r}")


def residual_kg(
    x: float, t: float, w: KGWave, q: float, family: str = "exact"
) -> complex:
    """Residual of the q-Klein-Gordon equation for a wave family.

    On shell the exact family cancels to round-off at any q; the approx
    family leaves an O((q-1)^2) remainder.  Off shell both grow with the
    dispersion violation, which is the sensitivity check in the tests.
    """
    term_tt, term_xx, term_mass = kg_terms(x, t, w, q, family)
    return term_tt + term_xx + term_mass


def expansion_terms_kg(
    x: float, t: float, w: KGWave, q: float
) -> tuple[complex, complex, complex]:
    """Addends of the truncated-pair residual, for relative-scale reporting."""
    term_tt = (1.0 / (w.c * w.c)) * d2t_approx_F(x, t, w, q)
    term_xx = -d2x_approx_F(x, t, w, q)
    term_mass = (w.m * w.c / w.hbar) ** 2 * approx_qF2qm1(x, t, w, q)
    return term_tt, term_xx, term_mass


def expansion_residual_kg(x: float, t: float, w: KGWave, q: float) -> complex:
    """Residual assembled from the truncated first-order forms.

    All three carry the same bracket, so on shell this cancels
    identically at every q: the first-order expansion is self-consistent.
    """
    term_tt, term_xx, term_mass = expansion_terms_kg(x, t, w, q)
    return term_tt + term_xx + term_mass
