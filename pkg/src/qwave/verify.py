"""Finite-difference oracles, Richardson extrapolation, and convergence fits.

Everything here is deliberately independent of the closed forms implemented
by the wave modules: central stencils differentiate black-box callables,
Richardson extrapolation sharpens them and prices the truncation error, and
least-squares fits of log(residual norm) against log(q - 1) certify the
order of a first-order approximant (slope ~2 means the linear coefficient
of the residual vanishes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateFit, StencilEvaluationFailed

# eps ladder for order fits: five points spanning exactly two decades.
DEFAULT_EPSILONS = (1e-2, 10 ** -2.5, 1e-3, 10 ** -3.5, 1e-4)


@dataclass(frozen=True)
class FDScheme:
    """Central finite-difference scheme: base step, stencil order, levels."""

    step: float
    order: int = 4
    richardson_levels: int = 1

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive and finite, got {self.step!r}")
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order!r}")
        if self.richardson_levels < 0:
            raise ValueError("richardson_levels must be >= 0")


def default_scheme(char_scale: float = 1.0, deriv: int = 1) -> FDScheme:
    """Reasonable scheme for a function varying on the given scale.

    Second derivatives need a much larger step than first ones: round-off
    grows like eps/h**2, so the 1e-5 step that is right for d/dx would lose
    ten digits on d2/dx2.
    """
    step = 1e-5 if deriv == 1 else 5e-3
    return FDScheme(step=step * char_scale, order=4, richardson_levels=1)


# Scheme for d/dq of expansion coefficients at q = 1; deep extrapolation
# because some coefficients have fast-growing higher q-derivatives.
Q_DERIV_SCHEME = FDScheme(step=1e-3, order=4, richardson_levels=2)


def _eval(fn: Callable[[float], complex], x: float) -> complex:
    try:
        y = complex(fn(x))
    except Exception as exc:
        raise StencilEvaluationFailed(f"stencil point {x!r} failed: {exc}") from exc
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise StencilEvaluationFailed(f"stencil point {x!r} returned non-finite {y!r}")
    return y


def _stencil(fn, at: float, h: float, deriv: int, order: int) -> complex:
    if deriv == 1:
        if order == 2:
            return (_eval(fn, at + h) - _eval(fn, at - h)) / (2.0 * h)
        return (
            -_eval(fn, at + 2 * h)
            + 8.0 * _eval(fn, at + h)
            - 8.0 * _eval(fn, at - h)
            + _eval(fn, at - 2 * h)
        ) / (12.0 * h)
    if deriv == 2:
        if order == 2:
            return (_eval(fn, at + h) - 2.0 * _eval(fn, at) + _eval(fn, at - h)) / (h * h)
        return (
            -_eval(fn, at + 2 * h)
            + 16.0 * _eval(fn, at + h)
            - 30.0 * _eval(fn, at)
            + 16.0 * _eval(fn, at - h)
            - _eval(fn, at - 2 * h)
        ) / (12.0 * h * h)
    raise ValueError(f"deriv must be 1 or 2, got {deriv!r}")


def fd_derivative(
    fn: Callable[[float], complex],
    at: float,
    scheme: FDScheme,
    deriv: int = 1,
) -> tuple[complex, float]:
    """Derivative of fn at a point, with an error estimate.

    Returns (value, err).  The value is the diagonal of a Richardson
    triangle built from step halvings; err is the magnitude of the last
    diagonal correction (for zero levels, the difference between the full
    and half step stencils).
    """
    h, p = scheme.step, scheme.order
    levels = scheme.richardson_levels
    if levels == 0:
        d0 = _stencil(fn, at, h, deriv, p)
        d1 = _stencil(fn, at, h / 2.0, deriv, p)
        return d0, abs(d1 - d0)
    rows = [[_stencil(fn, at, h, deriv, p)]]
    for j in range(1, levels + 1):
        row = [_stencil(fn, at, h / 2.0 ** j, deriv, p)]
        for k in range(1, j + 1):
            # central stencils have even error series: h^p, h^(p+2), ...
            fac = 2.0 ** (p + 2 * (k - 1))
            row.append(row[k - 1] + (row[k - 1] - rows[j - 1][k - 1]) / (fac - 1.0))
        rows.append(row)
    value = rows[levels][levels]
    err = abs(value - rows[levels - 1][levels - 1])
    return value, err


def jet_from_fd(fn_of_q: Callable[[float], complex], scheme: FDScheme = Q_DERIV_SCHEME):
    """First-order jet (f(1), df/dq at 1) measured by finite differences."""
    from .qcore import QJet

    slope, _ = fd_derivative(fn_of_q, 1.0, scheme, deriv=1)
    return QJet(complex(fn_of_q(1.0)), slope)


@dataclass(frozen=True)
class OrderFit:
    """Least-squares fit of log(residual norm) against log(eps)."""

    epsilons: tuple[float, ...]
    residual_norms: tuple[float, ...]
    slope: float
    r_squared: float


def order_of_convergence(
    residual_norm_fn: Callable[[float], float],
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
) -> OrderFit:
    """Fit the convergence order of a residual norm as eps -> 0.

    Requires at least three strictly decreasing positive epsilons spanning
    two decades or more.  An identically zero residual is reported with an
    infinite slope; mixed zero and nonzero norms raise DegenerateFit.
    """
    eps = tuple(float(e) for e in epsilons)
    if len(eps) < 3:
        raise ValueError("need at least 3 epsilons for an order fit")
    if any(e <= 0 for e in eps) or any(a <= b for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be positive and strictly decreasing")
    if eps[0] / eps[-1] < 100.0 * (1.0 - 1e-12):
        raise ValueError("epsilons must span at least two decades")
    norms = tuple(float(residual_norm_fn(e)) for e in eps)
    if any(n < 0 or not math.isfinite(n) for n in norms):
        raise DegenerateFit(f"residual norms must be finite and >= 0, got {norms!r}")
    if all(n == 0.0 for n in norms):
        return OrderFit(eps, norms, float("inf"), 1.0)
    if any(n == 0.0 for n in norms):
        raise DegenerateFit(f"mixed zero and nonzero residual norms: {norms!r}")
    logx = np.log(eps)
    logy = np.log(norms)
    slope, intercept = np.polyfit(logx, logy, 1)
    pred = slope * logx + intercept
    ss_tot = float(np.sum((logy - logy.mean()) ** 2))
    ss_res = float(np.sum((logy - pred) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return OrderFit(eps, norms, float(slope), float(r2))


@dataclass(frozen=True)
class ResidualReport:
    """Max-norm summary of a residual over a rectangular (x, t) grid."""

    max_abs: float
    max_rel: float
    argmax_point: tuple[float, float]
    grid_shape: tuple[int, int]


def grid_residual(
    residual_fn: Callable[[float, float], tuple[complex, float]],
    xs: Sequence[float],
    ts: Sequence[float],
) -> ResidualReport:
    """Evaluate residual_fn(x, t) -> (residual, term_scale) over a grid.

    max_rel is max |residual| divided by the largest term magnitude seen
    anywhere on the grid, so it is meaningful for equations whose natural
    scale the caller reports alongside each residual.
    """
    max_abs = 0.0
    scale = 0.0
    argmax = (float(xs[0]), float(ts[0]))
    for x in xs:
        for t in ts:
            r, s = residual_fn(x, t)
            mag = abs(r)
            if mag > max_abs:
                max_abs = mag
                argmax = (float(x), float(t))
            if s > scale:
                scale = s
    if max_abs == 0.0:
        max_rel = 0.0
    elif scale == 0.0:
        max_rel = float("inf")
    else:
        max_rel = max_abs / scale
    return ResidualReport(max_abs, max_rel, argmax, (len(xs), len(ts)))
