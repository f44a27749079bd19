"""Radial weight functions and their admissibility checks.

A weight ``psi`` defines the measure ``exp(-psi(s)) ds`` on ``[0, inf)``.
The space machinery downstream (moments, kernels) is only meaningful when
``psi`` grows at least linearly and is smooth enough; this module holds the
weight together with its first three derivatives and verifies those
hypotheses numerically on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NonFiniteValue

__all__ = [
    "WeightFunction",
    "AdmissibilityReport",
    "check_admissible",
    "default_grid",
    "linear_weight",
    "linear_quadratic_weight",
    "polynomial_weight",
    "resolve_weight",
    "BUILTIN_WEIGHTS",
]

# Grid and tolerance defaults for admissibility checks.
DEFAULT_GRID_POINTS = 64
DEFAULT_GRID_LO = 1e-2
DEFAULT_GRID_HI = 1e3
DEFAULT_SIGN_TOL = 1e-12
DEFAULT_RATIO_BOUND = 10.0

RealFunc = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class WeightFunction:
    """A radial weight with first, second and third derivatives.

    All callables must accept numpy arrays of nonnegative reals and return
    arrays of the same shape.  Instances are immutable and safe to share.
    """

    psi: RealFunc
    d1: RealFunc
    d2: RealFunc
    d3: RealFunc
    name: str = "custom"

    @classmethod
    def from_psi(cls, psi: RealFunc, name: str = "custom") -> "WeightFunction":
        """Build a weight from ``psi`` alone, deriving d1..d3 by central
        finite differences.

        The step is ``max(h0, h0*y)`` with h0 = 1e-5 for the first
        derivative; second and third derivatives use 1e-4 and 1e-3.  The
        larger steps keep the cancellation noise (~ eps*|psi|/h**order)
        below the 1e-6 agreement target that closed-form derivatives are
        held to.
        """

        def _h(y: np.ndarray, h0: float) -> np.ndarray:
            return np.maximum(h0, h0 * np.asarray(y, dtype=float))

        def d1(y):
            y = np.asarray(y, dtype=float)
            h = _h(y, 1e-5)
            return (psi(y + h) - psi(y - h)) / (2 * h)

        def d2(y):
            y = np.asarray(y, dtype=float)
            h = _h(y, 1e-4)
            return (psi(y + h) - 2 * psi(y) + psi(y - h)) / h**2

        def d3(y):
            y = np.asarray(y, dtype=float)
            h = _h(y, 1e-3)
            return (psi(y + 2 * h) - 2 * psi(y + h) + 2 * psi(y - h) - psi(y - 2 * h)) / (
                2 * h**3
            )

        return cls(psi=psi, d1=d1, d2=d2, d3=d3, name=name)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the sampled growth/smoothness hypotheses.

    ``smoothness_ok`` is a finite-grid proxy for an asymptotic bound: the
    tail-half maximum of ``phi''(y) / (y**-0.5 * phi'(y)**(1+l))`` with
    ``phi(y) = y*psi'(y)`` is compared against ``ratio_bound``.  It can
    falsify or heuristically support the hypothesis, never prove it.
    """

    growth_ok: bool
    smoothness_ok: bool
    l_used: float
    ratio_bound: float
    witness: dict = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        return self.growth_ok and self.smoothness_ok


def default_grid() -> np.ndarray:
    """64 log-spaced sample points in [1e-2, 1e3]."""
    return np.geomspace(DEFAULT_GRID_LO, DEFAULT_GRID_HI, DEFAULT_GRID_POINTS)


def _eval_finite(func: RealFunc, grid: np.ndarray, label: str, name: str) -> np.ndarray:
    vals = np.asarray(func(grid), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = grid[~np.isfinite(vals)][0]
        raise NonFiniteValue(f"weight {name!r}: {label} is not finite at y={bad!r}")
    return vals


def check_admissible(
    w: WeightFunction,
    grid: np.ndarray | None = None,
    l: float = 0.0,
    tol: float = DEFAULT_SIGN_TOL,
    ratio_bound: float = DEFAULT_RATIO_BOUND,
) -> AdmissibilityReport:
    """Verify the growth and smoothness hypotheses of ``w`` on ``grid``.

    Growth requires ``psi' > 0``, ``psi'' >= -tol`` and ``psi''' >= -tol``
    at every grid point.  Smoothness samples the ratio
    ``phi''/(y**-0.5 * phi'**(1+l))`` with ``phi = y*psi'`` over the upper
    half of the grid and requires it to stay below ``ratio_bound``.
    """
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    if np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise ValueError("grid must be strictly increasing and positive")
    if not l < 0.5:
        raise ValueError(f"exponent l must be < 1/2, got {l}")

    d1 = _eval_finite(w.d1, grid, "psi'", w.name)
    d2 = _eval_finite(w.d2, grid, "psi''", w.name)
    d3 = _eval_finite(w.d3, grid, "psi'''", w.name)
    _eval_finite(w.psi, grid, "psi", w.name)

    growth_ok = bool(np.min(d1) > 0 and np.min(d2) >= -tol and np.min(d3) >= -tol)

    # phi(y) = y*psi'(y) so phi' = psi' + y*psi'' and phi'' = 2*psi'' + y*psi'''.
    phi1 = d1 + grid * d2
    phi2 = 2 * d2 + grid * d3
    tail = grid.size // 2
    y_t, p1_t, p2_t = grid[tail:], phi1[tail:], phi2[tail:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(p2_t) / (y_t**-0.5 * np.maximum(p1_t, np.finfo(float).tiny) ** (1.0 + l))
    smoothness_ok = bool(np.all(np.isfinite(ratio)) and np.max(ratio) <= ratio_bound)

    i1, i2, i3 = int(np.argmin(d1)), int(np.argmin(d2)), int(np.argmin(d3))
    ir = int(np.argmax(ratio))
    witness = {
        "min_d1": (float(grid[i1]), float(d1[i1])),
        "min_d2": (float(grid[i2]), float(d2[i2])),
        "min_d3": (float(grid[i3]), float(d3[i3])),
        "max_tail_ratio": (float(y_t[ir]), float(ratio[ir])),
    }
    return AdmissibilityReport(
        growth_ok=growth_ok,
        smoothness_ok=smoothness_ok,
        l_used=l,
        ratio_bound=ratio_bound,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# Built-in weights
# ---------------------------------------------------------------------------


def polynomial_weight(coeffs, name: str | None = None) -> WeightFunction:
    """Weight ``psi(y) = sum coeffs[k] * y**k`` with closed-form derivatives.

    ``coeffs`` are ascending-power real coefficients.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coeffs must be a nonempty 1-D sequence")

    def deriv(c: np.ndarray) -> np.ndarray:
        if c.size <= 1:
            return np.zeros(1)
        return c[1:] * np.arange(1, c.size)

    c1, c2 = deriv(c), deriv(deriv(c))
    c3 = deriv(deriv(deriv(c)))

    def evalp(cs: np.ndarray) -> RealFunc:
        def f(y):
            y = np.asarray(y, dtype=float)
            out = np.zeros_like(y)
            for a in cs[::-1]:
                out = out * y + a
            return out

        return f

    if name is None:
        name = "poly:" + ",".join(repr(float(a)) for a in c)
    return WeightFunction(psi=evalp(c), d1=evalp(c1), d2=evalp(c2), d3=evalp(c3), name=name)


def linear_weight(a: float = 1.0) -> WeightFunction:
    """psi(y) = a*y with a > 0 (a=1 is the classical case, moments r!)."""
    if not a > 0:
        raise ValueError(f"linear weight needs a > 0, got {a}")
    return polynomial_weight([0.0, a], name="linear" if a == 1.0 else f"linear:{a!r}")


def linear_quadratic_weight() -> WeightFunction:
    """psi(y) = y + y**2."""
    return polynomial_weight([0.0, 1.0, 1.0], name="linear-quadratic")


BUILTIN_WEIGHTS = {
    "linear": linear_weight,
    "linear-quadratic": linear_quadratic_weight,
}


def resolve_weight(spec: str, coeffs=None) -> WeightFunction:
    """Resolve a weight from a CLI/config spec.

    ``spec`` is a builtin name (``linear`` accepts a scale suffix as in
    ``linear:2.5``), or the literal ``poly`` paired with ``coeffs``.
    """
    if coeffs is not None:
        return polynomial_weight(coeffs)
    if spec in BUILTIN_WEIGHTS:
        return BUILTIN_WEIGHTS[spec]()
    if spec.startswith("linear:"):
        return linear_weight(float(spec.split(":", 1)[1]))
    raise ValueError(f"unknown weight {spec!r}; use 'linear[:a]', 'linear-quadratic', or coeffs")
