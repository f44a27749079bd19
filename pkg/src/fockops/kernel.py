"""Entire-series evaluation of G, its derivatives, and the reproducing kernel.

The generating series ``G(t) = sum_r t**r / c_r`` has infinite radius of
convergence for admissible weights; the kernel at points p, z in C^n is
``K_p(z) = G^{(n-1)}(<z,p>) / (n-1)!`` with ``<z,p> = sum z_j * conj(p_j)``.
Derivatives are taken by reindexing the series, never numerically.

Truncation is certified: because the moment ratios ``c_{r+1}/c_r`` are
nondecreasing (log-convexity), the terms beyond the stopping index are
dominated by a geometric series, and every evaluation carries that bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationBudgetExceeded
from .moments import MomentTable, monomial_norm_sq
from .multiindex import basis_indices

__all__ = [
    "KernelEvaluator",
    "g_eval",
    "g_eval_bounded",
    "kernel_eval",
    "kernel_eval_bounded",
    "kernel_norm_sq",
    "kernel_poly_coeffs",
]

DEFAULT_TAIL_TOL = 1e-12
DEFAULT_MAX_TERMS = 48


@dataclass(frozen=True)
class KernelEvaluator:
    """Bundles a moment table with the truncation policy for dimension n."""

    moments: MomentTable
    n: int
    tail_tol: float = DEFAULT_TAIL_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension n must be >= 1, got {self.n}")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.max_terms + self.n - 1 > self.moments.r_max:
            raise ValueError(
                f"max_terms={self.max_terms} with n={self.n} needs moments up to "
                f"{self.max_terms + self.n - 1} but table stops at {self.moments.r_max}"
            )


def g_eval_bounded(ev: KernelEvaluator, t: complex, k: int) -> tuple[complex, float]:
    """Evaluate ``sum_{r>=k} r(r-1)...(r-k+1) t^(r-k) / c_r`` with a tail bound.

    Stops at the first index R whose geometric tail estimate drops below
    ``tail_tol * (1 + |partial sum|)``; raises TruncationBudgetExceeded when
    no admissible R exists within ``max_terms`` terms.

    The series has real coefficients, so conjugate arguments give conjugate
    values; evaluation is canonicalized to the upper half-plane to make that
    identity hold bitwise (kernel symmetry inherits it exactly).
    """
    t = complex(t)
    if t.imag < 0:
        val, bound = _g_series(ev, t.conjugate(), k)
        return val.conjugate(), bound
    return _g_series(ev, t, k)


def _g_series(ev: KernelEvaluator, t: complex, k: int) -> tuple[complex, float]:
    if k < 0:
        raise ValueError(f"derivative order k must be >= 0, got {k}")
    c = ev.moments.c
    r_max = ev.moments.r_max
    at = abs(t)

    total = 0.0 + 0.0j
    t_pow = 1.0 + 0.0j  # t**(r-k)
    fall = float(math.factorial(k))  # r(r-1)...(r-k+1) at r=k
    r = k
    terms = 0
    while terms < ev.max_terms and r + 1 <= r_max:
        term = fall * t_pow / c[r]
        total += term
        # geometric bound: for rho >= r the term ratio is at most
        # |t| * (r+1)/(r+1-k) * c_r/c_{r+1}, which is nonincreasing in r.
        q = at * ((r + 1) / (r + 1 - k)) * float(c[r] / c[r + 1])
        if q < 1.0:
            tail = abs(term) * q / (1.0 - q)
            if tail <= ev.tail_tol * (1.0 + abs(total)):
                return total, tail
        r += 1
        terms += 1
        t_pow *= t
        fall = fall * r / (r - k)
    raise TruncationBudgetExceeded(
        f"series at |t|={at:.4g}, k={k} not converged within {ev.max_terms} terms "
        f"(moments up to r={r_max})"
    )


def g_eval(ev: KernelEvaluator, t: complex, k: int) -> complex:
    return g_eval_bounded(ev, t, k)[0]


def _pairing(z, p) -> complex:
    """<z,p> = sum z_j * conj(p_j), in explicit real arithmetic.

    Componentwise real products keep <z,p> and <p,z> exactly conjugate
    (hardware complex multiplies may contract with FMA and break that at
    the last ulp, which matters when kernel values are large).
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    p = np.asarray(p, dtype=complex).reshape(-1)
    if z.shape != p.shape:
        raise ValueError(f"point dimensions differ: {z.shape} vs {p.shape}")
    re = float(np.sum(z.real * p.real) + np.sum(z.imag * p.imag))
    im = float(np.sum(z.imag * p.real) - np.sum(z.real * p.imag))
    return complex(re, im)


def kernel_eval_bounded(ev: KernelEvaluator, p, z) -> tuple[complex, float]:
    """K_p(z) together with its accepted truncation bound."""
    p = np.asarray(p, dtype=complex).reshape(-1)
    z = np.asarray(z, dtype=complex).reshape(-1)
    if p.size != ev.n or z.size != ev.n:
        raise ValueError(f"points must have length n={ev.n}, got {p.size} and {z.size}")
    fact = math.factorial(ev.n - 1)
    val, bound = g_eval_bounded(ev, _pairing(z, p), ev.n - 1)
    return val / fact, bound / fact


def kernel_eval(ev: KernelEvaluator, p, z) -> complex:
    return kernel_eval_bounded(ev, p, z)[0]


def kernel_norm_sq(ev: KernelEvaluator, p) -> float:
    """||K_p||^2 = K_p(p); real and positive up to 1e-12 imaginary leakage."""
    val = kernel_eval(ev, p, p)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"kernel norm at p={p!r} has imaginary leakage {val.imag:.3e}")
    return float(val.real)


def kernel_poly_coeffs(ev: KernelEvaluator, q, N: int) -> dict[tuple[int, ...], complex]:
    """Monomial coefficients of K_q truncated to total degree N.

    The exact expansion is ``K_q(z) = sum_alpha conj(q)^alpha * z^alpha /
    ||z^alpha||^2``; truncation keeps |alpha| <= N.
    """
    q = np.asarray(q, dtype=complex).reshape(-1)
    if q.size != ev.n:
        raise ValueError(f"center must have length n={ev.n}, got {q.size}")
    qc = np.conj(q)
    coeffs: dict[tuple[int, ...], complex] = {}
    for alpha in basis_indices(ev.n, N):
        mono = 1.0 + 0.0j
        for qj, a in zip(qc, alpha):
            mono *= qj**a
        if mono != 0:
            coeffs[alpha] = mono / monomial_norm_sq(ev.moments, alpha, ev.n)
    return coeffs
