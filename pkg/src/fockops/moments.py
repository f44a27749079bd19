"""Stieltjes moments of the weight measure and monomial norms.

The moment ``c_r = integral_0^inf s**r * exp(-psi(s)) ds`` is the building
block for everything downstream: monomial norms, the kernel series, and the
truncation bounds.  Each moment is integrated adaptively with G7/K15
Gauss-Kronrod panels on a head interval ``[0, s*]`` and an exponential
substitution on the tail ``[s*, inf)``, where ``s*`` is pushed far enough
right that the tail carries less than machine-epsilon relative weight.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IndexOutOfRange, QuadratureBudgetExceeded, TailNotConvergent
from .weights import WeightFunction

__all__ = ["MomentTable", "compute_moments", "monomial_norm_sq"]

DEFAULT_TOL = 1e-12
DEFAULT_R_MAX = 64
# cap on integrand evaluations per moment
DEFAULT_EVAL_CAP = 1_000_000

# G7/K15 nodes and weights (positive half; nodes are symmetric).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-point node/weight arrays on [-1, 1]
_NODES = np.concatenate([-_XGK[:7], _XGK[7:][::-1], _XGK[:7][::-1]])
_WK = np.concatenate([_WGK[:7], _WGK[7:][::-1], _WGK[:7][::-1]])
_WGFULL = np.zeros(15)
_WGFULL[1:14:2] = np.concatenate([_WG[:3], _WG[3:][::-1], _WG[:3][::-1]])


def _gk_panel(f, a: float, b: float) -> tuple[float, float]:
    """One G7/K15 panel on [a, b]; returns (integral, error estimate)."""
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES
    y = f(x)
    k15 = half * float(np.dot(_WK, y))
    g7 = half * float(np.dot(_WGFULL, y))
    e = abs(k15 - g7)
    err = min(e, (200.0 * e) ** 1.5) if e > 0 else 0.0
    # roundoff floor so the error claim stays honest
    err = max(err, 50.0 * np.finfo(float).eps * half * float(np.dot(_WK, np.abs(y))))
    return k15, err


def _adaptive(f, a: float, b: float, abs_tol: float, budget: list[int]) -> tuple[float, float]:
    """Adaptive bisection of [a, b] driven by per-panel error estimates.

    ``budget`` is a single-element mutable counter of remaining evaluations,
    shared across the head and tail integrals of one moment.  Stops (without
    raising) when the budget runs dry or panels hit the roundoff width; the
    caller decides whether the achieved error is acceptable.
    """
    val, err = _gk_panel(f, a, b)
    budget[0] -= 15
    heap = [(-err, a, b, val, err)]
    total_val, total_err = val, err
    min_width = 64 * np.finfo(float).eps * max(abs(a), abs(b), 1.0)
    while total_err > abs_tol and heap and budget[0] >= 30:
        neg, pa, pb, pval, perr = heapq.heappop(heap)
        if neg == 0.0:
            # only stalled panels remain
            heapq.heappush(heap, (neg, pa, pb, pval, perr))
            break
        if pb - pa <= min_width:
            # cannot refine further; keep the panel's claim with lowest priority
            heapq.heappush(heap, (0.0, pa, pb, pval, perr))
            continue
        mid = 0.5 * (pa + pb)
        v1, e1 = _gk_panel(f, pa, mid)
        v2, e2 = _gk_panel(f, mid, pb)
        budget[0] -= 30
        total_val += v1 + v2 - pval
        total_err += e1 + e2 - perr
        heapq.heappush(heap, (-e1, pa, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, pb, v2, e2))
    return total_val, total_err


def _log_integrand(w: WeightFunction, r: int):
    """log of s**r * exp(-psi(s)), evaluated stably."""
    if r == 0:
        return lambda s: -w.psi(np.asarray(s, dtype=float))

    def logf(s):
        s = np.asarray(s, dtype=float)
        return r * np.log(s) - w.psi(s)

    return logf


def _find_tail_start(w: WeightFunction, r: int) -> float:
    """Smallest convenient s* with integrand(s*) below ~1e-20 of its peak.

    Raises TailNotConvergent when the integrand refuses to decay (psi
    sublinear or decreasing).
    """
    logf = _log_integrand(w, r)
    # locate the peak: s*psi'(s) is increasing, peak solves s*psi'(s) = r
    s_peak = 0.0
    if r > 0:
        s = 1.0
        for _ in range(200):
            if s * float(w.d1(np.array([s]))[0]) >= r:
                break
            s *= 2.0
        else:
            raise TailNotConvergent(f"weight {w.name!r}: no integrand peak below s=2**200")
        s_peak = s
    ref = float(logf(np.array([max(s_peak, 1e-8)]))[0]) if r > 0 else float(logf(np.array([0.0]))[0])
    target = ref - 46.0  # exp(-46) ~ 1e-20 relative weight
    s = max(2.0 * s_peak, 1.0)
    for _ in range(400):
        ls = float(logf(np.array([s]))[0])
        d1 = float(w.d1(np.array([s]))[0])
        if ls <= target and d1 > 0:
            return s
        if s > 1e12:
            break
        s *= 1.5
    raise TailNotConvergent(
        f"weight {w.name!r}: integrand for r={r} does not decay below the tail threshold"
    )


def _moment(w: WeightFunction, r: int, tol: float, eval_cap: int) -> tuple[float, float]:
    s_star = _find_tail_start(w, r)
    logf = _log_integrand(w, r)

    def head(s):
        return np.exp(logf(s))

    # tail substitution u = exp(-lam*(s - s*)):  s = s* - log(u)/lam.
    # lam is half the local decay rate so the transformed integrand vanishes
    # at u = 0 instead of oscillating against roundoff.
    lam = 0.5 * float(w.d1(np.array([s_star]))[0])
    lam = max(lam, 1e-8)

    def tail(u):
        u = np.asarray(u, dtype=float)
        s = s_star - np.log(u) / lam
        return np.exp(logf(s) - np.log(u)) / lam

    budget = [eval_cap]
    # coarse 16-panel scan to learn the integral's scale before refining
    edges = np.linspace(0.0, s_star, 17)
    scale = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, _ = _gk_panel(head, float(lo), float(hi))
        scale += v
    budget[0] -= 16 * 15
    scale = max(1.0, abs(scale))

    for _ in range(6):
        abs_tol = 0.5 * tol * max(1.0, scale)
        val_h, err_h = _adaptive(head, 0.0, s_star, abs_tol=abs_tol, budget=budget)
        val_t, err_t = _adaptive(tail, 0.0, 1.0, abs_tol=abs_tol, budget=budget)
        val = val_h + val_t
        err = err_h + err_t
        if err <= tol * max(1.0, abs(val)):
            return val, err
        if budget[0] < 30:
            break
        # the scale guess was too generous; tighten and retry
        scale = min(scale, max(abs(val), 1e-300)) * 0.25
    raise QuadratureBudgetExceeded(
        f"moment r={r}: estimated error {err:.3e} exceeds {tol:.1e}*max(1,c_r) "
        f"within the evaluation cap"
    )


@dataclass(frozen=True)
class MomentTable:
    """Moments c_0..c_{r_max} with per-entry absolute error estimates."""

    weight_name: str
    c: np.ndarray
    err: np.ndarray
    r_max: int

    def __post_init__(self):
        if len(self.c) != self.r_max + 1 or len(self.err) != self.r_max + 1:
            raise ValueError("moment table length must be r_max + 1")

    def ratio(self, r: int) -> float:
        """c_{r+1} / c_r (nondecreasing in r by log-convexity)."""
        return float(self.c[r + 1] / self.c[r])

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "c_r", "err_r"])
        for r in range(self.r_max + 1):
            writer.writerow([r, repr(float(self.c[r])), repr(float(self.err[r]))])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "schema": "1",
            "weight": self.weight_name,
            "r_max": self.r_max,
            "c": [float(x) for x in self.c],
            "err": [float(x) for x in self.err],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "MomentTable":
        return cls(
            weight_name=d["weight"],
            c=np.asarray(d["c"], dtype=float),
            err=np.asarray(d["err"], dtype=float),
            r_max=int(d["r_max"]),
        )

    @classmethod
    def from_csv_text(cls, text: str, weight_name: str = "loaded") -> "MomentTable":
        rows = list(csv.reader(io.StringIO(text)))
        body = rows[1:] if rows and rows[0] and rows[0][0] == "r" else rows
        c = [float(row[1]) for row in body if row]
        err = [float(row[2]) for row in body if row]
        return cls(weight_name=weight_name, c=np.asarray(c), err=np.asarray(err), r_max=len(c) - 1)


def compute_moments(
    w: WeightFunction,
    r_max: int = DEFAULT_R_MAX,
    tol: float = DEFAULT_TOL,
    eval_cap: int = DEFAULT_EVAL_CAP,
) -> MomentTable:
    """Integrate c_r for r = 0..r_max with error <= tol*max(1, c_r) each.

    Raises TailNotConvergent for weights whose integrand does not decay and
    QuadratureBudgetExceeded when the target cannot be met within the
    per-moment evaluation cap.
    """
    if r_max < 0:
        raise ValueError(f"r_max must be >= 0, got {r_max}")
    cs = np.empty(r_max + 1)
    errs = np.empty(r_max + 1)
    for r in range(r_max + 1):
        cs[r], errs[r] = _moment(w, r, tol, eval_cap)
    return MomentTable(weight_name=w.name, c=cs, err=errs, r_max=r_max)


def monomial_norm_sq(table: MomentTable, alpha: tuple[int, ...], n: int) -> float:
    """Squared norm of the monomial z**alpha in complex dimension n.

    With the inner product normalized so that ``<1,1> = c_{n-1}`` (which is
    what makes the reproducing identities exact), the norm is
    ``(n-1)! * alpha! * c_{|alpha|+n-1} / (|alpha|+n-1)!``.
    """
    if n < 1:
        raise ValueError(f"dimension n must be >= 1, got {n}")
    if len(alpha) != n:
        raise ValueError(f"multi-index length {len(alpha)} != n={n}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index must be nonnegative, got {alpha}")
    q = sum(alpha) + n - 1
    if q > table.r_max:
        raise IndexOutOfRange(
            f"norm of z^{alpha} (n={n}) needs moment c_{q} but table stops at {table.r_max}"
        )
    num = math.factorial(n - 1)
    for a in alpha:
        num *= math.factorial(a)
    factor = Fraction(num, math.factorial(q))
    return float(factor) * float(table.c[q])
