"""FastAPI service exposing moments, kernels, matrices, checks, and suites.

Handlers are plain functions over the pydantic models so the CLI can call
them in-process; the FastAPI routes are thin wrappers that translate domain
errors into HTTP status codes.  Moment tables are cached per weight/config
across requests.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from ..criteria import (
    adjoint_composition_pair,
    adjoint_weighted_pair,
    coisometry_equals_unitary_composition,
    is_self_adjoint_composition,
    is_coisometry_weighted,
    self_adjoint_weighted,
)
from ..errors import FockopsError
from ..kernel import KernelEvaluator, kernel_eval_bounded
from ..moments import MomentTable, compute_moments
from ..operators import (
    AffineMap,
    ConstantSymbol,
    KernelMultipleSymbol,
    defect_self_adjoint,
    operator_norm,
    solve_invertible,
    symbol_degree,
    truncated_matrix,
)
from ..verify import kernel_equation_residual, run_suite
from ..weights import BUILTIN_WEIGHTS, resolve_weight
from . import schemas as S
from .convert import (
    c2,
    from_verdict,
    mat2,
    to_affine,
    to_symbol,
    vec2,
)

_TABLE_CACHE: dict = {}


def get_table(weight: str, coeffs=None, rmax: int = 64, tol: float = 1e-12) -> MomentTable:
    key = (weight, tuple(coeffs) if coeffs else None, rmax, repr(tol))
    if key not in _TABLE_CACHE:
        w = resolve_weight(weight, coeffs)
        _TABLE_CACHE[key] = compute_moments(w, r_max=rmax, tol=tol)
    return _TABLE_CACHE[key]


# ---------------------------------------------------------------------------
# Handlers (shared by HTTP routes and the CLI)
# ---------------------------------------------------------------------------


def handle_moments(req: S.MomentsRequest) -> S.MomentsResponse:
    table = get_table(req.weight, req.coeffs, req.rmax, req.tol)
    return S.MomentsResponse(
        weight=table.weight_name,
        r_max=table.r_max,
        c=[float(x) for x in table.c],
        err=[float(x) for x in table.err],
    )


def handle_kernel(req: S.KernelRequest) -> S.KernelResponse:
    table = get_table(req.weight, req.coeffs, req.rmax, req.tol)
    ev = KernelEvaluator(table, n=req.n, tail_tol=req.tail_tol, max_terms=req.max_terms)
    p = np.array([complex(a, b) for a, b in req.p])
    z = np.array([complex(a, b) for a, b in req.z])
    value, bound = kernel_eval_bounded(ev, p, z)
    return S.KernelResponse(value=c2(value), tail_bound=float(bound))


def handle_matrix(req: S.MatrixRequest) -> S.MatrixResponse:
    U = to_symbol(req.u, req.n) or ConstantSymbol(1.0)
    gamma = to_affine(req.gamma, req.n)
    deg = symbol_degree(U)
    rmax = req.rmax if req.rmax is not None else max(
        64, req.N + (deg if deg is not None else 0) + req.n + 1
    )
    table = get_table(req.weight, req.coeffs, rmax, req.tol)
    ev = KernelEvaluator(table, n=req.n, max_terms=min(48, rmax - req.n + 1))
    T = truncated_matrix(U, gamma, ev, req.N)
    return S.MatrixResponse(
        n=T.n,
        N=T.N,
        guard=T.guard,
        index=[list(a) for a in T.index],
        matrix=mat2(T.matrix),
    )


def handle_check(req: S.CheckRequest) -> S.VerdictModel:
    gamma = to_affine(req.gamma, req.n)
    U = to_symbol(req.u, req.n)
    table = get_table(req.weight, req.coeffs, req.rmax)
    ev = KernelEvaluator(table, n=req.n, max_terms=req.max_terms)

    if req.theorem == "adjoint-pair":
        if req.gamma2 is None:
            raise ValueError("adjoint-pair needs a second map (gamma2)")
        gamma2 = to_affine(req.gamma2, req.n)
        U2 = to_symbol(req.u2, req.n)
        if U is None and U2 is None:
            kwargs = {"tol": req.tol} if req.tol is not None else {}
            verdict = adjoint_composition_pair(gamma, gamma2, **kwargs)
        else:
            kwargs = {"tol": req.tol} if req.tol is not None else {}
            verdict = adjoint_weighted_pair(
                U or ConstantSymbol(1.0),
                gamma,
                U2 or ConstantSymbol(1.0),
                gamma2,
                ev,
                samples=req.samples,
                seed=req.seed,
                **kwargs,
            )
    elif req.theorem == "self-adjoint":
        if U is None:
            kwargs = {"tol": req.tol} if req.tol is not None else {}
            verdict = is_self_adjoint_composition(gamma, **kwargs)
        else:
            kwargs = {"tol": req.tol, "tol_series": req.tol} if req.tol is not None else {}
            verdict = self_adjoint_weighted(
                U, gamma, ev, samples=req.samples, seed=req.seed, **kwargs
            )
    elif req.theorem == "coisometry":
        if U is None:
            kwargs = {"tol": req.tol} if req.tol is not None else {}
            verdict = coisometry_equals_unitary_composition(gamma, ev, N=req.N, **kwargs)
        else:
            kwargs = {"tol": req.tol, "tol_series": req.tol} if req.tol is not None else {}
            verdict = is_coisometry_weighted(
                U, gamma, ev, samples=req.samples, seed=req.seed, **kwargs
            )
    else:
        raise ValueError(f"unknown theorem {req.theorem!r}")
    return from_verdict(verdict)


def handle_verify(req: S.VerifyRequest) -> S.VerifyResponse:
    entries, passed = run_suite(req.suite, trials=req.trials, seed=req.seed)
    reports = [
        S.ReportModel(
            name=e["name"],
            max_residual=e["max_residual"],
            points_tested=e["points_tested"],
            seed=e["seed"],
            threshold=e["threshold"],
            passed=e["passed"],
            error=e.get("error"),
        )
        for e in entries
    ]
    return S.VerifyResponse(suite=req.suite, passed=passed, reports=reports)


def handle_demo(table: MomentTable | None = None) -> S.DemoResponse:
    """Reproduce the two worked 2x2 examples and report their condition tables."""
    if table is None:
        table = get_table("linear", None, 64, 1e-12)
    if table.r_max < 49:
        raise FockopsError(f"demo needs moments up to r=49, table stops at {table.r_max}")
    ev = KernelEvaluator(table, n=2)

    # coordinate projection: Gamma(z) = (z1, 0), a self-adjoint composition
    proj = np.zeros((2, 2))
    proj[0, 0] = 1.0
    g_proj = AffineMap(proj, np.zeros(2))
    v_proj = is_self_adjoint_composition(g_proj)
    defect = defect_self_adjoint(truncated_matrix(ConstantSymbol(1.0), g_proj, ev, N=8))
    lin_norm = g_proj.operator_norm()
    proj_ok = v_proj.satisfied and abs(lin_norm - 1.0) <= 1e-12 and defect <= 1e-12
    proj_report = S.ProjectionReport(
        verdict=from_verdict(v_proj),
        linear_norm=lin_norm,
        self_adjoint_defect=defect,
        passed=proj_ok,
    )

    # non-Hermitian linear part whose shifted series condition still holds
    C = np.array([[0.0, 0.5], [-0.5, 0.0]], dtype=complex)
    D = np.array([1.0, 0.0], dtype=complex)
    g = AffineMap(C, D)
    c_inv_d = solve_invertible(C, D)
    c_adj_inv_d = solve_invertible(C.conj().T, D)
    ip1 = complex(np.sum(c_inv_d * np.conj(D)))
    ip2 = complex(np.sum(c_adj_inv_d * np.conj(D)))
    norm_c_sq = operator_norm(C) ** 2
    series = kernel_equation_residual(
        "self-adjoint-series", ConstantSymbol(1.0), g, ConstantSymbol(1.0), g, ev
    )
    c_top = float(table.c[1])
    U = KernelMultipleSymbol(c_top, D)  # alpha = c_{n-1} * conj(U(0)) with U(0) = 1
    v_general = self_adjoint_weighted(U, g, ev)
    nh_ok = (
        float(np.max(np.abs(c_inv_d - np.array([0.0, 2.0])))) <= 1e-12
        and float(np.max(np.abs(c_adj_inv_d - np.array([0.0, -2.0])))) <= 1e-12
        and abs(ip1) <= 1e-12
        and abs(ip2) <= 1e-12
        and norm_c_sq <= 0.5
        and series.max_residual <= 1e-12
        and v_general.necessary_only
        and v_general.conditions_pass
    )
    nh_report = S.NonHermitianReport(
        c_inv_d=vec2(c_inv_d),
        c_adj_inv_d=vec2(c_adj_inv_d),
        ip_c_inv=c2(ip1),
        ip_c_adj_inv=c2(ip2),
        norm_c_sq=norm_c_sq,
        series_residual=series.max_residual,
        verdict=from_verdict(v_general),
        passed=nh_ok,
    )
    return S.DemoResponse(passed=proj_ok and nh_ok, projection=proj_report, nonhermitian=nh_report)


# ---------------------------------------------------------------------------
# Routes
# ---------------------------------------------------------------------------

app = FastAPI(
    title="fockops",
    description="Weighted Fock-space moments, kernels, and composition-operator checks",
)


def _wrap(handler, *args):
    try:
        return handler(*args)
    except (FockopsError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=S.HealthResponse)
def health() -> S.HealthResponse:
    return S.HealthResponse()


@app.get("/weights", response_model=S.WeightsResponse)
def weights() -> S.WeightsResponse:
    return S.WeightsResponse(weights=sorted(BUILTIN_WEIGHTS))


@app.post("/moments", response_model=S.MomentsResponse)
def moments(req: S.MomentsRequest) -> S.MomentsResponse:
    return _wrap(handle_moments, req)


@app.post("/kernel", response_model=S.KernelResponse)
def kernel(req: S.KernelRequest) -> S.KernelResponse:
    return _wrap(handle_kernel, req)


@app.post("/matrix", response_model=S.MatrixResponse)
def matrix(req: S.MatrixRequest) -> S.MatrixResponse:
    return _wrap(handle_matrix, req)


@app.post("/check", response_model=S.VerdictModel)
def check(req: S.CheckRequest) -> S.VerdictModel:
    return _wrap(handle_check, req)


@app.post("/verify", response_model=S.VerifyResponse)
def verify(req: S.VerifyRequest) -> S.VerifyResponse:
    return _wrap(handle_verify, req)


@app.get("/demo", response_model=S.DemoResponse)
def demo() -> S.DemoResponse:
    return _wrap(handle_demo)
