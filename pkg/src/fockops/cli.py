"""Command-line client for the fockops service.

Every command builds a request model and dispatches it to the service
handlers -- in-process by default, or to a running server via ``--url``.
Exit codes: 0 success, 1 verdict/threshold failure, 2 usage error.

Text grammars (documented here once, shared by all commands):

* complex numbers: ``1``, ``-2.5``, ``3i``, ``1+2i`` (``j`` also accepted);
* vectors: comma-separated complex entries, or ``0`` for the zero vector;
* maps (--gamma): ``MATRIX|SHIFT`` where MATRIX is row-major with ``;``
  between rows and ``,`` between entries (``"0,0.5;-0.5,0"``), or a named
  matrix (``identity``, ``zero``, ``proj11``); SHIFT defaults to zero.
  ``name;SHIFT`` is accepted as a shorthand for named matrices;
* multipliers (--u): ``zero``, a complex constant, ``kernel:ALPHA;Q1,Q2``
  for ALPHA * K_Q, or ``poly:COEF@E1,E2;COEF@E1,E2`` for monomial sums.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click
import numpy as np

from .errors import FockopsError
from .moments import MomentTable
from .service import schemas as S
from .service.app import (
    handle_check,
    handle_demo,
    handle_kernel,
    handle_matrix,
    handle_moments,
    handle_verify,
)

CONFIG_KEYS = {
    "weight",
    "coeffs",
    "n",
    "N",
    "rmax",
    "tol",
    "tail_tol",
    "max_terms",
    "seed",
    "samples",
    "output",
    "format",
    "theorem",
    "gamma",
    "u",
    "gamma2",
    "u2",
    "p",
    "z",
    "suite",
    "trials",
}


# ---------------------------------------------------------------------------
# Text grammars
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    tok = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    try:
        return complex(tok)
    except ValueError:
        raise click.UsageError(f"cannot parse complex number {text!r}")


def parse_cvector(text: str, n: int) -> list:
    tok = text.strip()
    if tok == "0":
        return [0j] * n
    entries = [parse_complex(x) for x in tok.split(",")]
    if len(entries) != n:
        raise click.UsageError(f"vector {text!r} has {len(entries)} entries, expected {n}")
    return entries


_NAMED_MATRICES = {
    "identity": lambda n: [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)],
    "zero": lambda n: [[0.0] * n for _ in range(n)],
    "proj11": lambda n: [[1.0 if i == j == 0 else 0.0 for j in range(n)] for i in range(n)],
}


def parse_gamma(text: str, n: int) -> S.AffineMapModel:
    tok = text.strip()
    shift_part = None
    if "|" in tok:
        tok, shift_part = tok.split("|", 1)
    name = tok.split(";", 1)[0].strip().lower()
    if name in _NAMED_MATRICES:
        rest = tok.split(";", 1)
        if len(rest) == 2 and shift_part is None:
            shift_part = rest[1]
        rows = _NAMED_MATRICES[name](n)
        linear = [[(float(v), 0.0) for v in row] for row in rows]
    else:
        rows = [r for r in tok.split(";") if r.strip()]
        if len(rows) != n:
            raise click.UsageError(f"matrix {text!r} has {len(rows)} rows, expected {n}")
        linear = []
        for row in rows:
            entries = [parse_complex(x) for x in row.split(",")]
            if len(entries) != n:
                raise click.UsageError(f"matrix row {row!r} has {len(entries)} entries, expected {n}")
            linear.append([(z.real, z.imag) for z in entries])
    shift = parse_cvector(shift_part, n) if shift_part is not None else [0j] * n
    return S.AffineMapModel(linear=linear, shift=[(z.real, z.imag) for z in shift])


def parse_symbol(text: str, n: int) -> S.SymbolModel:
    tok = text.strip()
    if tok.lower() in ("zero", "0"):
        return S.SymbolModel(kind="zero")
    if tok.startswith("kernel:"):
        body = tok[len("kernel:"):]
        if ";" not in body:
            raise click.UsageError("kernel symbol must look like kernel:ALPHA;Q1,Q2")
        alpha_text, center_text = body.split(";", 1)
        alpha = parse_complex(alpha_text)
        center = parse_cvector(center_text, n)
        return S.SymbolModel(
            kind="kernel", alpha=(alpha.real, alpha.imag), center=[(z.real, z.imag) for z in center]
        )
    if tok.startswith("poly:"):
        terms = []
        for part in tok[len("poly:"):].split(";"):
            if "@" not in part:
                raise click.UsageError("poly terms must look like COEF@E1,E2")
            coef_text, exps_text = part.split("@", 1)
            coef = parse_complex(coef_text)
            exps = [int(e) for e in exps_text.split(",")]
            if len(exps) != n:
                raise click.UsageError(f"poly exponents {exps_text!r} must have length {n}")
            terms.append(S.PolyTermModel(exponents=exps, coef=(coef.real, coef.imag)))
        return S.SymbolModel(kind="poly", terms=terms)
    value = parse_complex(tok)
    return S.SymbolModel(kind="constant", value=(value.real, value.imag))


def parse_coeffs(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise click.UsageError(f"cannot parse weight coefficients {text!r}")


def load_config(path: str | None) -> dict:
    """Flat key=value config; '#' starts a comment; unknown keys rejected."""
    if path is None:
        return {}
    values = {}
    for lineno, raw in enumerate(pathlib.Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise click.UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value
    return values


def _cfg(config: dict, key: str, given, cast=str):
    """CLI flag wins; otherwise the config file; otherwise the given default."""
    if given is not None:
        return given
    if key in config:
        return cast(config[key])
    return None


# ---------------------------------------------------------------------------
# Output and transport
# ---------------------------------------------------------------------------


def dump_json(model) -> str:
    return json.dumps(model.model_dump(by_alias=True), sort_keys=True)


def emit(text: str, output: str | None):
    if output:
        pathlib.Path(output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def dispatch(url: str | None, path: str, req, handler, resp_cls):
    """In-process by default; POST to a remote service when --url is given."""
    if url is None:
        return handler(req)
    import httpx

    r = httpx.post(url.rstrip("/") + path, json=req.model_dump(), timeout=300.0)
    if r.status_code != 200:
        raise FockopsError(f"server returned {r.status_code}: {r.text}")
    return resp_cls.model_validate(r.json())


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
def cli():
    """Weighted Fock-space toolkit: moments, kernels, operator checks."""


def _common_weight_opts(f):
    f = click.option("--weight", default=None, help="builtin weight name (linear[:a], linear-quadratic)")(f)
    f = click.option("--coeffs", default=None, help="polynomial weight coefficients 'a0,a1,...'")(f)
    f = click.option("--config", default=None, type=click.Path(exists=True), help="key=value config file")(f)
    f = click.option("--url", default=None, help="base URL of a running fockops server")(f)
    return f


@cli.command()
@_common_weight_opts
@click.option("--rmax", type=click.IntRange(min=0), default=None, help="highest moment index")
@click.option("--tol", type=float, default=None, help="relative error target per moment")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--output", default=None, help="write to this path instead of stdout")
def moments(weight, coeffs, config, url, rmax, tol, fmt, output):
    """Compute the moment table of a weight."""
    cfg = load_config(config)
    req = S.MomentsRequest(
        weight=_cfg(cfg, "weight", weight) or "linear",
        coeffs=parse_coeffs(_cfg(cfg, "coeffs", coeffs)) if _cfg(cfg, "coeffs", coeffs) else None,
        rmax=_cfg(cfg, "rmax", rmax, int) if _cfg(cfg, "rmax", rmax, int) is not None else 64,
        tol=_cfg(cfg, "tol", tol, float) or 1e-12,
    )
    resp = dispatch(url, "/moments", req, handle_moments, S.MomentsResponse)
    fmt = _cfg(cfg, "format", fmt) or "csv"
    output = _cfg(cfg, "output", output)
    if fmt == "json":
        emit(dump_json(resp), output)
    else:
        table = MomentTable(
            weight_name=resp.weight,
            c=np.asarray(resp.c),
            err=np.asarray(resp.err),
            r_max=resp.r_max,
        )
        emit(table.to_csv_text(), output)
    return 0


@cli.command()
@_common_weight_opts
@click.option("--n", type=click.IntRange(min=1), default=None, help="complex dimension")
@click.option("--p", "p_text", default=None, help="kernel center, e.g. '1,0' or '1+2i'")
@click.option("--z", "z_text", default=None, help="evaluation point")
@click.option("--rmax", type=click.IntRange(min=0), default=None)
@click.option("--tail-tol", type=float, default=None)
@click.option("--max-terms", type=click.IntRange(min=1), default=None)
def kernel(weight, coeffs, config, url, n, p_text, z_text, rmax, tail_tol, max_terms):
    """Evaluate the reproducing kernel K_p(z) with its tail bound."""
    cfg = load_config(config)
    n = _cfg(cfg, "n", n, int) or 1
    p_text = _cfg(cfg, "p", p_text)
    z_text = _cfg(cfg, "z", z_text)
    if p_text is None or z_text is None:
        raise click.UsageError("kernel needs both --p and --z")
    req = S.KernelRequest(
        weight=_cfg(cfg, "weight", weight) or "linear",
        coeffs=parse_coeffs(_cfg(cfg, "coeffs", coeffs)) if _cfg(cfg, "coeffs", coeffs) else None,
        n=n,
        p=[(z.real, z.imag) for z in parse_cvector(p_text, n)],
        z=[(z.real, z.imag) for z in parse_cvector(z_text, n)],
        rmax=_cfg(cfg, "rmax", rmax, int) if _cfg(cfg, "rmax", rmax, int) is not None else 64,
        tail_tol=_cfg(cfg, "tail_tol", tail_tol, float) or 1e-12,
        max_terms=_cfg(cfg, "max_terms", max_terms, int) or 48,
    )
    resp = dispatch(url, "/kernel", req, handle_kernel, S.KernelResponse)
    click.echo(dump_json(resp))
    return 0


@cli.command()
@_common_weight_opts
@click.option("--n", type=click.IntRange(min=1), default=None)
@click.option("--N", "cap_n", type=click.IntRange(min=0), default=None, help="max total degree")
@click.option("--gamma", "gamma_text", default=None, help="affine map 'a,b;c,d|d1,d2'")
@click.option("--u", "u_text", default=None, help="multiplier symbol")
@click.option("--rmax", type=click.IntRange(min=0), default=None)
@click.option("--output", default=None)
def matrix(weight, coeffs, config, url, n, cap_n, gamma_text, u_text, rmax, output):
    """Truncated operator matrix in the orthonormal monomial basis."""
    cfg = load_config(config)
    n = _cfg(cfg, "n", n, int) or 1
    gamma_text = _cfg(cfg, "gamma", gamma_text)
    if gamma_text is None:
        raise click.UsageError("matrix needs --gamma")
    u_text = _cfg(cfg, "u", u_text)
    req = S.MatrixRequest(
        weight=_cfg(cfg, "weight", weight) or "linear",
        coeffs=parse_coeffs(_cfg(cfg, "coeffs", coeffs)) if _cfg(cfg, "coeffs", coeffs) else None,
        n=n,
        N=_cfg(cfg, "N", cap_n, int) if _cfg(cfg, "N", cap_n, int) is not None else 8,
        gamma=parse_gamma(gamma_text, n),
        u=parse_symbol(u_text, n) if u_text else None,
        rmax=_cfg(cfg, "rmax", rmax, int),
    )
    resp = dispatch(url, "/matrix", req, handle_matrix, S.MatrixResponse)
    emit(dump_json(resp), _cfg(cfg, "output", output))
    return 0


@cli.command()
@_common_weight_opts
@click.option("--theorem", type=click.Choice(["adjoint-pair", "self-adjoint", "coisometry"]), default=None)
@click.option("--n", type=click.IntRange(min=1), default=None)
@click.option("--gamma", "gamma_text", default=None)
@click.option("--u", "u_text", default=None)
@click.option("--gamma2", "gamma2_text", default=None)
@click.option("--u2", "u2_text", default=None)
@click.option("--tol", type=float, default=None)
@click.option("--samples", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--N", "cap_n", type=click.IntRange(min=0), default=None)
@click.option("--rmax", type=click.IntRange(min=0), default=None)
@click.option("--max-terms", type=click.IntRange(min=1), default=None)
def check(weight, coeffs, config, url, theorem, n, gamma_text, u_text, gamma2_text, u2_text,
          tol, samples, seed, cap_n, rmax, max_terms):
    """Run a decision procedure; exits 1 when the verdict fails."""
    cfg = load_config(config)
    theorem = _cfg(cfg, "theorem", theorem)
    if theorem is None:
        raise click.UsageError("check needs --theorem")
    n = _cfg(cfg, "n", n, int) or 1
    gamma_text = _cfg(cfg, "gamma", gamma_text)
    if gamma_text is None:
        raise click.UsageError("check needs --gamma")
    u_text = _cfg(cfg, "u", u_text)
    gamma2_text = _cfg(cfg, "gamma2", gamma2_text)
    u2_text = _cfg(cfg, "u2", u2_text)
    req = S.CheckRequest(
        theorem=theorem,
        weight=_cfg(cfg, "weight", weight) or "linear",
        coeffs=parse_coeffs(_cfg(cfg, "coeffs", coeffs)) if _cfg(cfg, "coeffs", coeffs) else None,
        n=n,
        gamma=parse_gamma(gamma_text, n),
        u=parse_symbol(u_text, n) if u_text else None,
        gamma2=parse_gamma(gamma2_text, n) if gamma2_text else None,
        u2=parse_symbol(u2_text, n) if u2_text else None,
        tol=_cfg(cfg, "tol", tol, float),
        samples=_cfg(cfg, "samples", samples, int) or 64,
        seed=_cfg(cfg, "seed", seed, int) or 0,
        N=_cfg(cfg, "N", cap_n, int) if _cfg(cfg, "N", cap_n, int) is not None else 8,
        rmax=_cfg(cfg, "rmax", rmax, int) if _cfg(cfg, "rmax", rmax, int) is not None else 64,
        max_terms=_cfg(cfg, "max_terms", max_terms, int) or 48,
    )
    resp = dispatch(url, "/check", req, handle_check, S.VerdictModel)
    click.echo(dump_json(resp))
    ok = resp.satisfied or (resp.necessary_only and resp.conditions_pass)
    return 0 if ok else 1


@cli.command()
@click.option("--suite", type=click.Choice(["default", "kernel", "operators"]), default="default")
@click.option("--trials", type=click.IntRange(min=1), default=200)
@click.option("--seed", type=int, default=20240)
@click.option("--url", default=None)
@click.option("--output", default=None, help="write JSON-lines reports to this path")
def verify(suite, trials, seed, url, output):
    """Run a verification suite; exits 1 when any report exceeds its threshold."""
    req = S.VerifyRequest(suite=suite, trials=trials, seed=seed)
    resp = dispatch(url, "/verify", req, handle_verify, S.VerifyResponse)
    lines = [json.dumps(r.model_dump(), sort_keys=True) for r in resp.reports]
    emit("\n".join(lines), output)
    return 0 if resp.passed else 1


@cli.command()
@click.option("--moments", "moments_path", default=None, type=click.Path(exists=True),
              help="load a precomputed moment table (csv or json) instead of integrating")
@click.option("--json", "as_json", is_flag=True, help="emit the full report as JSON")
@click.option("--url", default=None)
def demo(moments_path, as_json, url):
    """Reproduce the two worked operator examples and print their tables."""
    if url is not None:
        import httpx

        r = httpx.get(url.rstrip("/") + "/demo", timeout=300.0)
        if r.status_code != 200:
            raise FockopsError(f"server returned {r.status_code}: {r.text}")
        resp = S.DemoResponse.model_validate(r.json())
    else:
        table = None
        if moments_path:
            text = pathlib.Path(moments_path).read_text()
            if moments_path.endswith(".json"):
                table = MomentTable.from_json_dict(json.loads(text))
            else:
                table = MomentTable.from_csv_text(text)
        resp = handle_demo(table)
    if as_json:
        click.echo(dump_json(resp))
        return 0 if resp.passed else 1

    def show_verdict(v: S.VerdictModel):
        for c in v.conditions:
            marker = "PASS" if c.passed else "FAIL"
            req_note = "" if c.required else "  (informational)"
            click.echo(f"    [{marker}] {c.name:28s} residual={c.residual:.3e} tol={c.tolerance:.1e}{req_note}")

    click.echo("coordinate projection (self-adjoint composition):")
    click.echo(f"  verdict: {'satisfied' if resp.projection.verdict.satisfied else 'NOT satisfied'}")
    show_verdict(resp.projection.verdict)
    click.echo(f"  linear part norm = {resp.projection.linear_norm:.12f}")
    click.echo(f"  matrix self-adjoint defect = {resp.projection.self_adjoint_defect:.3e}")
    click.echo("")
    click.echo("non-Hermitian 2x2 map with shift (necessary self-adjointness conditions):")
    nh = resp.nonhermitian
    click.echo(f"  C^-1 d        = {nh.c_inv_d}")
    click.echo(f"  (C*)^-1 d     = {nh.c_adj_inv_d}")
    click.echo(f"  <C^-1 d, d>   = {nh.ip_c_inv}")
    click.echo(f"  <(C*)^-1 d,d> = {nh.ip_c_adj_inv}")
    click.echo(f"  ||C||^2       = {nh.norm_c_sq:.12f}")
    click.echo(f"  series residual = {nh.series_residual:.3e}")
    show_verdict(nh.verdict)
    click.echo("")
    click.echo("demo " + ("PASSED" if resp.passed else "FAILED"))
    return 0 if resp.passed else 1


@cli.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("fockops.service.app:app", host=host, port=port)
    return 0


def run(argv: list[str]) -> int:
    """Programmatic entry point; returns the exit code instead of raising."""
    try:
        result = cli.main(args=list(argv), prog_name="fockops", standalone_mode=False)
        return int(result) if isinstance(result, int) else 0
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except FockopsError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except SystemExit as exc:  # click may still exit directly (e.g. --help)
        return int(exc.code or 0)


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
