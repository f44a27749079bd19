"""Wire-format <-> domain-object conversions."""

from __future__ import annotations

import numpy as np

from ..criteria import Verdict
from ..errors import DimensionMismatch
from ..operators import (
    AffineMap,
    ConstantSymbol,
    KernelMultipleSymbol,
    PolynomialSymbol,
    WeightSymbol,
    ZeroSymbol,
)
from .schemas import (
    AffineMapModel,
    Complex2,
    ConditionModel,
    SymbolModel,
    VerdictModel,
)


def c2(z: complex) -> Complex2:
    z = complex(z)
    return (float(z.real), float(z.imag))


def vec2(v) -> list[Complex2]:
    return [c2(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def mat2(m) -> list[list[Complex2]]:
    return [[c2(z) for z in row] for row in np.asarray(m, dtype=complex)]


def from_c2(pair: Complex2) -> complex:
    return complex(pair[0], pair[1])


def from_vec2(v: list[Complex2]) -> np.ndarray:
    return np.array([from_c2(p) for p in v], dtype=complex)


def from_mat2(m: list[list[Complex2]]) -> np.ndarray:
    return np.array([[from_c2(p) for p in row] for row in m], dtype=complex)


def to_affine(model: AffineMapModel, n: int) -> AffineMap:
    gamma = AffineMap(from_mat2(model.linear), from_vec2(model.shift))
    if gamma.n != n:
        raise DimensionMismatch(f"gamma is {gamma.n}x{gamma.n} but n={n}")
    return gamma


def to_symbol(model: SymbolModel | None, n: int) -> WeightSymbol | None:
    if model is None:
        return None
    if model.kind == "zero":
        return ZeroSymbol()
    if model.kind == "constant":
        if model.value is None:
            raise ValueError("constant symbol needs 'value'")
        return ConstantSymbol(from_c2(model.value))
    if model.kind == "kernel":
        if model.alpha is None or model.center is None:
            raise ValueError("kernel symbol needs 'alpha' and 'center'")
        center = from_vec2(model.center)
        if center.size != n:
            raise DimensionMismatch(f"kernel center has length {center.size}, expected {n}")
        return KernelMultipleSymbol(from_c2(model.alpha), center)
    if model.kind == "poly":
        if not model.terms:
            raise ValueError("poly symbol needs at least one term")
        coeffs: dict = {}
        for term in model.terms:
            if len(term.exponents) != n:
                raise DimensionMismatch(
                    f"poly exponents {term.exponents} do not have length n={n}"
                )
            key = tuple(int(e) for e in term.exponents)
            coeffs[key] = coeffs.get(key, 0.0) + from_c2(term.coef)
        return PolynomialSymbol(coeffs)
    raise ValueError(f"unknown symbol kind {model.kind!r}")


def from_verdict(v: Verdict) -> VerdictModel:
    return VerdictModel(
        theorem=v.theorem,
        satisfied=v.satisfied,
        necessary_only=v.necessary_only,
        conditions_pass=v.conditions_pass,
        seed=v.seed,
        conditions=[
            ConditionModel(
                name=c.name,
                passed=c.passed,
                residual=c.residual,
                tolerance=c.tolerance,
                required=c.required,
            )
            for c in v.conditions
        ],
    )
