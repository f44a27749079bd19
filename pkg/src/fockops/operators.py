"""Symbols (U, Gamma), their action on polynomials, and truncated matrices.

A weighted composition operator sends ``f`` to ``U * (f o Gamma)`` where
``Gamma(z) = C z + d`` is affine and ``U`` is one of the symbol shapes the
characterization theorems produce: zero, a constant, a scalar multiple of a
kernel function, or a polynomial.  On kernel functions the adjoint acts by
``conj(U(z)) * K_{Gamma(z)}``, which is what the finite matrix oracles in
this module are checked against.

Matrices are taken in the orthonormal monomial basis ``z^alpha/||z^alpha||``
up to total degree N, in graded-lex order.  Entries within the section are
exact (polynomial algebra, no quadrature); finite-section artifacts only
enter through operator products, which is why defect norms are measured on
a guard sub-block of degrees <= N - guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DegreeOverflow, DimensionMismatch, IndexOutOfRange, SingularMatrix
from .kernel import KernelEvaluator, kernel_eval, kernel_poly_coeffs
from .moments import MomentTable, monomial_norm_sq
from .multiindex import IndexSpace, index_space, space_dim

__all__ = [
    "AffineMap",
    "ZeroSymbol",
    "ConstantSymbol",
    "KernelMultipleSymbol",
    "PolynomialSymbol",
    "WeightSymbol",
    "Polynomial",
    "compose_polynomial",
    "apply_symbol",
    "symbol_eval",
    "symbol_degree",
    "symbol_as_constant",
    "symbol_to_polynomial",
    "symbol_guard",
    "adjoint_on_kernel",
    "TruncatedOperator",
    "truncated_matrix",
    "defect_self_adjoint",
    "defect_coisometry",
    "defect_isometry",
    "operator_norm",
    "solve_invertible",
]

DEFAULT_MAX_DEGREE = 512


# ---------------------------------------------------------------------------
# Affine symbol map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """Gamma(z) = linear @ z + shift on C^n.

    The literal shift is stored; callers working in the ``C z - D``
    convention negate on input.  ``linear`` must be square.
    """

    linear: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=complex)
        sh = np.asarray(self.shift, dtype=complex).reshape(-1)
        if lin.ndim != 2 or lin.shape[0] != lin.shape[1]:
            raise DimensionMismatch(f"linear part must be square, got shape {lin.shape}")
        if sh.size != lin.shape[0]:
            raise DimensionMismatch(
                f"shift length {sh.size} does not match matrix size {lin.shape[0]}"
            )
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "shift", sh)

    @property
    def n(self) -> int:
        return self.linear.shape[0]

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.size != self.n:
            raise DimensionMismatch(f"point length {z.size} != n={self.n}")
        return self.linear @ z + self.shift

    def operator_norm(self) -> float:
        return operator_norm(self.linear)

    def shift_norm(self) -> float:
        return float(np.linalg.norm(self.shift))

    def zero_preimage(self) -> np.ndarray:
        """The point Gamma maps to 0, i.e. -linear^{-1} shift."""
        return -solve_invertible(self.linear, self.shift)


def operator_norm(matrix: np.ndarray) -> float:
    """Largest singular value (explicit SVD; symbol matrices are tiny)."""
    m = np.asarray(matrix, dtype=complex)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def solve_invertible(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve matrix @ x = rhs, raising SingularMatrix if ill-posed."""
    m = np.asarray(matrix, dtype=complex)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] <= max(m.shape) * np.finfo(float).eps * 100 * max(sv[0], 1.0):
        raise SingularMatrix(f"linear part is numerically singular (smallest sv {sv[-1]:.3e})")
    return np.linalg.solve(m, np.asarray(rhs, dtype=complex).reshape(-1))


# ---------------------------------------------------------------------------
# Weight symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSymbol:
    """U identically zero."""


@dataclass(frozen=True)
class ConstantSymbol:
    value: complex


@dataclass(frozen=True)
class KernelMultipleSymbol:
    """U(z) = alpha * K_center(z)."""

    alpha: complex
    center: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=complex).reshape(-1))


@dataclass(frozen=True)
class PolynomialSymbol:
    coeffs: dict = field(default_factory=dict)  # multi-index tuple -> complex


WeightSymbol = Union[ZeroSymbol, ConstantSymbol, KernelMultipleSymbol, PolynomialSymbol]


def symbol_eval(U: WeightSymbol, z, ev: KernelEvaluator | None = None) -> complex:
    """Evaluate the multiplier at a point (kernel shapes need an evaluator)."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if isinstance(U, ZeroSymbol):
        return 0.0 + 0.0j
    if isinstance(U, ConstantSymbol):
        return complex(U.value)
    if isinstance(U, KernelMultipleSymbol):
        if ev is None:
            raise ValueError("kernel-multiple symbols need a KernelEvaluator to evaluate")
        return complex(U.alpha) * kernel_eval(ev, U.center, z)
    if isinstance(U, PolynomialSymbol):
        total = 0.0 + 0.0j
        for alpha, coef in U.coeffs.items():
            mono = 1.0 + 0.0j
            for zj, a in zip(z, alpha):
                mono *= zj**a
            total += coef * mono
        return total
    raise TypeError(f"not a weight symbol: {U!r}")


def symbol_degree(U: WeightSymbol) -> int | None:
    """Polynomial degree of the multiplier; None for entire kernel multiples."""
    if isinstance(U, ZeroSymbol):
        return 0
    if isinstance(U, ConstantSymbol):
        return 0
    if isinstance(U, KernelMultipleSymbol):
        return None if np.any(U.center != 0) else 0
    if isinstance(U, PolynomialSymbol):
        degs = [sum(a) for a, c in U.coeffs.items() if c != 0]
        return max(degs) if degs else 0
    raise TypeError(f"not a weight symbol: {U!r}")


def symbol_as_constant(U: WeightSymbol, table: MomentTable | None = None, n: int = 1):
    """Return the constant value of U when it is semantically constant, else None."""
    if isinstance(U, ZeroSymbol):
        return 0.0 + 0.0j
    if isinstance(U, ConstantSymbol):
        return complex(U.value)
    if isinstance(U, KernelMultipleSymbol):
        if U.alpha == 0:
            return 0.0 + 0.0j
        if np.all(U.center == 0):
            if table is None:
                return None
            return complex(U.alpha) / float(table.c[n - 1])
        return None
    if isinstance(U, PolynomialSymbol):
        nonconst = [a for a, c in U.coeffs.items() if sum(a) > 0 and c != 0]
        if nonconst:
            return None
        zero = next(iter(U.coeffs)) if U.coeffs else None
        const = U.coeffs.get((0,) * len(zero), 0.0) if zero is not None else 0.0
        return complex(const)
    raise TypeError(f"not a weight symbol: {U!r}")


def symbol_to_polynomial(U: WeightSymbol, ev: KernelEvaluator, max_degree: int) -> "Polynomial":
    """Polynomial form of the multiplier; kernel shapes are truncated at max_degree."""
    n = ev.n
    if isinstance(U, ZeroSymbol):
        return Polynomial(n, {})
    if isinstance(U, ConstantSymbol):
        return Polynomial(n, {(0,) * n: complex(U.value)})
    if isinstance(U, PolynomialSymbol):
        return Polynomial(n, dict(U.coeffs))
    if isinstance(U, KernelMultipleSymbol):
        coeffs = kernel_poly_coeffs(ev, U.center, max_degree)
        return Polynomial(n, {a: complex(U.alpha) * c for a, c in coeffs.items()})
    raise TypeError(f"not a weight symbol: {U!r}")


def symbol_guard(U: WeightSymbol, gamma: AffineMap) -> int:
    """Default guard band for defect norms on a finite section.

    Degree-preserving symbols (zero shift, degree-0 multiplier) need none;
    anything that couples degree blocks gets a small band so the measured
    block is clean of finite-section artifacts.
    """
    deg = symbol_degree(U)
    shifted = bool(np.any(np.abs(gamma.shift) > 0))
    if not shifted and deg == 0:
        return 0
    base = 2 if deg is None else max(deg, 2)
    return base


# ---------------------------------------------------------------------------
# Exact polynomial algebra (dict of multi-index -> coefficient)
# ---------------------------------------------------------------------------


class Polynomial:
    """Polynomial on C^n with complex coefficients over multi-indices."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = {a: c for a, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def monomial(cls, n: int, alpha: tuple[int, ...], coef: complex = 1.0) -> "Polynomial":
        return cls(n, {tuple(alpha): complex(coef)})

    @classmethod
    def constant(cls, n: int, value: complex) -> "Polynomial":
        return cls(n, {(0,) * n: complex(value)})

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0.0) + c
        return Polynomial(self.n, out)

    def scale(self, s: complex) -> "Polynomial":
        return Polynomial(self.n, {a: s * c for a, c in self.coeffs.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0.0) + ca * cb
        return Polynomial(self.n, out)

    def pow(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.n, 1.0)
        base = self
        while k > 0:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def evaluate(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        total = 0.0 + 0.0j
        for a, c in self.coeffs.items():
            mono = 1.0 + 0.0j
            for zj, aj in zip(z, a):
                mono *= zj**aj
            total += c * mono
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {self.coeffs!r})"


def compose_polynomial(f: Polynomial, gamma: AffineMap) -> Polynomial:
    """Exact expansion of f(Gamma(z)); degree never increases."""
    if gamma.n != f.n:
        raise DimensionMismatch(f"map dimension {gamma.n} != polynomial dimension {f.n}")
    n = f.n
    rows = [
        Polynomial(
            n,
            {
                **{tuple(int(k == v) for k in range(n)): gamma.linear[j, v] for v in range(n)},
                (0,) * n: gamma.shift[j],
            },
        )
        for j in range(n)
    ]
    out = Polynomial(n, {})
    # cache row powers; compositions reuse them across monomials
    pow_cache: list[dict[int, Polynomial]] = [dict() for _ in range(n)]

    def row_pow(j: int, k: int) -> Polynomial:
        if k not in pow_cache[j]:
            pow_cache[j][k] = rows[j].pow(k)
        return pow_cache[j][k]

    for alpha, coef in f.coeffs.items():
        term = Polynomial.constant(n, coef)
        for j, a in enumerate(alpha):
            if a:
                term = term * row_pow(j, a)
        out = out + term
    return out


def apply_symbol(
    U: WeightSymbol,
    gamma: AffineMap,
    f: Polynomial,
    ev: KernelEvaluator | None = None,
    kernel_truncation: int | None = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> Polynomial:
    """U * (f o Gamma) as an exact polynomial.

    Kernel-multiple U is entire, so the caller must pass a truncation degree
    (and an evaluator) to obtain a polynomial; the result is then exact in
    every coefficient below the truncation degree minus deg(f o Gamma).
    """
    composed = compose_polynomial(f, gamma)
    if isinstance(U, ZeroSymbol):
        return Polynomial(f.n, {})
    if isinstance(U, ConstantSymbol):
        result = composed.scale(complex(U.value))
    elif isinstance(U, PolynomialSymbol):
        result = Polynomial(f.n, dict(U.coeffs)) * composed
    elif isinstance(U, KernelMultipleSymbol):
        if ev is None or kernel_truncation is None:
            raise ValueError(
                "kernel-multiple symbols need ev and kernel_truncation to act on polynomials"
            )
        result = symbol_to_polynomial(U, ev, kernel_truncation) * composed
    else:
        raise TypeError(f"not a weight symbol: {U!r}")
    if result.degree() > max_degree:
        raise DegreeOverflow(f"result degree {result.degree()} exceeds max degree {max_degree}")
    return result


def adjoint_on_kernel(
    U: WeightSymbol, gamma: AffineMap, z, ev: KernelEvaluator | None = None
) -> tuple[complex, np.ndarray]:
    """The adjoint maps K_z to scalar * K_point; returns (scalar, point).

    scalar = conj(U(z)) and point = Gamma(z).
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    return np.conj(symbol_eval(U, z, ev)), gamma(z)


# ---------------------------------------------------------------------------
# Truncated matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedOperator:
    """Finite section of the operator in the orthonormal monomial basis."""

    n: int
    N: int
    index: tuple[tuple[int, ...], ...]
    matrix: np.ndarray
    guard: int = 0

    @property
    def dim(self) -> int:
        return len(self.index)

    def guard_positions(self, guard: int | None = None) -> np.ndarray:
        g = self.guard if guard is None else guard
        space = index_space(self.n, self.N)
        return space.positions_up_to(self.N - g)

    def to_json_dict(self) -> dict:
        return {
            "schema": "1",
            "n": self.n,
            "N": self.N,
            "guard": self.guard,
            "index": [list(a) for a in self.index],
            "matrix": [
                [[float(v.real), float(v.imag)] for v in row] for row in self.matrix
            ],
        }


def _norm_vector(table: MomentTable, space: IndexSpace) -> np.ndarray:
    return np.array(
        [math.sqrt(monomial_norm_sq(table, a, space.n)) for a in space.indices]
    )


def _mul_by_linear(space: IndexSpace, vec: np.ndarray, coeffs: np.ndarray, const: complex):
    """Multiply a coefficient vector by ``const + sum_v coeffs[v] * z_v``.

    Terms pushed above degree N are dropped; that loses nothing for entries
    within the section because degrees only add.
    """
    out = const * vec if const != 0 else np.zeros_like(vec)
    for v in range(space.n):
        cv = coeffs[v]
        if cv == 0:
            continue
        tgt = space.shift[v]
        ok = tgt >= 0
        # alpha -> alpha + e_v is injective, so plain fancy indexing is safe
        out[tgt[ok]] += cv * vec[ok]
    return out


def _multiplier_matrix(space: IndexSpace, u_vec: np.ndarray) -> np.ndarray:
    """Dense matrix of 'multiply by the polynomial with coefficients u_vec'."""
    dim = space.dim
    table = space.mul_table()
    M = np.zeros((dim, dim), dtype=complex)
    for j in np.nonzero(u_vec)[0]:
        tgt = table[:, j]
        ok = tgt >= 0
        M[tgt[ok], np.nonzero(ok)[0]] += u_vec[j]
    return M


def truncated_matrix(
    U: WeightSymbol,
    gamma: AffineMap,
    ev: KernelEvaluator,
    N: int,
    guard: int | None = None,
) -> TruncatedOperator:
    """Assemble M[beta, alpha] = <C_{U,Gamma} e_alpha, e_beta> for |alpha|,|beta| <= N.

    Entries are exact coefficient extractions; kernel-multiple U is truncated
    to total degree N first (which leaves entries within the section exact).
    """
    n = ev.n
    if gamma.n != n:
        raise DimensionMismatch(f"map dimension {gamma.n} != evaluator dimension {n}")
    deg_u = symbol_degree(U)
    needed = N + (deg_u if deg_u is not None else 0) + n - 1
    if needed > ev.moments.r_max:
        raise IndexOutOfRange(
            f"matrix at N={N} needs moments up to {needed} but table stops at "
            f"{ev.moments.r_max}"
        )
    space = index_space(n, N)
    dim = space.dim
    assert dim == space_dim(n, N)

    norms = _norm_vector(ev.moments, space)

    if isinstance(U, ZeroSymbol):
        M = np.zeros((dim, dim), dtype=complex)
        g = symbol_guard(U, gamma) if guard is None else guard
        return TruncatedOperator(n=n, N=N, index=space.indices, matrix=M, guard=g)

    # columns of the composition z^alpha o Gamma, built by the parent
    # recurrence col(alpha) = row_v * col(alpha - e_v)
    comp = np.zeros((dim, dim), dtype=complex)
    comp[0, 0] = 1.0
    for i, alpha in enumerate(space.indices):
        if i == 0:
            continue
        v = next(k for k, a in enumerate(alpha) if a > 0)
        parent = alpha[:v] + (alpha[v] - 1,) + alpha[v + 1 :]
        pcol = comp[:, space.position[parent]]
        comp[:, i] = _mul_by_linear(space, pcol, gamma.linear[v, :], gamma.shift[v])

    if isinstance(U, ConstantSymbol):
        B = complex(U.value) * comp
    else:
        upoly = symbol_to_polynomial(U, ev, N)
        u_vec = np.zeros(dim, dtype=complex)
        for a, c in upoly.coeffs.items():
            pos = space.position.get(a)
            if pos is None:
                raise DegreeOverflow(
                    f"multiplier degree {sum(a)} exceeds the section degree N={N}"
                )
            u_vec[pos] = c
        B = _multiplier_matrix(space, u_vec) @ comp

    M = (norms[:, None] * B) / norms[None, :]
    g = symbol_guard(U, gamma) if guard is None else guard
    return TruncatedOperator(n=n, N=N, index=space.indices, matrix=M, guard=g)


def _guard_block(T: TruncatedOperator, M: np.ndarray, guard: int | None) -> np.ndarray:
    pos = T.guard_positions(guard)
    return M[np.ix_(pos, pos)]


def defect_self_adjoint(T: TruncatedOperator, guard: int | None = None) -> float:
    """Spectral norm of (M - M*) on the guard sub-block."""
    D = T.matrix - T.matrix.conj().T
    return operator_norm(_guard_block(T, D, guard))


def defect_coisometry(T: TruncatedOperator, guard: int | None = None) -> float:
    """Spectral norm of (M M* - I) on the guard sub-block."""
    P = T.matrix @ T.matrix.conj().T - np.eye(T.dim)
    return operator_norm(_guard_block(T, P, guard))


def defect_isometry(T: TruncatedOperator, guard: int | None = None) -> float:
    """Spectral norm of (M* M - I) on the guard sub-block."""
    P = T.matrix.conj().T @ T.matrix - np.eye(T.dim)
    return operator_norm(_guard_block(T, P, guard))
