"""Superfield vectors and matrices for the CP^{N-1} model.

Holds the curve builders (Veronese, GSV, polynomial superfields), the inner
product, the P+ orthogonalization tower, rank-one projectors and the odd
operators D+- (superderivatives) and Q+- (supercharges).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from math import comb, sqrt
from numbers import Number
from typing import Literal

import numpy as np
from numpy.polynomial import polynomial as npoly
from pydantic import BaseModel, Field, model_validator

from supercurv.errors import MismatchError, ParityError, TruncationError
from supercurv.grassmann import (
    DEFAULT_ALGEBRA,
    THETA_MINUS,
    THETA_PLUS,
    AlgebraConfig,
    Supernumber,
    common_orders,
    g_add,
    g_const,
    g_dagger,
    g_from_jet,
    g_generator,
    g_inv,
    g_max_abs,
    g_mul,
    g_partial,
    g_theta_derivative,
    g_truncate,
    g_zero,
    odd_algebra,
    point_max,
)
from supercurv.jet import Jet2, Orders, Variable, jet_polynomial

Sign = Literal["+", "-"]


@dataclass(frozen=True, eq=False)
class SuperVector:
    entries: tuple[Supernumber, ...]

    __array_ufunc__ = None

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        if not entries:
            raise MismatchError("a SuperVector needs at least one entry")
        first = entries[0]
        for e in entries[1:]:
            if e.config != first.config or e.base_point != first.base_point or e.orders != first.orders:
                raise MismatchError("vector entries must share algebra, base point and orders")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def config(self) -> AlgebraConfig:
        return self.entries[0].config

    @property
    def base_point(self) -> complex:
        return self.entries[0].base_point

    @property
    def orders(self) -> Orders:
        return self.entries[0].orders

    def __len__(self) -> int:
        return self.dim

    def __getitem__(self, i: int) -> Supernumber:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: SuperVector) -> SuperVector:
        _check_dims(self, other)
        return SuperVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: SuperVector) -> SuperVector:
        _check_dims(self, other)
        return SuperVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> SuperVector:
        return SuperVector(tuple(-a for a in self.entries))

    def __rmul__(self, c) -> SuperVector:
        if isinstance(c, (Supernumber, Jet2, Number)):
            return SuperVector(tuple(c * a for a in self.entries))
        return NotImplemented

    def __mul__(self, c) -> SuperVector:
        if isinstance(c, (Supernumber, Jet2, Number)):
            return SuperVector(tuple(a * c for a in self.entries))
        return NotImplemented

    def body_values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class SuperMatrix:
    entries: tuple[tuple[Supernumber, ...], ...]

    __array_ufunc__ = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise MismatchError("a SuperMatrix needs equal, non-empty rows")
        SuperVector(tuple(e for r in rows for e in r))
        object.__setattr__(self, "entries", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]))

    @property
    def config(self) -> AlgebraConfig:
        return self.entries[0][0].config

    @property
    def base_point(self) -> complex:
        return self.entries[0][0].base_point

    @property
    def orders(self) -> Orders:
        return self.entries[0][0].orders

    def __getitem__(self, ij: tuple[int, int]) -> Supernumber:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: SuperMatrix) -> SuperMatrix:
        _check_shapes(self, other)
        return SuperMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: SuperMatrix) -> SuperMatrix:
        _check_shapes(self, other)
        return SuperMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> SuperMatrix:
        return SuperMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def __rmul__(self, c) -> SuperMatrix:
        if isinstance(c, (Supernumber, Jet2, Number)):
            return SuperMatrix(tuple(tuple(c * a for a in r) for r in self.entries))
        return NotImplemented

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        return matmul(self, other)

    def body_values(self) -> np.ndarray:
        return np.array([[e.value for e in r] for r in self.entries], dtype=np.complex128)


SuperField = Supernumber | SuperVector | SuperMatrix


def _check_dims(a: SuperVector, b: SuperVector) -> None:
    if a.dim != b.dim:
        raise MismatchError(f"vector dimensions differ: {a.dim} vs {b.dim}")


def _check_shapes(a: SuperMatrix, b: SuperMatrix) -> None:
    if a.shape != b.shape:
        raise MismatchError(f"matrix shapes differ: {a.shape} vs {b.shape}")


def fmap(f: Callable[[Supernumber], Supernumber], x: SuperField) -> SuperField:
    """Apply f to every Supernumber inside x."""
    if isinstance(x, Supernumber):
        return f(x)
    if isinstance(x, SuperVector):
        return SuperVector(tuple(f(e) for e in x.entries))
    if isinstance(x, SuperMatrix):
        return SuperMatrix(tuple(tuple(f(e) for e in r) for r in x.entries))
    raise TypeError(f"not a superfield: {type(x).__name__}")


def _flat(x: SuperField) -> list[Supernumber]:
    if isinstance(x, Supernumber):
        return [x]
    if isinstance(x, SuperVector):
        return list(x.entries)
    return [e for r in x.entries for e in r]


def partial(x: SuperField, wrt: Variable) -> SuperField:
    return fmap(lambda e: g_partial(e, wrt), x)


def truncate(x: SuperField, orders: Orders) -> SuperField:
    return fmap(lambda e: g_truncate(e, orders), x)


def align_fields(*xs: SuperField) -> list[SuperField]:
    target = common_orders(*(x.orders for x in xs))
    return [truncate(x, target) for x in xs]


def square(x: SuperField) -> SuperField:
    d = min(x.orders)
    return truncate(x, (d, d))


def dagger(x: SuperField) -> SuperField:
    """Hermitian conjugate; a vector's dagger is returned as its conjugated entries."""
    if isinstance(x, SuperMatrix):
        n, m = x.shape
        return SuperMatrix(tuple(tuple(g_dagger(x.entries[j][i]) for j in range(n)) for i in range(m)))
    return fmap(g_dagger, x)


def point_residual(x: SuperField) -> float:
    """Largest monomial coefficient magnitude at the base point over all entries."""
    return max(point_max(e) for e in _flat(x))


def max_abs(x: SuperField) -> float:
    """Largest coefficient magnitude over all entries, monomials and jet entries."""
    return max(g_max_abs(e) for e in _flat(x))


# matrix algebra


def identity(n: int, config: AlgebraConfig, p: complex, orders: Orders) -> SuperMatrix:
    one, zero = g_const(1, config, p, orders), g_zero(config, p, orders)
    return SuperMatrix(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))


def constant_matrix(values: np.ndarray, config: AlgebraConfig, p: complex, orders: Orders) -> SuperMatrix:
    return SuperMatrix(tuple(tuple(g_const(complex(v), config, p, orders) for v in row) for row in np.asarray(values)))


def matmul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    (n, k), (k2, m) = a.shape, b.shape
    if k != k2:
        raise MismatchError(f"cannot multiply {a.shape} by {b.shape}")
    rows = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = g_mul(a.entries[i][0], b.entries[0][j])
            for t in range(1, k):
                acc = g_add(acc, g_mul(a.entries[i][t], b.entries[t][j]))
            row.append(acc)
        rows.append(tuple(row))
    return SuperMatrix(tuple(rows))


def mat_vec(a: SuperMatrix, v: SuperVector) -> SuperVector:
    n, k = a.shape
    if k != v.dim:
        raise MismatchError(f"cannot apply a {a.shape} matrix to a vector of dimension {v.dim}")
    out = []
    for i in range(n):
        acc = g_mul(a.entries[i][0], v.entries[0])
        for t in range(1, k):
            acc = g_add(acc, g_mul(a.entries[i][t], v.entries[t]))
        out.append(acc)
    return SuperVector(tuple(out))


def commutator(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    return matmul(a, b) - matmul(b, a)


def trace(a: SuperMatrix) -> Supernumber:
    acc = a.entries[0][0]
    for i in range(1, a.shape[0]):
        acc = acc + a.entries[i][i]
    return acc


def outer(a: SuperVector, b: SuperVector) -> SuperMatrix:
    """a b^dagger."""
    bd = [g_dagger(e) for e in b.entries]
    return SuperMatrix(tuple(tuple(g_mul(x, y) for y in bd) for x in a.entries))


# inner products and the P+ tower


def inner(a: SuperVector, b: SuperVector) -> Supernumber:
    """a^dagger b."""
    _check_dims(a, b)
    acc = g_mul(g_dagger(a.entries[0]), b.entries[0])
    for x, y in zip(a.entries[1:], b.entries[1:]):
        acc = g_add(acc, g_mul(g_dagger(x), y))
    return acc


def norm2(a: SuperVector) -> Supernumber:
    return inner(a, a)


def p_plus(w: SuperVector) -> SuperVector:
    """P+ w = d+ w - (w^dagger d+ w / |w|^2) w, returned at square orders one lower."""
    d = min(w.orders) - 1
    if d < 0:
        raise TruncationError(f"P+ needs at least one order in x+, got {w.orders}")
    dw = truncate(partial(w, "plus"), (d, d))
    w = truncate(w, (d, d))
    coeff = g_mul(inner(w, dw), g_inv(norm2(w)))
    return dw - coeff * w


def p_plus_k(w: SuperVector, k: int) -> SuperVector:
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        w = p_plus(w)
    return square(w) if k == 0 else w


def tower(w: SuperVector, depth: int | None = None) -> list[SuperVector]:
    """[w, P+ w, ..., P+^depth w]; depth defaults to N-1."""
    depth = w.dim - 1 if depth is None else depth
    out = [square(w)]
    for _ in range(depth):
        out.append(p_plus(out[-1]))
    return out


def projector(w: SuperVector) -> SuperMatrix:
    """Canonical rank-one projector w w^dagger / |w|^2."""
    w = square(w)
    return g_inv(norm2(w)) * outer(w, w)


def projector_k(w: SuperVector, k: int) -> SuperMatrix:
    return projector(p_plus_k(w, k))


def grassmannian_projector(ws: Sequence[SuperVector]) -> SuperMatrix:
    """Sum of the rank-one projectors of mutually orthogonal vectors."""
    ps = align_fields(*(projector(w) for w in ws))
    total = ps[0]
    for p in ps[1:]:
        total = total + p
    return total


def orthogonalized_family(phis: Sequence[SuperVector]) -> list[SuperVector]:
    """w_0 = phi_0, w_i = (1 - sum_{j<i} P(w_j)) phi_i."""
    phis = [square(v) for v in align_fields(*phis)]
    ws = [phis[0]]
    for phi in phis[1:]:
        ws.append(phi - mat_vec(grassmannian_projector(ws), phi))
    return ws


# superderivatives and supercharges


def _odd_operator(x: SuperField, sign: Sign, theta_factor: complex) -> SuperField:
    gen = THETA_PLUS if sign == "+" else THETA_MINUS
    wrt: Variable = "plus" if sign == "+" else "minus"

    def apply(e: Supernumber) -> Supernumber:
        dx = g_partial(e, wrt)
        dtheta = g_truncate(g_theta_derivative(e, gen), dx.orders)
        theta = g_generator(gen, e.config, e.base_point, dx.orders)
        return dtheta * theta_factor + g_mul(theta, dx)

    return fmap(apply, x)


def super_derivative(x: SuperField, sign: Sign) -> SuperField:
    """D+- = -i d/dtheta+- + theta+- d/dx+-, entrywise; lowers the matching order by one."""
    return _odd_operator(x, sign, -1j)


def supercharge(x: SuperField, sign: Sign) -> SuperField:
    """Q+- = i d/dtheta+- + theta+- d/dx+-, entrywise."""
    return _odd_operator(x, sign, 1j)


# curve builders


def polynomial_vector(
    components: Sequence[Sequence[complex]],
    p: complex,
    orders: Orders,
    config: AlgebraConfig = DEFAULT_ALGEBRA,
) -> SuperVector:
    """Even holomorphic vector with polynomial components in x+ (ascending coefficients)."""
    return SuperVector(tuple(g_from_jet(jet_polynomial(c, p, orders), config) for c in components))


def odd_polynomial(
    coeffs: Sequence[complex],
    generator: str,
    p: complex,
    orders: Orders,
    config: AlgebraConfig,
) -> Supernumber:
    """q(x+) * generator for a complex polynomial q."""
    return g_mul(g_from_jet(jet_polynomial(coeffs, p, orders), config), g_generator(generator, config, p, orders))


def veronese_components(n: int) -> list[list[complex]]:
    return [[0.0] * r + [sqrt(comb(n - 1, r))] for r in range(n)]


def veronese(n: int, p: complex, orders: Orders, config: AlgebraConfig = DEFAULT_ALGEBRA) -> SuperVector:
    if n < 2:
        raise ValueError("N must be at least 2")
    return polynomial_vector(veronese_components(n), p, orders, config)


CurveEvaluator = Callable[[complex, Orders, AlgebraConfig], SuperVector]


def veronese_evaluator(n: int) -> CurveEvaluator:
    return lambda p, orders, config: veronese(n, p, orders, config)


def susy_shift(curve: CurveEvaluator, xi1: Supernumber) -> SuperVector:
    """w(y+) with y+ = x+ + i theta+ xi1/sqrt(N-1), by the exact nilpotent Taylor step.

    The curve is evaluated one x+ order higher so its derivative keeps the orders of xi1.
    """
    if xi1.terms and xi1.parity != 1:
        raise ParityError("the translation parameter must be odd")
    p, (d_plus, d_minus) = xi1.base_point, xi1.orders
    high = curve(p, (d_plus + 1, d_minus), xi1.config)
    w = truncate(high, xi1.orders)
    dw = partial(high, "plus")
    theta = g_generator(THETA_PLUS, xi1.config, p, xi1.orders)
    step = g_mul(theta, xi1) * (1j / sqrt(w.dim - 1))
    return w + step * dw


def gsv_curve(n: int, xi1: Supernumber) -> SuperVector:
    """Generalized SUSY Veronese curve u + i theta+ (xi1/sqrt(N-1)) d+ u at xi1's base point."""
    return susy_shift(veronese_evaluator(n), xi1)


class CurveSpec(BaseModel):
    """Serialized description of a holomorphic superfield w = u + i theta+ xi.

    ``xi = sum_i phi_i(x+) d+^i u + eps * v(x+)`` where every ``phi_i`` and the
    gsv ``xi1`` are polynomials multiplying the odd generator.
    """

    kind: Literal["veronese", "gsv", "custom"] = "veronese"
    n: int
    components: list[list[complex]] | None = None
    xi1: list[complex] = Field(default_factory=list)
    phi: dict[int, list[complex]] = Field(default_factory=dict)
    odd_vector: list[list[complex]] | None = None
    odd_generator: str = "eps1"

    @model_validator(mode="after")
    def _check(self) -> CurveSpec:
        if self.n < 2:
            raise ValueError("N must be at least 2")
        if self.kind == "custom":
            if self.components is None or len(self.components) != self.n:
                raise ValueError(f"a custom curve needs exactly {self.n} polynomial components")
        elif self.components is not None:
            raise ValueError(f"{self.kind} curves take no custom components")
        if self.kind != "gsv" and any(self.xi1):
            raise ValueError("xi1 is only meaningful for gsv curves")
        for i, coeffs in self.phi.items():
            if i == 0 and any(coeffs):
                raise ValueError("phi_0 must vanish (gauge choice)")
            if not 0 <= i <= self.n - 1:
                raise ValueError(f"phi index {i} outside 1..{self.n - 1}")
        if self.odd_vector is not None and len(self.odd_vector) != self.n:
            raise ValueError(f"odd_vector needs {self.n} components")
        return self

    @property
    def has_odd_part(self) -> bool:
        return any(self.xi1) or any(any(c) for c in self.phi.values()) or self.odd_vector is not None

    def algebra(self) -> AlgebraConfig:
        return odd_algebra(1) if self.has_odd_part else DEFAULT_ALGEBRA

    def u_components(self) -> list[list[complex]]:
        return self.components if self.components is not None else veronese_components(self.n)

    def phi_terms(self) -> list[tuple[int, list[complex]]]:
        terms = [(i, c) for i, c in sorted(self.phi.items()) if i and any(c)]
        if any(self.xi1):
            terms.append((1, [complex(c) / sqrt(self.n - 1) for c in self.xi1]))
        return terms


def _derivative_components(components: Iterable[Sequence[complex]], i: int) -> list[np.ndarray]:
    return [npoly.polyder(np.asarray(c, dtype=np.complex128), i) if len(c) > i else np.zeros(1) for c in components]


def odd_direction(spec: CurveSpec, p: complex, orders: Orders, config: AlgebraConfig | None = None) -> SuperVector:
    """The odd vector xi of w = u + i theta+ xi."""
    config = config or spec.algebra()
    comps = spec.u_components()
    xi = SuperVector(tuple(g_zero(config, p, orders) for _ in range(spec.n)))
    for i, coeffs in spec.phi_terms():
        phi = odd_polynomial(coeffs, spec.odd_generator, p, orders, config)
        xi = xi + phi * polynomial_vector(_derivative_components(comps, i), p, orders, config)
    if spec.odd_vector is not None:
        eps = g_generator(spec.odd_generator, config, p, orders)
        xi = xi + eps * polynomial_vector(spec.odd_vector, p, orders, config)
    return xi


def build_curve(spec: CurveSpec, p: complex, orders: Orders, config: AlgebraConfig | None = None) -> SuperVector:
    config = config or spec.algebra()
    u = polynomial_vector(spec.u_components(), p, orders, config)
    if not spec.has_odd_part:
        return u
    theta = g_generator(THETA_PLUS, config, p, orders)
    return u + (theta * 1j) * odd_direction(spec, p, orders, config)


def curve_evaluator(spec: CurveSpec) -> CurveEvaluator:
    return lambda p, orders, config: build_curve(spec, p, orders, config)


def derivative_vectors(curve: CurveEvaluator, p: complex, orders: Orders, config: AlgebraConfig, count: int) -> list[SuperVector]:
    """[w, d+ w, ..., d+^(count-1) w], all at the requested orders."""
    high = curve(p, (orders[0] + count - 1, orders[1]), config)
    out = []
    for _ in range(count):
        out.append(truncate(high, orders))
        if len(out) < count:
            high = partial(high, "plus")
    return out


def derivative_matrix(u: SuperVector) -> np.ndarray:
    """Body matrix whose i-th column is d+^i u at the base point."""
    n = u.dim
    if u.orders[0] < n - 1:
        raise TruncationError(f"need x+ order {n - 1} for the derivative matrix, got {u.orders}")
    return np.array([[e.body.derivative(i, 0) for i in range(n)] for e in u.entries], dtype=np.complex128)


def nholoinv_expansion(field: SuperField, xi1: Supernumber, n: int) -> SuperField:
    """F(y+, y-) for a theta-free field F, y+ = x+ + i theta+ zeta, y- = y+^dagger, zeta = xi1/sqrt(N-1).

    Returned one order lower in both variables.
    """
    if xi1.terms and xi1.parity != 1:
        raise ParityError("the translation parameter must be odd")
    field = square(field)
    d = min(field.orders) - 1
    if d < 0:
        raise TruncationError("the SUSY translation needs one order in each variable")
    zeta = g_truncate(xi1, field.orders) * (1 / sqrt(n - 1))
    theta = g_generator(THETA_PLUS, zeta.config, zeta.base_point, zeta.orders)
    shift_plus = g_mul(theta, zeta) * 1j
    shift_minus = g_dagger(shift_plus)
    shift_both = g_mul(shift_plus, shift_minus)
    d_plus = partial(field, "plus")
    d_minus = partial(field, "minus")
    d_both = partial(d_plus, "minus")
    target = (d, d)

    def lower(x):
        return truncate(x, target)

    def t(s):
        return g_truncate(s, target)

    return lower(field) + t(shift_plus) * lower(d_plus) + t(shift_minus) * lower(d_minus) + t(shift_both) * lower(d_both)


def random_curve_spec(
    rng: np.random.Generator,
    n: int,
    degree: int = 3,
    odd: bool = True,
) -> CurveSpec:
    """Random holomorphic polynomial curve in the gauge u_0 = 1, optionally with a random odd part.

    Components have degree at least N - 1 so that the curve spans C^N and its
    whole P+ tower is nondegenerate.
    """
    degree = max(degree, n - 1)

    def poly(deg: int) -> list[complex]:
        re, im = rng.normal(size=deg + 1), rng.normal(size=deg + 1)
        return [complex(a, b) for a, b in zip(re, im)]

    components = [[1.0 + 0j]] + [poly(degree) for _ in range(n - 1)]
    odd_vector = [poly(1) for _ in range(n)] if odd else None
    return CurveSpec(kind="custom", n=n, components=components, odd_vector=odd_vector)
