"""Truncated bivariate Taylor jets in x+ and x-.

A ``Jet2`` anchored at ``p`` stores ``c[a][b] = d+^a d-^b f / (a! b!)`` evaluated at
``(x+, x-) = (p, conj(p))``. Every operation returns a new jet; arithmetic between
two jets is strict about base point and orders, use ``jet_truncate`` to align.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import factorial
from numbers import Number
from typing import Literal

import numpy as np
from numpy.polynomial import polynomial as npoly

from supercurv.config import SINGULAR_EPS
from supercurv.errors import MismatchError, SingularJetError, TruncationError

Variable = Literal["plus", "minus"]
Orders = tuple[int, int]
Scalar = int | float | complex


@dataclass(frozen=True, eq=False)
class Jet2:
    base_point: complex
    coeffs: np.ndarray

    __array_ufunc__ = None

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.ndim != 2 or min(arr.shape) < 1:
            raise MismatchError(f"jet coefficients must be a non-empty 2-d array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "base_point", complex(self.base_point))

    @property
    def orders(self) -> Orders:
        return (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1)

    @property
    def value(self) -> complex:
        """Value of the function at the base point."""
        return complex(self.coeffs[0, 0])

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def derivative(self, n_plus: int, n_minus: int) -> complex:
        """d+^n_plus d-^n_minus f at the base point."""
        return complex(self.coeffs[n_plus, n_minus]) * factorial(n_plus) * factorial(n_minus)

    def _coerce(self, other) -> Jet2 | None:
        if isinstance(other, Jet2):
            return other
        if isinstance(other, Number):
            return jet_const(other, self.base_point, self.orders)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else jet_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else jet_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else jet_sub(other, self)

    def __neg__(self) -> Jet2:
        return jet_neg(self)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return jet_mul(self, other)
        if isinstance(other, Number):
            return jet_scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return jet_div(self, other)
        if isinstance(other, Number):
            return jet_scale(self, 1 / complex(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Number):
            return jet_scale(jet_inv(self), other)
        return NotImplemented

    def __pow__(self, n: int) -> Jet2:
        return jet_pow(self, n)

    def __repr__(self) -> str:
        return f"Jet2(base_point={self.base_point!r}, orders={self.orders}, value={self.value!r})"


def _check_orders(orders: Orders) -> Orders:
    d_plus, d_minus = (int(o) for o in orders)
    if d_plus < 0 or d_minus < 0:
        raise TruncationError(f"jet orders must be non-negative, got {orders}")
    return d_plus, d_minus


def _check_same(a: Jet2, b: Jet2) -> None:
    if a.base_point != b.base_point:
        raise MismatchError(f"base points differ: {a.base_point} vs {b.base_point}")
    if a.orders != b.orders:
        raise MismatchError(f"jet orders differ: {a.orders} vs {b.orders}")


def jet_const(v: Scalar, p: complex, orders: Orders) -> Jet2:
    d_plus, d_minus = _check_orders(orders)
    c = np.zeros((d_plus + 1, d_minus + 1), dtype=np.complex128)
    c[0, 0] = v
    return Jet2(p, c)


def jet_zero(p: complex, orders: Orders) -> Jet2:
    return jet_const(0, p, orders)


def jet_variable(which: Variable, p: complex, orders: Orders) -> Jet2:
    d_plus, d_minus = _check_orders(orders)
    c = np.zeros((d_plus + 1, d_minus + 1), dtype=np.complex128)
    if which == "plus":
        if d_plus == 0:
            raise TruncationError("x+ needs order >= 1 in the plus variable")
        c[0, 0] = p
        c[1, 0] = 1
    elif which == "minus":
        if d_minus == 0:
            raise TruncationError("x- needs order >= 1 in the minus variable")
        c[0, 0] = complex(p).conjugate()
        c[0, 1] = 1
    else:
        raise ValueError(f"unknown variable {which!r}")
    return Jet2(p, c)


def jet_polynomial(coeffs, p: complex, orders: Orders, which: Variable = "plus") -> Jet2:
    """Exact jet of sum_n coeffs[n] * x^n in one variable (ascending coefficients)."""
    d_plus, d_minus = _check_orders(orders)
    poly = np.asarray(list(coeffs) or [0], dtype=np.complex128)
    at = complex(p) if which == "plus" else complex(p).conjugate()
    depth = d_plus if which == "plus" else d_minus
    taylor = np.zeros(depth + 1, dtype=np.complex128)
    current = poly
    for a in range(depth + 1):
        taylor[a] = npoly.polyval(at, current) / factorial(a)
        current = npoly.polyder(current) if len(current) > 1 else np.zeros(1, dtype=np.complex128)
    c = np.zeros((d_plus + 1, d_minus + 1), dtype=np.complex128)
    if which == "plus":
        c[:, 0] = taylor
    else:
        c[0, :] = taylor
    return Jet2(p, c)


def jet_add(a: Jet2, b: Jet2) -> Jet2:
    _check_same(a, b)
    return Jet2(a.base_point, a.coeffs + b.coeffs)


def jet_sub(a: Jet2, b: Jet2) -> Jet2:
    _check_same(a, b)
    return Jet2(a.base_point, a.coeffs - b.coeffs)


def jet_neg(a: Jet2) -> Jet2:
    return Jet2(a.base_point, -a.coeffs)


def jet_scale(a: Jet2, s: Scalar) -> Jet2:
    return Jet2(a.base_point, complex(s) * a.coeffs)


def _cauchy(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # rows are laid out with stride 2*e+1 so the 1-d convolution never wraps a column
    rows, cols = x.shape
    stride = 2 * cols - 1
    xf = np.zeros((rows, stride), dtype=np.complex128)
    yf = np.zeros((rows, stride), dtype=np.complex128)
    xf[:, :cols] = x
    yf[:, :cols] = y
    full = np.convolve(xf.ravel(), yf.ravel())[: rows * stride]
    return full.reshape(rows, stride)[:, :cols]


def jet_mul(a: Jet2, b: Jet2) -> Jet2:
    _check_same(a, b)
    return Jet2(a.base_point, _cauchy(a.coeffs, b.coeffs))


def _split_body(a: Jet2, op: str) -> tuple[complex, Jet2]:
    c00 = a.value
    if abs(c00) <= SINGULAR_EPS:
        raise SingularJetError(f"{op} of a jet with vanishing value {c00!r} at {a.base_point!r}", a.base_point)
    s = Jet2(a.base_point, a.coeffs / c00)
    return c00, s - 1


def _series_length(a: Jet2) -> int:
    return sum(a.orders)


def jet_inv(a: Jet2) -> Jet2:
    c00, s = _split_body(a, "inverse")
    result = jet_const(1, a.base_point, a.orders)
    for _ in range(_series_length(a)):
        result = 1 - s * result
    return result / c00


def jet_div(a: Jet2, b: Jet2) -> Jet2:
    return jet_mul(a, jet_inv(b))


def jet_ln(a: Jet2) -> Jet2:
    """Principal-branch logarithm: log(c00) + log1p(a/c00 - 1)."""
    c00, s = _split_body(a, "logarithm")
    n = _series_length(a)
    if n == 0:
        return jet_const(cmath.log(c00), a.base_point, a.orders)
    r = jet_const(1 / n, a.base_point, a.orders)
    for k in range(n - 1, 0, -1):
        r = 1 / k - s * r
    return s * r + cmath.log(c00)


def jet_exp(a: Jet2) -> Jet2:
    c00 = a.value
    s = a - c00
    result = jet_const(1, a.base_point, a.orders)
    for k in range(_series_length(a), 0, -1):
        result = 1 + s * result / k
    return result * cmath.exp(c00)


def jet_pow(a: Jet2, n: int) -> Jet2:
    if n < 0:
        return jet_pow(jet_inv(a), -n)
    result = jet_const(1, a.base_point, a.orders)
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def jet_partial(a: Jet2, wrt: Variable) -> Jet2:
    d_plus, d_minus = a.orders
    if wrt == "plus":
        if d_plus == 0:
            raise TruncationError("no x+ order left to differentiate")
        factors = np.arange(1, d_plus + 1)[:, None]
        return Jet2(a.base_point, a.coeffs[1:, :] * factors)
    if wrt == "minus":
        if d_minus == 0:
            raise TruncationError("no x- order left to differentiate")
        factors = np.arange(1, d_minus + 1)[None, :]
        return Jet2(a.base_point, a.coeffs[:, 1:] * factors)
    raise ValueError(f"unknown variable {wrt!r}")


def jet_dagger(a: Jet2) -> Jet2:
    d_plus, d_minus = a.orders
    if d_plus != d_minus:
        raise MismatchError(f"dagger needs square orders, got {a.orders}")
    return Jet2(a.base_point, np.conj(a.coeffs.T))


def jet_truncate(a: Jet2, orders: Orders) -> Jet2:
    d_plus, d_minus = _check_orders(orders)
    if d_plus > a.orders[0] or d_minus > a.orders[1]:
        raise TruncationError(f"cannot raise jet orders from {a.orders} to {orders}")
    if (d_plus, d_minus) == a.orders:
        return a
    return Jet2(a.base_point, a.coeffs[: d_plus + 1, : d_minus + 1])


def jet_max_abs_diff(a: Jet2, b: Jet2) -> float:
    _check_same(a, b)
    return float(np.max(np.abs(a.coeffs - b.coeffs)))
