"""Surface geometry of CP^{N-1} superfield solutions.

Conserved current, induced metric, Gaussian curvature (general and holomorphic
closed form), the surface X = P - 1/N and its su(N) coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from supercurv.errors import MismatchError
from supercurv.grassmann import (
    THETA_MINUS,
    THETA_PLUS,
    Supernumber,
    align,
    g_inv,
    g_ln,
    g_mul,
    g_partial,
    g_truncate,
    point_max,
    soul_max,
    theta_component,
)
from supercurv.superfield import (
    SuperMatrix,
    SuperVector,
    align_fields,
    commutator,
    dagger,
    identity,
    inner,
    matmul,
    norm2,
    p_plus,
    partial,
    square,
    super_derivative,
    truncate,
)


@dataclass(frozen=True)
class MetricSample:
    g_pp: Supernumber
    g_mm: Supernumber
    g_pm: Supernumber


@dataclass(frozen=True)
class CurvatureSample:
    """K = K0 + i theta+ K1 + i theta- K2 - theta+ theta- K3."""

    value: Supernumber

    @property
    def body(self) -> complex:
        return self.value.value

    @property
    def k0(self) -> Supernumber:
        return theta_component(self.value)

    @property
    def k1(self) -> Supernumber:
        return theta_component(theta_component(self.value, [THETA_PLUS])) * -1j

    @property
    def k2(self) -> Supernumber:
        return theta_component(theta_component(self.value, [THETA_MINUS])) * -1j

    @property
    def k3(self) -> Supernumber:
        return -theta_component(self.value, [THETA_PLUS, THETA_MINUS])

    @property
    def soul_max(self) -> float:
        return soul_max(self.value)

    @property
    def theta_soul_max(self) -> float:
        return max(point_max(self.k1), point_max(self.k2), point_max(self.k3))


@dataclass(frozen=True)
class EmbeddedPoint:
    coords: np.ndarray

    @property
    def norm2(self) -> float:
        return float(np.dot(self.coords, self.coords))


def expected_curvature(n: int, k: int) -> float:
    """Curvature of the k-th projector built on the Veronese curve in CP^{N-1}."""
    return 4 / (n - 1 + 2 * k * (n - 1 - k))


# projector-formalism equations


def el_commutator(P: SuperMatrix) -> SuperMatrix:
    """[D+ D- P, P]; vanishes for solutions of the Euler-Lagrange equations."""
    ddp = super_derivative(super_derivative(P, "-"), "+")
    ddp, P = align_fields(ddp, P)
    return commutator(ddp, P)


def susy_conservation(P: SuperMatrix) -> SuperMatrix:
    """D+ [D- P, P] - D- [D+ P, P]."""
    dm, pm = align_fields(super_derivative(P, "-"), P)
    dp, pp = align_fields(super_derivative(P, "+"), P)
    left = super_derivative(commutator(dm, pm), "+")
    right = super_derivative(commutator(dp, pp), "-")
    left, right = align_fields(left, right)
    return left - right


def current_L(P: SuperMatrix) -> SuperMatrix:
    """L = [d- P, P] - 2i (D- P)^2, one x- order lower than P."""
    dm = partial(P, "minus")
    dsm = super_derivative(P, "-")
    dm, dsm, P = align_fields(dm, dsm, P)
    return commutator(dm, P) - 2j * matmul(dsm, dsm)


def conservation_residual(P: SuperMatrix) -> SuperMatrix:
    """d+ L - d- L^dagger."""
    L = square(current_L(P))
    a, b = align_fields(partial(L, "plus"), partial(dagger(L), "minus"))
    return a - b


# metric and curvature


def _restricted(a: SuperVector, b: SuperVector, w: SuperVector, inv_n2: Supernumber) -> Supernumber:
    """a^dagger (1 - P) b with P the projector on w."""
    return inner(a, b) - g_mul(g_mul(inner(a, w), inner(w, b)), inv_n2)


def metric(w: SuperVector) -> MetricSample:
    w = square(w)
    d = min(w.orders) - 1
    target = (d, d)
    dp = truncate(partial(w, "plus"), target)
    dm = truncate(partial(w, "minus"), target)
    w = truncate(w, target)
    inv_n2 = g_inv(norm2(w))
    # d+(w^dagger) = (d- w)^dagger
    g_pp = -g_mul(inv_n2, _restricted(dm, dp, w, inv_n2))
    g_mm = -g_mul(inv_n2, _restricted(dp, dm, w, inv_n2))
    g_pm = g_mul(inv_n2 * 0.5, _restricted(dm, dm, w, inv_n2) + _restricted(dp, dp, w, inv_n2))
    return MetricSample(g_pp=g_pp, g_mm=g_mm, g_pm=g_pm)


def conformality_residual(m: MetricSample) -> float:
    return max(point_max(m.g_pp), point_max(m.g_mm))


def curvature(g_pm: Supernumber) -> CurvatureSample:
    """K = -(1/g) d+ d- ln g from the local jet of g+-; two orders lower than g."""
    dd = g_partial(g_partial(g_ln(g_pm), "plus"), "minus")
    g = g_truncate(g_pm, dd.orders)
    return CurvatureSample(-g_mul(g_inv(g), dd))


def curvature_of(w: SuperVector) -> CurvatureSample:
    return curvature(metric(w).g_pm)


def curvature_components(K: CurvatureSample) -> tuple[Supernumber, Supernumber, Supernumber, Supernumber]:
    """(K0, K1, K2, K3) with K = K0 + i theta+ K1 + i theta- K2 - theta+ theta- K3."""
    return K.k0, K.k1, K.k2, K.k3


def curvature_holomorphic(w: SuperVector) -> CurvatureSample:
    """K = 4 - 2 |w|^2 |P+^2 w|^2 / |P+ w|^4, valid for holomorphic w."""
    w = square(w)
    first = p_plus(w)
    second = p_plus(first)
    n0, n1, n2 = align(norm2(w), norm2(first), norm2(second))
    inv1 = g_inv(n1)
    return CurvatureSample(4 - 2 * g_mul(g_mul(n0, n2), g_mul(inv1, inv1)))


# surface and su(N) embedding


def surface_X(P: SuperMatrix) -> SuperMatrix:
    n = P.shape[0]
    return P - (1 / n) * identity(n, P.config, P.base_point, P.orders)


def surface_derivative_residual(P: SuperMatrix) -> SuperMatrix:
    """d- X + L, zero for holomorphic solutions."""
    dx, L = align_fields(partial(surface_X(P), "minus"), current_L(P))
    return dx + L


def su_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis of su(N) under (A, B) = Tr(AB)/2: diagonal K_i, then K_ij^R, K_ij^C for i > j."""
    basis = []
    for i in range(1, n):
        k = np.zeros((n, n), dtype=np.complex128)
        k[:i, :i] = np.eye(i)
        k[i, i] = -i
        basis.append(k * sqrt(2) / sqrt(i * (i + 1)))
    for i in range(1, n):
        for j in range(i):
            real = np.zeros((n, n), dtype=np.complex128)
            real[i, j] = real[j, i] = 1
            imag = np.zeros((n, n), dtype=np.complex128)
            imag[i, j] = 1j
            imag[j, i] = -1j
            basis += [real, imag]
    return basis


def embed(X: SuperMatrix | np.ndarray, tol: float = 1e-10) -> EmbeddedPoint:
    """Coordinates a = Tr(X K)/2 of the body of X in the su(N) basis."""
    body = X.body_values() if isinstance(X, SuperMatrix) else np.asarray(X, dtype=np.complex128)
    if abs(np.trace(body)) > tol:
        raise MismatchError(f"embedding needs a traceless matrix, trace is {np.trace(body)!r}")
    coords = np.array([0.5 * np.trace(body @ k).real for k in su_basis(body.shape[0])])
    return EmbeddedPoint(coords)


def sphere_radius2(n: int) -> float:
    return 0.5 * (1 - 1 / n)


def cp1_coordinates(W: complex) -> np.ndarray:
    """Closed-form su(2) coordinates of the CP^1 surface through w = (1, W)."""
    r = abs(W) ** 2
    return np.array([(1 - r) / (2 * (1 + r)), W.real / (1 + r), W.imag / (1 + r)])
