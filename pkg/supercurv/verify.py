"""Pass/fail checkers for the identities and theorems of the supersymmetric CP^{N-1} model.

Every checker samples seeded points on the annulus, evaluates residual norms at
each point and returns a ``VerificationReport``. Negative controls are reports
with ``expect="fail"``: they meet expectation when a control residual exceeds
the negative threshold.
"""

from __future__ import annotations

import cmath
import time
import zlib
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial, pi, sqrt
from typing import Any, Literal

import numpy as np
from loguru import logger

from supercurv.config import (
    ANNULUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MAX_RESAMPLES,
    RunConfig,
    Tolerances,
    auto_orders,
)
from supercurv.errors import ResampleExhaustedError, SingularJetError
from supercurv.geometry import (
    conformality_residual,
    conservation_residual,
    curvature,
    curvature_components,
    curvature_holomorphic,
    cp1_coordinates,
    el_commutator,
    embed,
    expected_curvature,
    metric,
    sphere_radius2,
    surface_derivative_residual,
    surface_X,
    susy_conservation,
)
from supercurv.grassmann import (
    THETA_MINUS,
    THETA_PLUS,
    Supernumber,
    align,
    g_add,
    g_const,
    g_dagger,
    g_from_jet,
    g_generator,
    g_max_abs,
    g_mul,
    g_partial,
    odd_algebra,
    point_max,
)
from supercurv.jet import Jet2, Orders, jet_polynomial, jet_pow, jet_variable
from supercurv.superfield import (
    CurveSpec,
    SuperVector,
    align_fields,
    build_curve,
    curve_evaluator,
    dagger,
    derivative_matrix,
    derivative_vectors,
    grassmannian_projector,
    identity,
    inner,
    mat_vec,
    matmul,
    odd_direction,
    orthogonalized_family,
    partial,
    point_residual,
    polynomial_vector,
    projector,
    random_curve_spec,
    super_derivative,
    supercharge,
    tower,
    trace,
    truncate,
    veronese,
)


@dataclass
class CurvatureRecord:
    body: complex
    expected: float | None
    soul_max: float


@dataclass
class EmbeddingRecord:
    norm2: float
    radius2: float


@dataclass
class SampleRecord:
    index: int
    point: complex
    residuals: dict[str, float]
    curvature: CurvatureRecord | None = None
    embedding: EmbeddingRecord | None = None


@dataclass
class VerificationReport:
    name: str
    params: dict[str, Any]
    samples: list[SampleRecord]
    tolerance: dict[str, float]
    expect: Literal["pass", "fail"] = "pass"
    control: list[str] = field(default_factory=list)
    threshold: float | None = None
    wall_time_s: float | None = None

    def max_residual(self, key: str) -> float:
        return max((s.residuals[key] for s in self.samples if key in s.residuals), default=0.0)

    @property
    def verdict(self) -> Literal["pass", "fail"]:
        """pass iff every toleranced residual is within its tolerance at every sample."""
        for key, tol in self.tolerance.items():
            if not self.max_residual(key) <= tol:
                return "fail"
        return "pass"

    @property
    def expectation_met(self) -> bool:
        if self.expect == "pass":
            return self.verdict == "pass"
        return any(self.max_residual(key) > self.threshold for key in self.control)


def check_rng(seed: int, label: str) -> np.random.Generator:
    """Independent, reproducible stream per check label."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(label.encode())]))


def sample_point(rng: np.random.Generator) -> complex:
    """Uniform by area on the annulus r0 <= |p| <= r1."""
    r0, r1 = ANNULUS
    r = sqrt(rng.uniform(r0 * r0, r1 * r1))
    return cmath.rect(r, rng.uniform(0.0, 2 * pi))


Evaluation = tuple[dict[str, float], CurvatureRecord | EmbeddingRecord | None]


def collect_samples(label: str, rng: np.random.Generator, count: int, evaluate: Callable[[complex], Evaluation]) -> list[SampleRecord]:
    records = []
    for index in range(count):
        failures = 0
        while True:
            p = sample_point(rng)
            try:
                residuals, record = evaluate(p)
                break
            except SingularJetError as exc:
                failures += 1
                logger.warning("{}: singular point {} ({}), resampling", label, p, exc)
                if failures > MAX_RESAMPLES:
                    logger.error("{}: {} consecutive singular samples, giving up", label, failures)
                    raise ResampleExhaustedError(f"{label}: {failures} consecutive singular samples near {p}") from exc
        logger.debug("{} sample {} at {}: {}", label, index, p, residuals)
        if isinstance(record, EmbeddingRecord):
            records.append(SampleRecord(index, p, residuals, embedding=record))
        else:
            records.append(SampleRecord(index, p, residuals, record))
    return records


def _label(name: str, **params: Any) -> str:
    return name + "".join(f":{k}={v}" for k, v in params.items())


def _report(
    name: str,
    params: dict[str, Any],
    samples: list[SampleRecord],
    tolerance: dict[str, float],
    tol: Tolerances,
    expect: Literal["pass", "fail"],
    control: Sequence[str],
) -> VerificationReport:
    report = VerificationReport(
        name=name,
        params=params,
        samples=samples,
        tolerance=tolerance,
        expect=expect,
        control=list(control) if expect == "fail" else [],
        threshold=tol.negative if expect == "fail" else None,
    )
    logger.info(
        "{} {} finished: verdict={} expected={} met={}",
        name,
        params,
        report.verdict,
        expect,
        report.expectation_met,
    )
    return report


def _orders(n: int, orders: Orders | None) -> Orders:
    return auto_orders(n) if orders is None else tuple(orders)


def _curve_params(curve: CurveSpec) -> dict[str, Any]:
    return {"kind": curve.kind, **curve.model_dump(exclude_defaults=True)}


# curvature


def check_constant_curvature(
    curve: CurveSpec,
    k: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
) -> VerificationReport:
    """Curvature of the k-th tower projector against 4/(N-1+2k(N-1-k)), souls zero."""
    tol = tol or Tolerances()
    n = curve.n
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} outside 0..{n - 1}")
    orders = _orders(n, orders)
    expected = expected_curvature(n, k)
    params = {"N": n, "k": k, "curve": _curve_params(curve), "orders": list(orders), "seed": seed}
    logger.info("curvature check N={} k={} curve={}", n, k, curve.kind)

    def evaluate(p: complex) -> Evaluation:
        wk = tower(build_curve(curve, p, orders), k)[k]
        m = metric(wk)
        K = curvature(m.g_pm)
        residuals = {
            "curvature_rel": abs(K.body - expected) / expected,
            "soul": K.soul_max,
            "conformality": conformality_residual(m),
        }
        return residuals, CurvatureRecord(K.body, expected, K.soul_max)

    label = _label("curvature", N=n, k=k, curve=curve.kind)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {"curvature_rel": tol.curvature_rel, "soul": tol.soul, "conformality": tol.conformal}
    return _report("curvature", params, records, tolerance, tol, "pass", [])


def check_curvature_formulas(
    curve: CurveSpec,
    samples: int = 5,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
) -> VerificationReport:
    """Metric-based curvature against the holomorphic closed form; K = 4 on CP^1."""
    tol = tol or Tolerances()
    n = curve.n
    orders = _orders(n, orders)
    params = {"N": n, "curve": _curve_params(curve), "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        general = curvature(metric(w).g_pm)
        closed = curvature_holomorphic(w)
        a, b = align(general.value, closed.value)
        # soul coefficients grow like inverse powers of g+- near degenerate points
        scale = max(1.0, g_max_abs(a), g_max_abs(b))
        residuals = {"cross_formula": point_max(a - b) / scale}
        if n == 2:
            residuals["cp1_metric"] = point_max(a - 4) / scale
            residuals["cp1"] = point_max(b - 4) / scale
        return residuals, CurvatureRecord(general.body, 4.0 if n == 2 else None, general.soul_max)

    label = _label("curvature-formulas", N=n, curve=curve.kind)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {"cross_formula": tol.curvature_rel}
    if n == 2:
        tolerance["cp1_metric"] = tol.cp1
        tolerance["cp1"] = tol.cp1
    return _report("curvature-formulas", params, records, tolerance, tol, "pass", [])


# Euler-Lagrange equations and conservation laws


def check_el(
    curve: CurveSpec,
    k: int = 0,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
    expect: Literal["pass", "fail"] = "pass",
) -> VerificationReport:
    """[D+ D- P, P] = 0, the super conservation law and d+ L - d- L^dagger = 0 for the k-th projector."""
    tol = tol or Tolerances()
    n = curve.n
    orders = _orders(n, orders)
    params = {"N": n, "k": k, "curve": _curve_params(curve), "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        P = projector(tower(build_curve(curve, p, orders), k)[k])
        residuals = {
            "el": point_residual(el_commutator(P)),
            "susy_conservation": point_residual(susy_conservation(P)),
            "conservation": point_residual(conservation_residual(P)),
        }
        return residuals, None

    label = _label("el", N=n, k=k, curve=curve.kind, expect=expect)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {"el": tol.residual, "susy_conservation": tol.residual, "conservation": tol.residual}
    return _report("el", params, records, tolerance, tol, expect, ["el"])


# generalized SUSY Veronese uniqueness


def veronese_det(n: int) -> float:
    return float(factorial(n - 1)) ** (n / 2)


def h_function(curve: CurveSpec, p: complex, orders: Orders) -> Supernumber:
    """h = (1 + x+ x-)^(2-N) u^dagger xi for w = u + i theta+ xi."""
    config = curve.algebra()
    u = polynomial_vector(curve.u_components(), p, orders, config)
    xi = odd_direction(curve, p, orders, config)
    r2 = jet_variable("plus", p, orders) * jet_variable("minus", p, orders) + 1
    return inner(u, xi) * jet_pow(r2, 2 - curve.n)


def check_gsv_uniqueness(
    n: int,
    phi: dict[int, list[complex]],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
    expect: Literal["pass", "fail"] = "pass",
) -> VerificationReport:
    """K1 of w = u + i theta+ sum_i phi_i d+^i u on the Veronese curve.

    K1 vanishes when only phi_1 is present; any phi_i with i >= 2 produces a
    fermionic curvature. Also checks det A and, for the GSV form, d+^2 d-^2 h = 0.
    """
    tol = tol or Tolerances()
    if n < 3:
        raise ValueError("the uniqueness statement needs N >= 3")
    orders = _orders(n, orders)
    curve = CurveSpec(kind="veronese", n=n, phi=phi)
    gsv_form = all(i == 1 for i, c in phi.items() if any(c))
    target_det = veronese_det(n)
    params = {"N": n, "phi": {str(i): c for i, c in sorted(phi.items())}, "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        K = curvature(metric(w).g_pm)
        _, k1, _, _ = curvature_components(K)
        u = veronese(n, p, orders)
        det = np.linalg.det(derivative_matrix(u))
        residuals = {
            "K1": point_max(k1),
            "K_theta": K.theta_soul_max,
            "det_a": abs(det - target_det) / target_det,
        }
        if gsv_form:
            h = h_function(curve, p, orders)
            for wrt in ("plus", "plus", "minus", "minus"):
                h = g_partial(h, wrt)
            residuals["h_equation"] = point_max(h)
        return residuals, CurvatureRecord(K.body, expected_curvature(n, 0), K.soul_max)

    label = _label("gsv-uniqueness", N=n, phi=sorted(phi), expect=expect)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {"K1": tol.residual, "det_a": tol.determinant}
    if gsv_form:
        tolerance["h_equation"] = tol.residual
    return _report("gsv-uniqueness", params, records, tolerance, tol, expect, ["K1"])


# Grassmannian propositions


def check_prop1(
    n: int,
    m: int,
    source: Literal["random", "derivatives"] = "random",
    xi1: Sequence[complex] = (1.0,),
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
) -> VerificationReport:
    """P^(m) D- P^(m) = D- P^(m) for the orthogonalized family built from holomorphic phi_0..phi_m."""
    tol = tol or Tolerances()
    if not 0 <= m <= n - 1:
        raise ValueError(f"m={m} outside 0..{n - 1}")
    orders = _orders(n, orders)
    config = odd_algebra(1)
    label = _label("prop1", N=n, m=m, source=source)
    rng = check_rng(seed, label)
    if source == "random":
        specs = [random_curve_spec(rng, n) for _ in range(m + 1)]
        params_curve: Any = [_curve_params(s) for s in specs]
    else:
        gsv = CurveSpec(kind="gsv", n=n, xi1=list(xi1))
        params_curve = _curve_params(gsv)
    params = {"N": n, "m": m, "source": source, "curves": params_curve, "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        if source == "random":
            phis = [build_curve(s, p, orders, config) for s in specs]
        else:
            phis = derivative_vectors(curve_evaluator(gsv), p, orders, config, m + 1)
        Pm = grassmannian_projector(orthogonalized_family(phis))
        D, Pm = align_fields(super_derivative(Pm, "-"), Pm)
        return {"prop1": point_residual(matmul(Pm, D) - D)}, None

    records = collect_samples(label, rng, samples, evaluate)
    return _report("prop1", params, records, {"prop1": tol.residual}, tol, "pass", [])


def check_prop2_and_xi_constraint(
    n: int,
    xi_terms: dict[int, list[complex]],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
    expect: Literal["pass", "fail"] = "pass",
) -> VerificationReport:
    """(P+^j w)^dagger xi = 0 for j = 2..N-1 and EL for the first tower projector."""
    tol = tol or Tolerances()
    if n < 3:
        raise ValueError("the constraint set needs N >= 3")
    orders = _orders(n, orders)
    curve = CurveSpec(kind="veronese", n=n, phi=xi_terms)
    keys = [f"constraint_{j}" for j in range(2, n)]
    params = {"N": n, "xi": {str(i): c for i, c in sorted(xi_terms.items())}, "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        xi = odd_direction(curve, p, orders)
        vectors = tower(w)
        residuals = {}
        for j, key in zip(range(2, n), keys):
            residuals[key] = point_max(inner(vectors[j], truncate(xi, vectors[j].orders)))
        residuals["el"] = point_residual(el_commutator(projector(vectors[1])))
        return residuals, None

    label = _label("prop2", N=n, xi=sorted(xi_terms), expect=expect)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {key: tol.residual for key in keys}
    if expect == "pass":
        tolerance["el"] = tol.residual
    return _report("prop2", params, records, tolerance, tol, expect, keys[:1])


# G(2,N) theorem


def default_g2n_coefficients(n: int) -> list[list[complex]]:
    """a_1..a_{N-2}: a_1 = 1 for N = 3, otherwise a_1 = x+ and the rest constant."""
    if n == 3:
        return [[1.0]]
    return [[0.0, 1.0]] + [[1.0] for _ in range(n - 3)]


def _determinant_residual(alpha: SuperVector, dw_super: SuperVector, dw: SuperVector) -> Supernumber:
    """a^dagger(v) D(e3) - D(v) a^dagger(e3) with D(v) = v1 d+w2 - v2 d+w1, v = D+ w (N = 3)."""

    def D(v: SuperVector) -> Supernumber:
        return g_mul(v[1], dw[2]) - g_mul(v[2], dw[1])

    d_e3 = -dw[1]
    alpha_e3 = g_dagger(alpha[2])
    return g_mul(inner(alpha, dw_super), d_e3) - g_mul(D(dw_super), alpha_e3)


def check_g2n_theorem(
    n: int,
    a: Sequence[Sequence[complex]] | None = None,
    extra: Sequence[complex] | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
    expect: Literal["pass", "fail"] = "pass",
) -> VerificationReport:
    """w = u + i theta+ eps sum_{i=1}^{N-2} a_i d+^i u and alpha = P+^{N-1} w.

    ``extra`` adds a coefficient on d+^{N-1} u, outside the allowed span.
    """
    tol = tol or Tolerances()
    if n < 3:
        raise ValueError("the G(2,N) construction needs N >= 3")
    a = [list(c) for c in (a if a is not None else default_g2n_coefficients(n))]
    if len(a) != n - 2:
        raise ValueError(f"need exactly {n - 2} coefficient polynomials a_1..a_{n - 2}")
    orders = _orders(n, orders)
    phi = {i + 1: c for i, c in enumerate(a)}
    if extra is not None:
        phi[n - 1] = list(extra)
    curve = CurveSpec(kind="veronese", n=n, phi=phi)
    params = {"N": n, "a": a, "extra": list(extra) if extra is not None else None, "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        vectors = tower(w)
        alpha = vectors[n - 1]
        dw_super = truncate(super_derivative(w, "+"), alpha.orders)
        w_low = truncate(w, alpha.orders)
        residuals = {
            "alpha_dw": point_max(inner(alpha, dw_super)),
            "alpha_w": point_max(inner(alpha, w_low)),
        }
        last = projector(alpha)
        d_alpha = super_derivative(alpha, "+")
        ident = identity(n, alpha.config, alpha.base_point, alpha.orders)
        complement, d_alpha = align_fields(ident - last, d_alpha)
        residuals["antiholomorphy"] = point_residual(mat_vec(complement, d_alpha))
        residuals["el_g2n"] = point_residual(el_commutator(grassmannian_projector([vectors[0], alpha])))
        residuals["duality"] = point_residual(el_commutator(grassmannian_projector(vectors[1 : n - 1])))
        if n == 3:
            dw = truncate(partial(w, "plus"), alpha.orders)
            residuals["determinant"] = point_max(_determinant_residual(alpha, dw_super, dw))
        return residuals, None

    label = _label("g2n", N=n, extra=extra is not None, expect=expect)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    keys = ["alpha_dw", "alpha_w", "antiholomorphy", "el_g2n", "duality"] + (["determinant"] if n == 3 else [])
    tolerance = {key: tol.residual for key in keys}
    return _report("g2n", params, records, tolerance, tol, expect, ["alpha_dw"])


# operator algebra


def random_supernumber(rng: np.random.Generator, p: complex, orders: Orders, config=None) -> Supernumber:
    """Mixed-parity supernumber with a random jet on every monomial."""
    config = config or odd_algebra(1)
    shape = (orders[0] + 1, orders[1] + 1)
    terms = {}
    for mask in range(1 << config.size):
        coeffs = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        terms[mask] = Jet2(p, coeffs)
    return Supernumber(config, p, orders, terms)


def operator_identities(a: Supernumber) -> dict[str, float]:
    """Residuals of the anticommutation rules of the superderivatives and supercharges on a."""

    def D(x, s):
        return super_derivative(x, s)

    def Q(x, s):
        return supercharge(x, s)

    def size(x: Supernumber, y: Supernumber) -> float:
        x, y = align(x, y)
        return g_max_abs(x - y)

    def anticommutator(f, s, g, t) -> Supernumber:
        x, y = align(f(g(a, t), s), g(f(a, s), t))
        return x + y

    zero = g_const(0, a.config, a.base_point, a.orders)
    checks = {
        "DmDp": anticommutator(D, "-", D, "+"),
        "QmQp": anticommutator(Q, "-", Q, "+"),
        "QpDp": anticommutator(Q, "+", D, "+"),
        "QmDm": anticommutator(Q, "-", D, "-"),
        "QpDm": anticommutator(Q, "+", D, "-"),
        "QmDp": anticommutator(Q, "-", D, "+"),
    }
    residuals = {key: size(value, zero) for key, value in checks.items()}
    residuals["DpDp"] = size(D(D(a, "+"), "+"), g_partial(a, "plus") * -1j)
    residuals["DmDm"] = size(D(D(a, "-"), "-"), g_partial(a, "minus") * -1j)
    residuals["QpQp"] = size(Q(Q(a, "+"), "+"), g_partial(a, "plus") * 1j)
    residuals["QmQm"] = size(Q(Q(a, "-"), "-"), g_partial(a, "minus") * 1j)
    return residuals


def check_operator_algebra(
    count: int = 100,
    seed: int = DEFAULT_SEED,
    orders: Orders = (3, 3),
    tol: Tolerances | None = None,
) -> VerificationReport:
    tol = tol or Tolerances()
    label = _label("algebra", count=count)
    rng = check_rng(seed, label)
    params = {"count": count, "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        return operator_identities(random_supernumber(rng, p, orders)), None

    records = collect_samples(label, rng, count, evaluate)
    keys = ["DmDp", "DpDp", "DmDm", "QmQp", "QpQp", "QmQm", "QpDp", "QmDm", "QpDm", "QmDp"]
    return _report("algebra", params, records, {key: tol.algebra for key in keys}, tol, "pass", [])


# projectors and the su(N) sphere


def check_projector_laws(
    curve: CurveSpec,
    samples: int = 5,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
) -> VerificationReport:
    """P^dagger = P, P^2 = P, Tr P = 1 on the whole tower, orthogonality, completeness and gauge invariance."""
    tol = tol or Tolerances()
    n = curve.n
    orders = _orders(n, orders)
    params = {"N": n, "curve": _curve_params(curve), "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        vectors = tower(w)
        projectors = align_fields(*(projector(v) for v in vectors))
        residuals = {"hermitian": 0.0, "idempotent": 0.0, "trace": 0.0}
        for P in projectors:
            residuals["hermitian"] = max(residuals["hermitian"], point_residual(dagger(P) - P))
            residuals["idempotent"] = max(residuals["idempotent"], point_residual(matmul(P, P) - P))
            residuals["trace"] = max(residuals["trace"], point_max(trace(P) - 1))
        low = align_fields(*vectors)
        residuals["orthogonality"] = max(
            (point_max(inner(low[i], low[j])) for i in range(n) for j in range(n) if i != j), default=0.0
        )
        total = grassmannian_projector(vectors)
        residuals["completeness"] = point_residual(total - identity(n, total.config, total.base_point, total.orders))
        config = w.config
        theta_pair = g_mul(g_generator(THETA_PLUS, config, p, orders), g_generator(THETA_MINUS, config, p, orders))
        gauge = g_add(g_from_jet(jet_polynomial([2 + 1j, 0.5, 0.25j], p, orders), config), theta_pair * 0.3)
        residuals["gauge"] = point_residual(projector(gauge * w) - projector(w))
        return residuals, None

    label = _label("projector-laws", N=n, curve=curve.kind)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {
        "hermitian": tol.projector,
        "idempotent": tol.projector,
        "trace": tol.projector,
        "orthogonality": tol.residual,
        "completeness": tol.residual,
        "gauge": tol.projector,
    }
    return _report("projector-laws", params, records, tolerance, tol, "pass", [])


def check_sphere_embedding(
    curve: CurveSpec,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    orders: Orders | None = None,
    tol: Tolerances | None = None,
) -> VerificationReport:
    """|embed(P - 1/N)|^2 = (1 - 1/N)/2 for the holomorphic projector, d- X = -L, CP^1 closed forms."""
    tol = tol or Tolerances()
    n = curve.n
    orders = _orders(n, orders)
    radius2 = sphere_radius2(n)
    params = {"N": n, "curve": _curve_params(curve), "orders": list(orders), "seed": seed}

    def evaluate(p: complex) -> Evaluation:
        w = build_curve(curve, p, orders)
        P = projector(w)
        point = embed(surface_X(P), tol.embedding)
        residuals = {
            "sphere": abs(point.norm2 - radius2),
            "surface_derivative": point_residual(surface_derivative_residual(P)),
        }
        if n == 2:
            W = w[1].value / w[0].value
            residuals["cp1_coordinates"] = float(np.max(np.abs(point.coords - cp1_coordinates(W))))
        return residuals, EmbeddingRecord(point.norm2, radius2)

    label = _label("sphere", N=n, curve=curve.kind)
    records = collect_samples(label, check_rng(seed, label), samples, evaluate)
    tolerance = {"sphere": tol.embedding, "surface_derivative": tol.residual}
    if n == 2:
        tolerance["cp1_coordinates"] = tol.algebra
    return _report("sphere", params, records, tolerance, tol, "pass", [])


# job planning and execution


@dataclass(frozen=True)
class Job:
    name: str
    func: Callable[..., VerificationReport]
    kwargs: dict[str, Any]


def run_job(job: Job, timing: bool = False) -> VerificationReport:
    start = time.perf_counter()
    report = job.func(**job.kwargs)
    if timing:
        report.wall_time_s = time.perf_counter() - start
    return report


def run_jobs(jobs: Sequence[Job], workers: int = 1, timing: bool = False) -> list[VerificationReport]:
    """Run jobs on a thread pool; reports come back in job order."""
    if workers <= 1:
        return [run_job(job, timing) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: run_job(job, timing), jobs))


def _curve_for(config: RunConfig, n: int, kind: str | None = None) -> CurveSpec:
    kind = kind or config.curve
    if kind == "gsv":
        return CurveSpec(kind="gsv", n=n, xi1=list(config.xi))
    if kind == "random":
        return random_curve_spec(check_rng(config.seed, _label("random-curve", N=n)), n)
    return CurveSpec(kind="veronese", n=n)


def plan_jobs(config: RunConfig) -> list[Job]:
    """Expand a run configuration into the ordered list of checker jobs."""
    jobs: list[Job] = []
    command = config.command
    suite = command == "suite"
    xi = list(config.xi)

    def add(name: str, func: Callable[..., VerificationReport], **kwargs: Any) -> None:
        kwargs.setdefault("seed", config.seed)
        kwargs.setdefault("tol", config.tolerances)
        jobs.append(Job(name, func, kwargs))

    for n in config.n_values:
        orders = config.orders_for(n)
        common = {"orders": orders}
        if suite:
            add("projector-laws", check_projector_laws, curve=_curve_for(config, n, "random"), **common)
        if command in ("curvature", "suite"):
            kinds = ["veronese", "gsv"] if suite else [config.curve]
            for kind in kinds:
                for k in config.ks_for(n):
                    add("curvature", check_constant_curvature, curve=_curve_for(config, n, kind), k=k, samples=config.samples, **common)
        if suite:
            add("curvature-formulas", check_curvature_formulas, curve=_curve_for(config, n, "random"), **common)
        if command in ("el", "suite"):
            kinds = ["veronese", "gsv"] if suite else [config.curve]
            for kind in kinds:
                for k in config.ks_for(n):
                    add("el", check_el, curve=_curve_for(config, n, kind), k=k, samples=config.samples, **common)
            if n >= 3:
                control = CurveSpec(kind="veronese", n=n, odd_vector=[[0.0]] * (n - 1) + [[1.0]])
                add("el", check_el, curve=control, k=1, samples=config.samples, expect="fail", **common)
        if command in ("gsv-uniqueness", "suite") and n >= 3:
            add("gsv-uniqueness", check_gsv_uniqueness, n=n, phi={1: xi}, samples=config.samples, **common)
            add("gsv-uniqueness", check_gsv_uniqueness, n=n, phi={1: xi, 2: [1.0]}, samples=config.samples, expect="fail", **common)
        if command in ("prop1", "suite"):
            for m in range(min(3, n)):
                add("prop1", check_prop1, n=n, m=m, samples=config.samples, **common)
            add("prop1", check_prop1, n=n, m=1, source="derivatives", xi1=xi, samples=config.samples, **common)
        if command in ("prop2", "suite") and n >= 3:
            add("prop2", check_prop2_and_xi_constraint, n=n, xi_terms={1: xi}, samples=config.samples, **common)
            add("prop2", check_prop2_and_xi_constraint, n=n, xi_terms={2: [1.0]}, samples=config.samples, expect="fail", **common)
        if command in ("g2n", "suite") and n >= 3:
            add("g2n", check_g2n_theorem, n=n, samples=config.samples, **common)
            add("g2n", check_g2n_theorem, n=n, extra=[1.0], samples=config.samples, expect="fail", **common)
        if command in ("sphere", "suite"):
            add("sphere", check_sphere_embedding, curve=_curve_for(config, n), samples=config.samples, **common)
            if suite:
                add("sphere", check_sphere_embedding, curve=_curve_for(config, n, "random"), samples=config.samples, **common)
    if command in ("algebra", "suite"):
        add("algebra", check_operator_algebra)
    return jobs
