import pytest

from supercurv.config import ANNULUS, RunConfig, Tolerances
from supercurv.errors import ResampleExhaustedError, SingularJetError
from supercurv.superfield import CurveSpec, random_curve_spec
from supercurv.verify import (
    SampleRecord,
    VerificationReport,
    check_constant_curvature,
    check_curvature_formulas,
    check_el,
    check_g2n_theorem,
    check_gsv_uniqueness,
    check_operator_algebra,
    check_projector_laws,
    check_prop1,
    check_prop2_and_xi_constraint,
    check_rng,
    check_sphere_embedding,
    collect_samples,
    plan_jobs,
    run_jobs,
    sample_point,
    veronese_det,
)

SAMPLES = 2


def veronese_spec(n):
    return CurveSpec(kind="veronese", n=n)


def gsv_spec(n, xi1=(1.0, 0.5)):
    return CurveSpec(kind="gsv", n=n, xi1=list(xi1))


def odd_control_spec(n):
    return CurveSpec(kind="veronese", n=n, odd_vector=[[0.0]] * (n - 1) + [[1.0]])


def assert_passes(report):
    assert report.verdict == "pass", {k: report.max_residual(k) for k in report.tolerance}
    assert report.expectation_met


def assert_control_fails(report):
    assert report.expect == "fail"
    assert report.verdict == "fail"
    assert report.expectation_met


class TestReport:
    def _report(self, residual, expect="pass"):
        return VerificationReport(
            name="demo",
            params={},
            samples=[SampleRecord(0, 1j, {"r": residual})],
            tolerance={"r": 1e-9},
            expect=expect,
            control=["r"] if expect == "fail" else [],
            threshold=1e-4 if expect == "fail" else None,
        )

    def test_pass_within_tolerance(self):
        assert self._report(1e-12).verdict == "pass"

    def test_fail_above_tolerance(self):
        assert self._report(1e-6).verdict == "fail"

    def test_nan_residual_fails(self):
        assert self._report(float("nan")).verdict == "fail"

    def test_control_needs_a_clear_violation(self):
        assert self._report(1e-2, expect="fail").expectation_met
        assert not self._report(1e-6, expect="fail").expectation_met


class TestSampling:
    def test_points_lie_on_the_annulus(self):
        rng = check_rng(7, "demo")
        for _ in range(200):
            assert ANNULUS[0] <= abs(sample_point(rng)) <= ANNULUS[1]

    def test_streams_are_reproducible_and_independent(self):
        a = [sample_point(check_rng(42, "a")) for _ in range(3)]
        b = [sample_point(check_rng(42, "a")) for _ in range(3)]
        c = sample_point(check_rng(42, "b"))
        assert a == b
        assert c != a[0]

    def test_resamples_singular_points(self):
        calls = []

        def evaluate(p):
            calls.append(p)
            if len(calls) == 1:
                raise SingularJetError("boom", p)
            return {"r": 0.0}, None

        records = collect_samples("demo", check_rng(1, "demo"), 1, evaluate)
        assert len(records) == 1
        assert records[0].point == calls[1]

    def test_gives_up_after_repeated_singularities(self):
        def evaluate(p):
            raise SingularJetError("boom", p)

        with pytest.raises(ResampleExhaustedError):
            collect_samples("demo", check_rng(1, "demo"), 1, evaluate)


class TestCurvatureChecks:
    @pytest.mark.parametrize("n, k", [(2, 0), (3, 1), (4, 2)])
    def test_veronese(self, n, k):
        report = check_constant_curvature(veronese_spec(n), k, samples=SAMPLES)
        assert_passes(report)
        assert report.samples[0].curvature.expected == pytest.approx(4 / (n - 1 + 2 * k * (n - 1 - k)))

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_gsv(self, k):
        assert_passes(check_constant_curvature(gsv_spec(3), k, samples=SAMPLES))

    def test_random_curve_fails(self):
        report = check_constant_curvature(
            CurveSpec(kind="custom", n=3, components=[[1.0], [0.0, 1.0], [0.0, 0.0, 0.0, 1.0]]), 0, samples=SAMPLES
        )
        assert report.verdict == "fail"

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            check_constant_curvature(veronese_spec(3), 3)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_formulas(self, rng, n):
        assert_passes(check_curvature_formulas(random_curve_spec(rng, n), samples=SAMPLES))

    def test_cp1_is_checked_through_the_metric(self, rng):
        report = check_curvature_formulas(random_curve_spec(rng, 2), samples=SAMPLES)
        assert {"cp1", "cp1_metric"} <= set(report.tolerance)
        assert report.samples[0].curvature.body == pytest.approx(4.0, rel=1e-9)


class TestSolutionChecks:
    @pytest.mark.parametrize("spec, k", [(veronese_spec(3), 1), (gsv_spec(3), 0), (gsv_spec(4), 2)])
    def test_el(self, spec, k):
        assert_passes(check_el(spec, k, samples=SAMPLES))

    def test_el_control(self):
        assert_control_fails(check_el(odd_control_spec(3), 1, samples=SAMPLES, expect="fail"))

    def test_control_on_a_solution_is_not_met(self):
        report = check_el(veronese_spec(3), 1, samples=SAMPLES, expect="fail")
        assert report.verdict == "pass"
        assert not report.expectation_met

    @pytest.mark.parametrize("n", [3, 4])
    def test_gsv_uniqueness(self, n):
        report = check_gsv_uniqueness(n, {1: [1.0, 0.5]}, samples=SAMPLES)
        assert_passes(report)
        assert "h_equation" in report.tolerance

    def test_gsv_uniqueness_control(self):
        report = check_gsv_uniqueness(3, {1: [1.0], 2: [1.0]}, samples=SAMPLES, expect="fail")
        assert_control_fails(report)
        assert "h_equation" not in report.tolerance

    @pytest.mark.parametrize("n, value", [(3, 2.0 ** 1.5), (4, 36.0), (5, 24.0 ** 2.5)])
    def test_veronese_det(self, n, value):
        assert veronese_det(n) == pytest.approx(value)


class TestGrassmannianChecks:
    @pytest.mark.parametrize("n, m", [(3, 0), (3, 1), (3, 2), (4, 2)])
    def test_prop1_random(self, n, m):
        assert_passes(check_prop1(n, m, samples=SAMPLES))

    def test_prop1_derivatives(self):
        assert_passes(check_prop1(3, 1, source="derivatives", xi1=[1.0, 0.5j], samples=SAMPLES))

    @pytest.mark.parametrize("n", [3, 4])
    def test_prop2(self, n):
        assert_passes(check_prop2_and_xi_constraint(n, {1: [1.0, 0.5]}, samples=SAMPLES))

    def test_prop2_control(self):
        report = check_prop2_and_xi_constraint(3, {2: [1.0]}, samples=SAMPLES, expect="fail")
        assert_control_fails(report)
        assert "el" not in report.tolerance

    @pytest.mark.parametrize("n", [3, 4])
    def test_g2n(self, n):
        report = check_g2n_theorem(n, samples=SAMPLES)
        assert_passes(report)
        assert ("determinant" in report.tolerance) == (n == 3)

    def test_g2n_control(self):
        assert_control_fails(check_g2n_theorem(3, extra=[1.0], samples=SAMPLES, expect="fail"))

    def test_g2n_needs_matching_coefficients(self):
        with pytest.raises(ValueError):
            check_g2n_theorem(4, a=[[1.0]])


class TestStructuralChecks:
    def test_operator_algebra(self):
        report = check_operator_algebra(count=5)
        assert_passes(report)
        assert len(report.samples) == 5
        assert set(report.tolerance) == {"DmDp", "DpDp", "DmDm", "QmQp", "QpQp", "QmQm", "QpDp", "QmDm", "QpDm", "QmDp"}

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_projector_laws(self, rng, n):
        assert_passes(check_projector_laws(random_curve_spec(rng, n), samples=SAMPLES))

    @pytest.mark.parametrize("spec", [veronese_spec(2), gsv_spec(2, (1.0,)), veronese_spec(4)])
    def test_sphere(self, spec):
        report = check_sphere_embedding(spec, samples=SAMPLES)
        assert_passes(report)
        assert ("cp1_coordinates" in report.tolerance) == (spec.n == 2)

    def test_sphere_records_the_norm(self):
        report = check_sphere_embedding(veronese_spec(2), samples=SAMPLES)
        for sample in report.samples:
            assert sample.embedding.norm2 == pytest.approx(0.25)
            assert sample.embedding.radius2 == 0.25
            assert sample.curvature is None

    def test_tolerance_overrides_are_applied(self):
        report = check_constant_curvature(veronese_spec(2), 0, samples=1, tol=Tolerances(curvature_rel=-1.0))
        assert report.tolerance["curvature_rel"] == -1.0
        assert report.verdict == "fail"


class TestDeterminism:
    def test_same_seed_same_records(self):
        a = check_constant_curvature(gsv_spec(3), 1, samples=SAMPLES, seed=5)
        b = check_constant_curvature(gsv_spec(3), 1, samples=SAMPLES, seed=5)
        assert [s.point for s in a.samples] == [s.point for s in b.samples]
        assert [s.residuals for s in a.samples] == [s.residuals for s in b.samples]

    def test_different_seed_different_points(self):
        a = check_el(veronese_spec(3), 0, samples=1, seed=1)
        b = check_el(veronese_spec(3), 0, samples=1, seed=2)
        assert a.samples[0].point != b.samples[0].point


class TestPlanning:
    def test_suite_contains_controls(self):
        jobs = plan_jobs(RunConfig(command="suite", n_values=[3], samples=1))
        controls = [job for job in jobs if job.kwargs.get("expect") == "fail"]
        assert {job.name for job in controls} == {"el", "gsv-uniqueness", "prop2", "g2n"}
        assert jobs[-1].name == "algebra"

    def test_single_command(self):
        jobs = plan_jobs(RunConfig(command="curvature", n_values=[2, 3], k_values=[0], samples=1))
        assert [job.name for job in jobs] == ["curvature", "curvature"]
        assert [job.kwargs["curve"].n for job in jobs] == [2, 3]

    def test_no_controls_for_cp1(self):
        jobs = plan_jobs(RunConfig(command="g2n", n_values=[2], samples=1))
        assert jobs == []

    def test_parallel_run_keeps_order(self):
        config = RunConfig(command="curvature", n_values=[2, 3], samples=1, timing=True)
        jobs = plan_jobs(config)
        serial = run_jobs(jobs, workers=1)
        parallel = run_jobs(jobs, workers=3, timing=True)
        assert [r.params for r in serial] == [r.params for r in parallel]
        assert all(r.wall_time_s is not None for r in parallel)
        assert all(r.wall_time_s is None for r in serial)
