import math

import numpy as np
import pytest

from bisym.core import constructors
from bisym.core.constructors import (
    VERIFY_TOL,
    build_corollary4,
    build_l1,
    build_l2,
    build_l3,
    build_l4,
    build_theorem2,
    builder_for,
    construct,
    intersection_problem,
)
from bisym.core.errors import (
    ConditionFailedError,
    GuardViolationError,
    HypothesisError,
    NotFeasibleError,
    VerificationError,
)
from bisym.core.linalg.smallmat import is_bisymmetric, is_nonnegative, sym_eigenvalues
from bisym.core.sampler import TraceMode
from bisym.core.spectrum import CaseTag, Spectrum, Verdict, decide, make_spectrum
from tests.helpers import example_matrix, take


def realizes(m: np.ndarray, s: Spectrum, tol: float = 1e-9) -> bool:
    return (
        is_bisymmetric(m, 1e-12)
        and is_nonnegative(m)
        and np.allclose(sym_eigenvalues(m), s.values, rtol=0, atol=tol)
    )


def feasible(s: Spectrum) -> bool:
    return decide(s).verdict is Verdict.FEASIBLE


# explicit families


def test_l1():
    s = make_spectrum((1, 0, 0, 0, -1))
    m = build_l1(s)
    assert m[0, 4] == m[4, 0] == 1.0
    assert np.count_nonzero(m) == 2
    assert realizes(m, s)


def test_l1_nonnegative_spectrum():
    s = make_spectrum((1, 0.8, 0.5, 0.2, 0.1))
    assert realizes(build_l1(s), s)


def test_l1_constant_spectrum_is_identity():
    assert np.array_equal(build_l1(make_spectrum((1, 1, 1, 1, 1))), np.eye(5))


def test_l1_entries():
    s = make_spectrum((1, 0.5, 0.3, -0.4, -0.9))
    m = build_l1(s)
    assert (m[0, 0], m[0, 4]) == pytest.approx((0.05, 0.95))
    assert (m[1, 1], m[1, 3]) == pytest.approx((0.05, 0.45))
    assert m[2, 2] == 0.3
    assert realizes(m, s, 1e-10)


def test_l2_zero_borders():
    s = make_spectrum((2, 1, 0, -1, -2))
    m = build_l2(s)
    assert m[0, 4] == 2.0 and m[1, 3] == 1.0
    assert np.count_nonzero(m) == 4
    assert realizes(m, s)


def test_l2_negative_tail():
    s = make_spectrum((1, -0.1, -0.2, -0.3, -0.4))
    m = build_l2(s)
    assert m[0, 1] == pytest.approx(0.5 * math.sqrt(0.15 / 0.7), abs=1e-15)
    assert m[0, 2] == pytest.approx(math.sqrt(0.06 / 1.4), abs=1e-15)
    assert m[1, 2] == pytest.approx(math.sqrt(0.05), abs=1e-15)
    assert m[2, 2] == pytest.approx(0.0, abs=1e-15)
    assert realizes(m, s)


def test_l2_equal_tail():
    s = make_spectrum((1, -0.25, -0.25, -0.25, -0.25))
    m = build_l2(s)
    assert (m[0, 1], m[0, 2], m[1, 2]) == pytest.approx((0.25, 0.25, 0.25), abs=1e-15)
    assert realizes(m, s)


def test_l2_guard():
    with pytest.raises(GuardViolationError) as info:
        build_l2(make_spectrum((1, 0.3, 0.2, -0.7, -0.8)))
    assert info.value.builder == "L2"
    assert info.value.value < 0


def test_l3():
    s = make_spectrum((0.9, 0.6, -0.4, -0.5, -0.6))
    m = build_l3(s)
    assert m[0, 4] == pytest.approx(0.6)
    assert m[1, 3] == pytest.approx(0.5)
    assert m[1, 2] == pytest.approx(math.sqrt(0.18))
    assert realizes(m, s)


def test_l3_guard():
    with pytest.raises(GuardViolationError) as info:
        build_l3(make_spectrum((1, 0.2, -0.2, -0.4, -0.6)))
    assert info.value.inequality == "λ2 + λ5 >= 0"


@pytest.mark.parametrize("raw", [(1, 0.4, 0.3, -0.3, -0.9), (1, 0.5, 0.45, -0.45, -1)])
def test_l4(raw):
    s = make_spectrum(raw)
    assert realizes(build_l4(s), s)


def test_l4_entries():
    m = build_l4(make_spectrum((1, 0.4, 0.3, -0.3, -0.9)))
    assert m[0, 0] == pytest.approx(0.0, abs=1e-15)
    assert m[0, 4] == pytest.approx(0.3)
    assert m[1, 3] == pytest.approx(0.9)
    assert m[2, 2] == pytest.approx(0.5)
    assert m[1, 2] == pytest.approx(math.sqrt(0.025))


# circle-hyperbola constructions


def test_theorem2_reproduces_example(example):
    m = build_theorem2(example)
    assert np.allclose(m, example_matrix(), rtol=0, atol=1e-10)
    assert realizes(m, example, 1e-8)


def test_theorem2_problem(example):
    problem = intersection_problem(example, CaseTag.THEOREM2)
    assert problem.r_sq == pytest.approx(0.55)
    assert problem.beta == pytest.approx(0.4)
    assert problem.gamma == pytest.approx(math.sqrt(0.21))
    assert problem.t == pytest.approx(0.16)


def test_theorem2_requires_normalized_spectrum():
    with pytest.raises(HypothesisError):
        build_theorem2(make_spectrum((2, 0.6, 0.4, -1.4, -1.6)))


@pytest.mark.parametrize("raw", [(1, 0.3, 0.2, -0.7, -0.75), (1, 0.4, 0.1, -0.6, -0.85)])
def test_corollary4(raw):
    s = make_spectrum(raw)
    assert realizes(build_corollary4(s), s)


def test_corollary4_entries():
    m = build_corollary4(make_spectrum((1, 0.3, 0.2, -0.7, -0.75)))
    assert m[0, 0] == pytest.approx(0.025)
    assert m[0, 4] == pytest.approx(0.425)
    assert m[0, 1] == pytest.approx(math.sqrt(0.21))
    assert m[2, 2] == 0.0


def test_corollary4_condition_failure():
    with pytest.raises(ConditionFailedError) as info:
        intersection_problem(make_spectrum((1, 0.5, 0.45, -0.6, -1)), CaseTag.COROLLARY4)
    assert info.value.lhs == pytest.approx(0.7)
    assert info.value.rhs == pytest.approx(1.0)


def test_intersection_problem_rejects_explicit_cases(example):
    with pytest.raises(ValueError):
        intersection_problem(example, CaseTag.L1)


def test_builder_for():
    assert builder_for(CaseTag.L3) is build_l3
    with pytest.raises(ValueError):
        builder_for(CaseTag.NONE)


# construct


def test_construct_example(example):
    result = construct(example)
    assert result.case is CaseTag.THEOREM2
    assert result.max_eig_error <= 1e-8
    assert result.min_entry == 0.0
    assert np.allclose(result.matrix, example_matrix(), rtol=0, atol=1e-10)

    doc = result.to_dict()
    assert doc["case"] == "theorem2"
    assert len(doc["matrix"]) == 5
    assert set(doc["residuals"]) == {"max_eig_error", "min_entry"}


def test_construct_zero():
    result = construct(make_spectrum((0, 0, 0, 0, 0)))
    assert result.case is CaseTag.ALL_ZERO
    assert not result.matrix.any()


def test_construct_rescales_normalized_builders(example):
    result = construct(example.scaled(2.0))
    assert result.case is CaseTag.THEOREM2
    assert np.allclose(result.matrix, 2.0 * example_matrix(), rtol=0, atol=1e-9)


@pytest.mark.parametrize("raw", [(1, 0.8, 0.1, -0.9, -1), (1, 0.5, 0.45, -0.6, -1)])
def test_construct_rejects_non_feasible(raw):
    with pytest.raises(NotFeasibleError) as info:
        construct(make_spectrum(raw))
    assert info.value.report.verdict is not Verdict.FEASIBLE


@pytest.mark.parametrize(
    "matrix, check",
    [
        (np.eye(5), "eigenvalues"),
        (np.triu(np.ones((5, 5))), "bisymmetric"),
        (np.fliplr(np.diag([-0.5, 0.0, 0.0, 0.0, -0.5])), "nonnegative"),
    ],
)
def test_construct_verification(monkeypatch, matrix, check):
    monkeypatch.setitem(constructors._BUILDERS, CaseTag.L1, lambda _: matrix.copy())
    with pytest.raises(VerificationError) as info:
        construct(make_spectrum((1, 0, 0, 0, -1)))
    assert info.value.check == check


def test_trace_zero_round_trip():
    for s in take(TraceMode.ZERO, 7, 10_000, feasible):
        result = construct(s)
        assert result.max_eig_error <= VERIFY_TOL * 2
        assert is_bisymmetric(result.matrix, 1e-10)
        assert result.matrix.min() >= 0.0


def test_positive_trace_round_trip():
    for s in take(TraceMode.POSITIVE, 11, 2_000, feasible):
        assert construct(s).max_eig_error <= VERIFY_TOL * 2


def test_corollary4_region():
    def in_region(s: Spectrum) -> bool:
        return decide(s).case is CaseTag.COROLLARY4

    for s in take(TraceMode.POSITIVE, 13, 1_000, in_region):
        m = build_corollary4(s)
        assert realizes(m, s, 1e-8), s


@pytest.mark.parametrize("factor", [0.5, 3.0])
def test_construction_is_homogeneous(factor):
    for mode in TraceMode:
        for s in take(mode, 17, 50, feasible):
            base = construct(s).matrix
            scaled = construct(s.scaled(factor)).matrix
            assert np.allclose(scaled, factor * base, rtol=0, atol=1e-10 * factor), s


def test_small_leading_eigenvalue():
    s = make_spectrum((0.001, 0.0003, 0.0002, -0.0007, -0.0008))
    result = construct(s)
    assert result.case is CaseTag.THEOREM2
    assert np.allclose(result.matrix, 0.001 * example_matrix(), rtol=0, atol=1e-12)

    nudged = make_spectrum((0.001, 0.0003, 0.0002, -0.0007, -0.0008 + 5e-13))
    report = decide(nudged)
    assert report.verdict is Verdict.FEASIBLE
    assert construct(nudged).case is report.case is CaseTag.COROLLARY4


@pytest.mark.parametrize("factor", [1e-3, 1e5])
def test_feasible_verdict_always_constructs_after_scaling(factor):
    for s in take(TraceMode.ZERO, 23, 200, feasible):
        scaled = s.scaled(factor)
        result = construct(scaled)
        assert result.case is decide(scaled).case
        assert result.max_eig_error <= VERIFY_TOL * (1.0 + scaled.values[0])
        assert result.matrix.min() >= 0.0


def test_positive_trace_outside_every_family_is_unknown():
    seen = 0
    for s in take(TraceMode.POSITIVE, 19, 2_000):
        report = decide(s)
        if report.case is CaseTag.NONE and report.violated is None:
            assert report.verdict is Verdict.UNKNOWN
            with pytest.raises(NotFeasibleError):
                construct(s)
            seen += 1
    assert seen > 0
