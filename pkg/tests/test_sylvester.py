import itertools

import numpy as np
import pytest

from ringlab import analysis
from ringlab.errors import NotBijective, PreconditionViolated
from ringlab.rings import TriMatrix
from ringlab.sylvester import (
    LRProblem,
    apply_lr,
    is_lr_bijective,
    lr_inverse,
    series_unit_left,
    solve_lr,
)

from conftest import BATTERY, ring


def tri(R, rows):
    return R.from_matrix(TriMatrix.from_rows(rows))


def brute_solution(R, a, b, v):
    hits = [x for x in R.elements() if R.sub(R.mul(a, x), R.mul(x, b)) == v]
    assert len(hits) == 1
    return hits[0]


def test_apply_lr_examples():
    Z8 = ring("Z8")
    assert apply_lr(Z8, 1, 2, 3) == 5
    Z6 = ring("Z6")
    assert all(apply_lr(Z6, a, a, x) == 0 for a in Z6.elements() for x in Z6.elements())
    T = ring("T2(Z2)")
    N = tri(T, [[0, 1], [0]])
    assert apply_lr(T, T.one, N, T.one) == tri(T, [[1, 1], [1]])


def test_solve_examples():
    Z8 = ring("Z8")
    for method in ("series", "brute"):
        assert solve_lr(LRProblem(Z8, 1, 2, 3, "a_unit_b_radical"), method) == 5
    assert 1 * 5 - 5 * 2 == -5 and -5 % 8 == 3
    # phi = id + r_2 + r_4 acts as multiplication by 7
    inv = lr_inverse(LRProblem(Z8, 1, 2, 0, "a_unit_b_radical"))
    assert [inv(v) for v in range(8)] == [7 * v % 8 for v in range(8)]
    T = ring("T2(Z2)")
    N = tri(T, [[0, 1], [0]])
    x = solve_lr(LRProblem(T, T.one, N, T.one, "a_unit_b_radical"))
    assert x == T.add(T.one, N) == tri(T, [[1, 1], [1]])
    assert solve_lr(LRProblem(T, T.one, N, 0, "a_unit_b_radical")) == 0


def test_is_lr_bijective_examples():
    Z4 = ring("Z4")
    assert is_lr_bijective(Z4, 2, 3)
    assert sorted(apply_lr(Z4, 2, 3, Z4.all).tolist()) == [0, 1, 2, 3]
    assert not is_lr_bijective(Z4, 1, 1)
    assert not is_lr_bijective(ring("Z6"), 2, 2)


@pytest.mark.parametrize("text", BATTERY)
def test_series_equals_brute_force(text):
    R = ring(text)
    J, U = analysis.jacobson_radical(R), analysis.units(R)
    x = R.all
    for a, b in itertools.product(U.tolist(), J.tolist()):
        images = apply_lr(R, a, b, x)
        brute = np.empty_like(x)
        brute[images] = x
        assert np.array_equal(np.sort(images), x)
        series = lr_inverse(LRProblem(R, a, b, 0, "a_unit_b_radical"))
        assert np.array_equal(series(x), brute)
        # and the mirrored equation l_b - r_a with b radical, a unit
        images = apply_lr(R, b, a, x)
        brute = np.empty_like(x)
        brute[images] = x
        mirrored = lr_inverse(LRProblem(R, b, a, 0, "a_radical_b_unit"))
        assert np.array_equal(mirrored(x), brute)


@pytest.mark.parametrize("text", ["Z8", "T2(Z2)", "Z9", "F2[x]/(x^2)"])
def test_scalar_solves_agree(text):
    R = ring(text)
    for a, b in itertools.product(analysis.units(R).tolist(), analysis.jacobson_radical(R).tolist()):
        for v in list(R.elements())[::3]:
            expected = brute_solution(R, a, b, v)
            assert solve_lr(LRProblem(R, a, b, v, "a_unit_b_radical"), "series") == expected
            assert solve_lr(LRProblem(R, a, b, v, "a_unit_b_radical"), "brute") == expected
            x = solve_lr(LRProblem(R, b, a, v, "a_radical_b_unit"))
            assert apply_lr(R, b, a, x) == v


@pytest.mark.parametrize("text", ["Z8", "T2(Z2)", "T2(Z4)", "T3(Z2)"])
def test_series_is_two_sided_inverse(text):
    R = ring(text)
    x = R.all
    for a, b in itertools.product(analysis.units(R).tolist(), analysis.jacobson_radical(R).tolist()):
        phi = lr_inverse(LRProblem(R, a, b, 0, "a_unit_b_radical"))
        assert np.array_equal(phi(apply_lr(R, a, b, x)), x)
        assert np.array_equal(apply_lr(R, a, b, phi(x)), x)


@pytest.mark.parametrize("text", ["Z8", "Z9", "T2(Z2)", "T2(Z4)"])
def test_central_power_correction(text):
    """phi composed with l_a - r_b on either side is left multiplication by 1 - a^-n b^n."""
    R = ring(text)
    x = R.all
    checked = 0
    for a, b in itertools.product(analysis.units(R).tolist(), analysis.jacobson_radical(R).tolist()):
        a_inv = analysis.inverse(R, a)
        for n in range(1, (analysis.nilpotency_index(R, b) or 1) + 1):
            bn = R.power(b, n)
            if not np.array_equal(R.mul(bn, x), R.mul(x, bn)):
                continue
            c = R.sub(R.one, R.mul(R.power(a_inv, n), bn))
            phi = series_unit_left(R, a, b, x, n)
            assert np.array_equal(apply_lr(R, a, b, phi), R.mul(c, x))
            assert np.array_equal(series_unit_left(R, a, b, apply_lr(R, a, b, x), n), R.mul(c, x))
            for v in (0, R.one, R.order - 1):
                problem = LRProblem(R, a, b, v, "a_unit_b_radical")
                assert solve_lr(problem, power=n) == solve_lr(problem, method="brute")
            checked += 1
    assert checked > 0


def test_mirrored_central_power():
    R = ring("Z8")
    # a = 2 is central; power 1 leaves the correction 1 - 2 b^-1
    for b in analysis.units(R).tolist():
        for v in R.elements():
            problem = LRProblem(R, 2, b, v, "a_radical_b_unit")
            assert solve_lr(problem, power=1) == solve_lr(problem, power=None) == brute_solution(R, 2, b, v)


@pytest.mark.parametrize("text", BATTERY)
def test_bleachedness_matches_pairwise_bijectivity(text):
    R = ring(text)
    J, U = analysis.jacobson_radical(R).tolist(), analysis.units(R).tolist()
    pairwise = all(is_lr_bijective(R, a, b) and is_lr_bijective(R, b, a)
                   for a, b in itertools.product(J, U))
    assert (analysis.is_uniquely_bleached(R) is True) == pairwise


def test_problem_modes():
    Z8 = ring("Z8")
    assert LRProblem.detect(Z8, 1, 2, 0).mode == "a_unit_b_radical"
    assert LRProblem.detect(Z8, 2, 1, 0).mode == "a_radical_b_unit"
    assert LRProblem.detect(Z8, 1, 1, 0).mode == "generic"
    with pytest.raises(PreconditionViolated):
        LRProblem(Z8, 2, 1, 0, "a_unit_b_radical")
    with pytest.raises(PreconditionViolated):
        LRProblem(Z8, 1, 2, 0, "a_radical_b_unit")
    with pytest.raises(ValueError):
        LRProblem(Z8, 1, 2, 0, "sideways")


def test_series_errors():
    Z8 = ring("Z8")
    with pytest.raises(PreconditionViolated):
        solve_lr(LRProblem(Z8, 1, 3, 1))
    with pytest.raises(NotBijective):
        solve_lr(LRProblem(Z8, 1, 1, 1), method="brute")
    with pytest.raises(NotBijective):
        solve_lr(LRProblem(Z8, 1, 1, 0), method="brute")
    T = ring("T2(Z2)")
    N = tri(T, [[0, 1], [0]])
    with pytest.raises(PreconditionViolated):
        # N is not central
        solve_lr(LRProblem(T, T.one, N, 0, "a_unit_b_radical"), power=1)
    with pytest.raises(PreconditionViolated):
        solve_lr(LRProblem(Z8, 1, 2, 0, "a_unit_b_radical"), power=0)
    with pytest.raises(ValueError):
        solve_lr(LRProblem(Z8, 1, 2, 0, "a_unit_b_radical"), method="guess")


def test_generic_brute_force_when_map_is_bijective():
    Z5 = ring("Z5")
    # 2x - 3x = -x is bijective even though neither side is radical
    assert solve_lr(LRProblem(Z5, 2, 3, 1), method="brute") == 4
