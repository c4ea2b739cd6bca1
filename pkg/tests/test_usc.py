import itertools

import numpy as np
import pytest

from ringlab import analysis, oracle, usc
from ringlab.errors import NotAUnit, NotUniquelyClean, PreconditionViolated
from ringlab.rings import TriMatrix

from conftest import ring


def tri(R, rows):
    return R.from_matrix(TriMatrix.from_rows(rows))


def diag(R, *entries):
    n = len(entries)
    return R.from_matrix(TriMatrix.from_rows(
        [[entries[i]] + [0] * (n - i - 1) for i in range(n)]))


def test_uc_decompose_base_examples():
    assert usc.uc_decompose_base(ring("Z2"), 0).pair == (1, 1)
    assert usc.uc_decompose_base(ring("Z4"), 2).pair == (1, 1)
    with pytest.raises(NotUniquelyClean):
        usc.uc_decompose_base(ring("Z6"), 2)


def test_theorem1_examples():
    T = ring("T2(Z2)")
    A = tri(T, [[1, 1], [0]])
    x = usc.decompose_theorem1(T, A)
    assert x.e == tri(T, [[0, 1], [1]]) and x.u == T.one and x.commuting
    for text in ["T2(Z2)", "T3(Z4)", "T2(Z2 x Z2)"]:
        TR = ring(text)
        assert usc.decompose_theorem1(TR, TR.one).pair == (0, TR.one)
    T3 = ring("T3(Z2)")
    assert usc.decompose_theorem1(T3, 0).pair == (T3.one, T3.one)
    assert [x.pair for x in oracle.expressions(T3, 0, "strongly_clean")] == [(T3.one, T3.one)]


@pytest.mark.parametrize("text", ["T2(Z2)", "T3(Z2)", "T2(Z4)", "T2(Z2 x Z2)",
                                  "T2(F2[x]/(x^2))"])
def test_theorem1_matches_oracle(text):
    TR = ring(text)
    for A in TR.elements():
        found = oracle.expressions(TR, A, "strongly_clean")
        assert len(found) == 1
        assert usc.decompose_theorem1(TR, A).pair == found.expressions[0].pair


@pytest.mark.parametrize("text", ["T2(Z3)", "T2(Z6)"])
def test_negative_controls(text):
    TR = ring(text)
    census = oracle.uniqueness_census(TR, "strongly_clean")
    assert set(census) != {1}
    with pytest.raises(PreconditionViolated):
        usc.decompose_theorem1(TR, 0)


def test_precondition_errors():
    with pytest.raises(PreconditionViolated):
        usc.decompose_theorem1(ring("Z4"), 0)
    with pytest.raises(PreconditionViolated):
        usc.decompose_theorem1(ring("T2(T2(Z2))"), 0)
    with pytest.raises(PreconditionViolated):
        usc.comm2_decompose(ring("T2(Z3)"), 0)
    with pytest.raises(PreconditionViolated):
        # T2(Z2) is uniquely strongly clean but not commutative
        usc.comm2_decompose(ring("T2(T2(Z2))"), 0)
    with pytest.raises(PreconditionViolated):
        usc.signed_decompose(ring("Z2"), 0)


def test_comm2_examples():
    T = ring("T2(Z2)")
    A = tri(T, [[1, 1], [0]])
    assert usc.comm2_j_idempotent(T, A) == A
    assert usc.comm2_decompose(T, A).e == tri(T, [[0, 1], [1]]) == usc.decompose_theorem1(T, A).e
    for text in ["T2(Z2)", "T3(Z2)"]:
        TR = ring(text)
        assert usc.comm2_j_idempotent(TR, 0) == 0
        assert usc.comm2_j_idempotent(TR, TR.one) == TR.one
        assert usc.comm2_decompose(TR, 0).e == TR.one
    T4 = ring("T2(Z4)")
    A = diag(T4, 2, 2)
    x = usc.comm2_decompose(T4, A)
    found = oracle.expressions(T4, A, "comm2")
    assert [y.pair for y in found] == [x.pair]
    assert usc.in_comm2(T4, A, x.e) and analysis.in_radical(T4, T4.sub(A, usc.comm2_j_idempotent(T4, A)))


@pytest.mark.parametrize("text", ["T2(Z2)", "T2(Z4)", "T3(Z2)", "T2(Z2 x Z2)", "T2(Z8)"])
def test_comm2_unique_and_matches_theorem1(text):
    TR = ring(text)
    for A in TR.elements():
        x = usc.comm2_decompose(TR, A)
        assert [y.pair for y in oracle.expressions(TR, A, "comm2")] == [x.pair]
        assert x.e == usc.decompose_theorem1(TR, A).e


def test_comm2_large_ring_uses_commutant_check():
    TR = ring("T2(Z32)")
    assert TR.order > usc.EXACT_COMM2_LIMIT
    rng = np.random.default_rng(1)
    for A in rng.integers(0, TR.order, size=20).tolist():
        x = usc.comm2_decompose(TR, A)
        comm = analysis.commutant(TR, A)
        assert np.array_equal(TR.mul(x.e, comm), TR.mul(comm, x.e))
        assert x.e == usc.decompose_theorem1(TR, A).e


def test_signed_examples():
    T4 = ring("T2(Z4)")
    A = diag(T4, 2, 2)
    x = usc.signed_decompose(T4, A)
    assert x.e == T4.one
    assert x.u == diag(T4, 1, 1) and T4.add(A, x.e) == diag(T4, 3, 3)
    assert [y.pair for y in oracle.expressions(T4, A, "signed")] == [x.pair]
    assert usc.signed_decompose(T4, 0).e == T4.one


@pytest.mark.parametrize("text", ["T2(Z4)", "T2(Z2)", "T3(Z2)"])
def test_signed_unique(text):
    TR = ring(text)
    for A in TR.elements():
        x = usc.signed_decompose(TR, A)
        assert [y.pair for y in oracle.expressions(TR, A, "signed")] == [x.pair]


def test_boolean_base_signed_equals_comm2():
    TR = ring("T2(Z2 x Z2)")
    rng = np.random.default_rng(0)
    for A in rng.integers(0, TR.order, size=10).tolist():
        s = usc.signed_decompose(TR, A)
        assert s.pair == usc.comm2_decompose(TR, A).pair
        assert len(oracle.expressions(TR, A, "comm2")) == 1
        # characteristic 2: A + E = A - E
        assert TR.add(A, s.e) == TR.sub(A, s.e)


def test_corner_equation_by_brute_force():
    """The corner row x of E solves (u11 + 2e11 - 1)x - xU1 = e11 alpha - alpha E1."""
    T, R = ring("T2(Z4)"), ring("Z4")
    for A in T.elements():
        a11, (alpha,), a22 = T.unpack(A)[0, 0], [T.unpack(A)[0, 1]], T.unpack(A)[1, 1]
        E = T.unpack(usc.decompose_theorem1(T, A).e)
        e11, x, E1 = E[0, 0], E[0, 1], E[1, 1]
        u11, U1 = R.sub(a11, e11), R.sub(a22, E1)
        w = R.sub(R.add(u11, R.add(e11, e11)), 1)
        rhs = R.sub(R.mul(e11, alpha), R.mul(alpha, E1))
        solutions = [y for y in R.elements() if R.sub(R.mul(w, y), R.mul(y, U1)) == rhs]
        assert solutions == [x]


def test_flags_reverify():
    for text in ["T2(Z4)", "T3(Z2)"]:
        TR = ring(text)
        units = set(analysis.units(TR).tolist())
        for A in list(TR.elements())[::7]:
            for x in (usc.decompose_theorem1(TR, A), usc.comm2_decompose(TR, A),
                      usc.signed_decompose(TR, A)):
                assert TR.add(x.e, x.u) == A and TR.mul(x.e, x.e) == x.e and x.u in units
                if x.commuting:
                    assert TR.mul(x.e, A) == TR.mul(A, x.e)
                if x.double_commutant:
                    assert x.e in analysis.double_commutant(TR, A)
                if x.signed:
                    assert TR.add(A, x.e) in units


def test_tri_inverse():
    T = ring("T3(Z4)")
    rng = np.random.default_rng(2)
    units = analysis.units(ring("Z4"))
    for _ in range(50):
        d = [int(v) for v in rng.choice(units, 3)]
        M = T.add(diag(T, *d), T.from_matrix(TriMatrix.from_rows(
            [[0, *rng.integers(0, 4, 2).tolist()], [0, int(rng.integers(0, 4))], [0]])))
        inv = usc.tri_inverse(T, M)
        assert T.mul(M, inv) == T.one == T.mul(inv, M)
    with pytest.raises(NotAUnit):
        usc.tri_inverse(T, diag(T, 1, 2, 1))
    assert not usc.is_tri_unit(T, 0)


@pytest.mark.parametrize("text", ["T2(Z2)", "T2(Z4)"])
def test_tri_units_agree_with_analysis(text):
    T = ring(text)
    assert [A for A in T.elements() if usc.is_tri_unit(T, A)] == analysis.units(T).tolist()


def test_row_times():
    T = ring("T2(Z4)")
    M = tri(T, [[1, 2], [3]])
    assert usc.row_times(T, [1, 1], M) == [1, 1]
    assert list(itertools.islice(usc.row_times(T, [2, 0], M), 2)) == [2, 0]
