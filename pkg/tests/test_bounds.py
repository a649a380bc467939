from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from almostint.bounds import (
    SetPairSystem,
    binom,
    bollobas_check,
    check_lemma,
    cor25_bound,
    cor26_bound,
    delta_b_r,
    delta_b_r_telescoped,
    doubled_pair_system,
    ekr_bound,
    ell_upper_bound,
    tail_core_boundary_n,
    tail_core_min_r,
    size_b_plus,
    size_b_r,
    summarize,
    theorem_case,
)
from almostint.errors import DomainError, ParameterError
from almostint.family import mask_of
from almostint.partition import canonical_partition
from conftest import c4_2


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(12, 4) == 495
    assert binom(5, 7) == 0
    assert binom(5, -1) == 0


def test_binom_matches_pascal_triangle():
    row = [1]
    for n in range(0, 120):
        for k in range(-2, n + 3):
            assert binom(n, k) == (row[k] if 0 <= k <= n else 0)
        row = [1] + [row[i] + row[i + 1] for i in range(n)] + [1]
    for k in range(-1, 4):
        assert binom(-1, k) == 0


def test_ekr_examples():
    assert ekr_bound(6, 3) == 10
    assert ekr_bound(13, 3) == 66
    for k in range(1, 8):
        assert ekr_bound(2 * k, k) == comb(2 * k - 1, k - 1)
    with pytest.raises(DomainError):
        ekr_bound(5, 3)


def test_b_r_formula_examples():
    assert size_b_r(10, 4, 3) == size_b_r(10, 4, 4) == 70
    for n, k in [(9, 4), (12, 5), (20, 7)]:
        assert delta_b_r(n, k, k + 1) == comb(n - 1, k - 1) - comb(n - k - 1, k - 1)
    sizes = [size_b_r(11, 5, r) for r in range(4, 7)]
    assert sizes == sorted(set(sizes))
    with pytest.raises(DomainError):
        size_b_r(10, 4, 6)


@given(st.integers(3, 12), st.data())
def test_delta_two_ways(k, data):
    n = data.draw(st.integers(2 * k + 1, 4 * k + 10))
    r = data.draw(st.integers(3, k + 1))
    assert delta_b_r(n, k, r) == delta_b_r_telescoped(n, k, r)


def test_size_b_plus_examples():
    assert size_b_plus(13, 3) == 32
    for n in range(13, 31):
        assert size_b_plus(n, 3) == 3 * n - 7
    with pytest.raises(DomainError):
        size_b_plus(5, 4)


def test_ell_upper_bound_examples():
    assert ell_upper_bound(1) == 1
    assert ell_upper_bound(2) == 3 == canonical_partition(c4_2()).ell
    assert ell_upper_bound(4) == 35


def test_threshold_partner_cap_examples():
    assert cor25_bound(10, 4, 3) == (49, 21)
    for n, k in [(9, 4), (12, 5)]:
        assert cor25_bound(n, k, k)[1] == n - k
    with pytest.raises(DomainError):
        cor25_bound(8, 4, 3)


def test_lex_k_partner_cap_examples():
    assert cor26_bound(9, 4) == 46
    for k in range(2, 7):
        assert cor26_bound(2 * k + 1, k) == comb(2 * k, k - 1) - comb(k + 1, k - 1)


@pytest.mark.parametrize("n,k,case", [
    (13, 3, "i"), (15, 4, "ii"), (12, 3, "outside"), (40, 10, "ii"), (31, 10, "iii"),
    (30, 10, "outside"), (14, 4, "outside"), (100, 2, "outside"),
])
def test_theorem_case(n, k, case):
    assert theorem_case(n, k) == case


def test_theorem_case_iii_boundary_exact():
    # n > 2k + 2 sqrt(k) + 4, decided in integers; k = 16 has sqrt(k) = 4 exactly
    assert theorem_case(44, 16) == "outside"
    assert theorem_case(45, 16) == "iii"


# -- set-pair systems --------------------------------------------------------


def test_bollobas_trivial():
    v = bollobas_check(SetPairSystem(((1, 2), (2, 1)), 1, 1))
    assert v.hypothesis_holds and v.m == 2 and v.bound == 2 and v.within_bound


def test_bollobas_on_c4_2():
    p = canonical_partition(c4_2())
    v = bollobas_check(doubled_pair_system(p.pairs, 2))
    assert v.hypothesis_holds and v.m == 6 == v.bound and v.within_bound


def test_bollobas_violated_hypothesis():
    s = SetPairSystem(((mask_of([1]), mask_of([2])), (mask_of([3]), mask_of([4]))), 1, 1)
    v = bollobas_check(s)
    assert not v.hypothesis_holds and v.within_bound is None


def test_set_pair_validation():
    with pytest.raises(ParameterError):
        SetPairSystem(((mask_of([1, 2]), mask_of([2, 3])),), 2, 2)
    with pytest.raises(ParameterError):
        SetPairSystem(((mask_of([1]), mask_of([2, 3])),), 2, 2)


def test_doubled_system_on_corpus(corpus):
    for f in corpus:
        p = canonical_partition(f)
        v = bollobas_check(doubled_pair_system(p.pairs, f.k))
        assert v.hypothesis_holds and v.within_bound
        assert 2 * p.ell <= comb(2 * f.k, f.k)


# -- lemma checkers ----------------------------------------------------------


def test_central_ratio_examples():
    vs = {(v.point, v.equation): v for v in check_lemma("3.1", kmin=4, kmax=6)}
    six = vs[((6,), "a")]
    assert (six.lhs, six.rhs, six.status) == (495, 462, "pass")
    five = vs[((5,), "a")]
    assert (five.lhs, five.rhs) == (comb(10, 3), comb(9, 4)) == (120, 126)
    assert five.status == "out-of-domain"


def test_tail_core_boundary_helpers():
    for k in range(1, 400):
        n = tail_core_boundary_n(k)
        # smallest n with n >= 2(k + sqrt k + 2), via exact rationals
        assert (n - 2 * k - 4) ** 2 >= 4 * k and (n - 2 * k - 5 < 0 or (n - 2 * k - 5) ** 2 < 4 * k)
        r = tail_core_min_r(k)
        assert (r - 5) ** 2 >= k and (r - 6 < 0 or (r - 6) ** 2 < k)
    assert tail_core_boundary_n(9) == 28
    assert tail_core_min_r(9) == 8


def test_tail_vs_core_example_k9():
    vs = [v for v in check_lemma("3.3", kmin=9, kmax=9) if v.equation == "main"]
    v = next(v for v in vs if v.point == (28, 9, 8))
    assert (v.lhs, v.rhs) == (comb(21, 3), comb(19, 7)) and v.lhs < v.rhs
    assert v.status == "pass"


def test_tail_absorption_spot_values():
    for v in check_lemma("3.5", kmin=4, kmax=12):
        n, k = v.point
        assert v.lhs == comb(n - 4, k - 3) + comb(2 * k - 1, k - 1)
        assert v.rhs == comb(n - 5, k - 2) + comb(n - 5, k - 4)


def test_consecutive_ratio_against_rationals():
    # the consecutive ratio C(m,k-2)/C(m-1,k-2) lies in [4/3, 2]
    for v in check_lemma("3.2", kmin=10, kmax=14):
        if v.equation in ("upper", "lower"):
            k, m = v.point
            ratio = Fraction(comb(m, k - 2), comb(m - 1, k - 2))
            assert Fraction(4, 3) <= ratio <= 2
            assert v.status == "pass"


def test_check_lemma_jobs_do_not_change_result():
    assert check_lemma("3.3", kmin=9, kmax=20) == check_lemma("3.3", kmin=9, kmax=20, jobs=2)


def test_check_lemma_unknown():
    with pytest.raises(ParameterError):
        check_lemma("9.9")


def test_summarize_counts():
    s = summarize(check_lemma("3.1", kmin=2, kmax=10))
    assert s["fail"] == 0 and s["pass"] + s["out-of-domain"] == 18
