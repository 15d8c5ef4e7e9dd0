import random
from fractions import Fraction

import numpy as np
import pytest

from purebraid.braid import (
    BraidWord,
    Permutation,
    SingularBraidWord,
    chord_diagram_of_singular,
    compose,
    parse_braid,
    parse_singular_braid,
    pure_generator_artin,
)
from purebraid.errors import BudgetExceeded, InputError, PurityError
from purebraid.oracles import flip, permutation_operator, q_minus_q_inverse_by_factorials
from purebraid.quantum import (
    KAPPA,
    all_permutations,
    j_invariant,
    j_singular,
    local_operator,
    measure_kappa,
    q_minus_q_inverse,
    r_matrix,
    separate,
    trace_sigma,
    weight_consistency,
    weight_consistency_values,
)
from purebraid.sampling import random_pure_word, random_rewrites, random_singular_word, random_word
from purebraid.series import SeriesMatrix, SeriesScalar, format_series
from purebraid.weights import w_sigma


# -- scalar series -----------------------------------------------------------

def test_scalar_arithmetic():
    a = SeriesScalar.exp(1, 4)
    b = SeriesScalar.exp(-1, 4)
    assert (a * b).coefficients == (1, 0, 0, 0, 0)
    assert (a.inverse() - b).is_zero()
    assert list((a - b).coefficients) == q_minus_q_inverse_by_factorials(4)
    assert q_minus_q_inverse(4).coefficients == (0, 2, 0, Fraction(1, 3), 0)


def test_scalar_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        q_minus_q_inverse(3).inverse()


def test_scalar_truncation_mismatch():
    with pytest.raises(InputError):
        SeriesScalar.exp(1, 2) + SeriesScalar.exp(1, 3)


def test_format_series():
    assert format_series(q_minus_q_inverse(3)) == "0 + 2*h + 0*h^2 + 1/3*h^3 (mod h^4)"


# -- matrix series -----------------------------------------------------------

def test_matrix_product_matches_scalar_product():
    rng = random.Random(1)
    M = 3
    coeffs_a = [[[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)]
                for _ in range(M + 1)]
    coeffs_b = [[[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)]
                for _ in range(M + 1)]
    A = SeriesMatrix.from_coefficients(coeffs_a)
    B = SeriesMatrix.from_coefficients(coeffs_b)
    C = A @ B
    for a in range(2):
        for b in range(2):
            expected = A.entry(a, 0) * B.entry(0, b) + A.entry(a, 1) * B.entry(1, b)
            assert C.entry(a, b) == expected


def test_matrix_inverse():
    R = r_matrix(2, 3)
    ident = SeriesMatrix.identity(4, 3)
    assert R @ R.inverse() == ident
    assert R.inverse() @ R == ident


# -- the R-matrix contract ---------------------------------------------------

@pytest.mark.parametrize("N", [2, 3])
def test_r_matrix_contract(N):
    M = 4
    R = r_matrix(N, M)
    assert np.array_equal(R.scaled[0].astype(np.int64), flip(N))
    R1, R2 = local_operator(R, 1, 3, N), local_operator(R, 2, 3, N)
    assert (R1 @ R2 @ R1 - R2 @ R1 @ R2).is_zero()
    skein = R - R.inverse() - SeriesMatrix.identity(N * N, M).scale_series(q_minus_q_inverse(M))
    assert skein.is_zero()


def test_r_matrix_rejects_bad_parameters():
    with pytest.raises(InputError):
        r_matrix(1, 3)
    with pytest.raises(InputError):
        r_matrix(2, 0)


@pytest.mark.parametrize("N,n", [(2, 3), (3, 2), (2, 4)])
def test_j_invariant_matches_dense_product(N, n):
    M = 3
    R = r_matrix(N, M)
    Rinv = R.inverse()
    rng = random.Random(N * 10 + n)
    for _ in range(5):
        w = random_word(rng, n, 5)
        E = SeriesMatrix.identity(N**n, M)
        for k, e in w.letters:
            E = E @ local_operator(R if e == 1 else Rinv, k, n, N)
        assert j_invariant(w, N, M) == E


def test_j_invariant_basic():
    ident = SeriesMatrix.identity(8, 4)
    assert j_invariant(BraidWord(3), 2, 4) == ident
    assert j_invariant(parse_braid("n=3; s1 s2 s1 s2^-1 s1^-1 s2^-1"), 2, 4) == ident
    a, b = parse_braid("n=3; s1 s2^-1"), parse_braid("n=3; s2 s2 s1")
    assert j_invariant(compose(a, b), 2, 4) == j_invariant(a, 2, 4) @ j_invariant(b, 2, 4)


def test_j_invariant_dimension_budget():
    with pytest.raises(BudgetExceeded):
        j_invariant(BraidWord(5), 3, 2)


@pytest.mark.parametrize("N", [2, 3])
def test_j_invariant_survives_rewrites(N):
    rng = random.Random(20 + N)
    for _ in range(10):
        w = random_word(rng, 3, 6)
        assert j_invariant(w, N, 4) == j_invariant(random_rewrites(rng, w, 3), N, 4)


# -- singular braids and traces ----------------------------------------------

def test_j_singular_without_doubles_is_j_invariant():
    s = parse_singular_braid("n=3; s1 s2^-1 s1")
    assert j_singular(s, 2, 3) == j_invariant(s.resolution(), 2, 3)


def test_double_point_is_r_minus_r_inverse():
    N, M = 2, 3
    R = r_matrix(N, M)
    J = j_singular(parse_singular_braid("n=2; d1"), N, M)
    assert J == R - R.inverse()
    assert not np.any(J.scaled[0] != 0)


@pytest.mark.parametrize("N", [2, 3])
def test_vassiliev_grading(N):
    rng = random.Random(30 + N)
    for s0 in range(4):
        for _ in range(4):
            s = random_singular_word(rng, 3, s0 + 3, s0)
            J = j_singular(s, N, 4)
            assert J.lowest_nonzero_order() is None or J.lowest_nonzero_order() >= s0


def test_trace_sigma_of_identity():
    for N in (2, 3):
        ident = SeriesMatrix.identity(N**3, 2, strands=3, base=N)
        for sigma in all_permutations(3):
            assert trace_sigma(ident, sigma, N).coefficient(0) == N ** sigma.cycle_count()


def test_trace_sigma_matches_permutation_operator():
    N, n = 2, 3
    J = j_invariant(parse_braid("n=3; s1 s2 s2 s1^-1"), N, 2)
    for sigma in all_permutations(n):
        Q = permutation_operator(N, sigma)
        for k in range(3):
            expected = sum(Fraction(x) for x in np.diagonal(Q.astype(object) @ J.coefficient(k)))
            assert trace_sigma(J, sigma, N).coefficient(k) == expected


def test_trace_sigma_size_mismatch():
    with pytest.raises(InputError):
        trace_sigma(SeriesMatrix.identity(4, 2, strands=2, base=2), Permutation.identity(3), 2)


# -- weight consistency ------------------------------------------------------

def test_kappa_is_measured_and_frozen():
    assert measure_kappa() == KAPPA == 2


def test_weight_consistency_single_chord():
    s = parse_singular_braid("n=2; d1 s1")
    r = weight_consistency_values(s, Permutation.identity(2), 2)
    assert r.holds
    assert r.quantum == KAPPA * w_sigma(chord_diagram_of_singular(s), Permutation.identity(2))(2)


@pytest.mark.parametrize("N", [2, 3])
def test_weight_consistency_random(N):
    rng = random.Random(40 + N)
    for n in (2, 3):
        for m in (1, 2):
            for _ in range(4):
                s = random_singular_word(rng, n, m + 2 * rng.randint(0, 2) + m % 2, m, pure=True)
                for sigma in all_permutations(n):
                    assert weight_consistency(s, sigma, N, 4)


def test_weight_consistency_needs_pure_resolution():
    with pytest.raises(PurityError):
        weight_consistency(SingularBraidWord(2, ((1, "double"),)), Permutation.identity(2), 2)


# -- separation --------------------------------------------------------------

def test_separate_equal_braids():
    w = random_pure_word(random.Random(0), 3, 8, min_length=4)
    r = separate(w, w, 3, 3)
    assert not r.separated and r.oracle_equal and not r.needs_more
    assert r.lines() == ["separated=false N=3 M=3", "oracle=equal"]


def test_separate_named_pairs():
    a12 = pure_generator_artin(1, 2, 2)
    r = separate(a12, compose(a12, a12), 2, 2)
    assert r.lines()[0] == "separated=true degree=1 sigma=(1)(2) lhs=4 rhs=8"
    a12, a13 = pure_generator_artin(1, 2, 3), pure_generator_artin(1, 3, 3)
    r = separate(compose(a12, a13), compose(a13, a12), 3, 3)
    assert r.separated and r.degree <= 2 and r.oracle_equal is False
    assert r.lines()[1] == "oracle=unequal"


def test_separate_rejects_bad_input():
    with pytest.raises(PurityError):
        separate(parse_braid("n=2; s1"), parse_braid("n=2; s1"), 2, 2)
    with pytest.raises(InputError):
        separate(BraidWord(2), BraidWord(3), 2, 2)
