import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purebraid.braid import Permutation, parse_permutation
from purebraid.chords import (
    CablingSpec,
    ChordDiagram,
    DiagramCombination,
    enumerate_non_decreasing,
    iter_diagrams,
    normal_form,
    relation_4t,
)
from purebraid.errors import BudgetExceeded, InputError
from purebraid.oracles import dense_weight
from purebraid.quantum import all_permutations
from purebraid.weights import (
    NPolynomial,
    Path,
    coeff,
    evaluate_combination,
    format_path,
    format_polynomial,
    iter_liftings,
    iter_paths,
    lifting_count,
    pair_to_path,
    parse_path,
    path_of_diagram,
    path_to_pair,
    separation_matrix,
    flat_delta_check,
    w_k_sigma,
    w_k_sigma_via_cabling,
    w_path,
    w_sigma,
)

SAMPLE_PATH = "{S1, S1 S3 S3}"


def D(n, *chords):
    return ChordDiagram.of(n, chords)


# -- polynomials and paths ---------------------------------------------------

def test_npolynomial():
    p = NPolynomial((0, 3, 0, -1))
    assert format_polynomial(p) == "-N^3 + 3*N"
    assert format_polynomial(NPolynomial()) == "0"
    assert p(2) == -2
    assert coeff(NPolynomial.monomial(3), 3) == 1
    assert coeff(NPolynomial.monomial(3, 4), 2) == 0
    assert (p - p).is_zero()


def test_path_canonical_form():
    assert format_path(parse_path("{S3 S1 S3, S1}")) == SAMPLE_PATH
    assert parse_path("{S1 S2}") == parse_path("{S2 S1}")
    assert parse_path("{S1 S1 S2}") != parse_path("{S1 S2 S2}")
    assert Path.of([2], [1]).letters == 2
    for bad in ("S1 S2", "{S0}", "{S1,, S2}", "{T1}"):
        with pytest.raises(InputError):
            parse_path(bad)


def test_pair_to_path_examples():
    assert format_path(pair_to_path(CablingSpec((2, 0, 2)), parse_permutation("(1)(234)"))) == SAMPLE_PATH
    assert pair_to_path(CablingSpec((1, 1, 1)), Permutation.identity(3)) == Path.of([1], [2], [3])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_path_pair_roundtrip(n):
    for p in iter_paths(n, 5):
        spec, sigma = path_to_pair(p, n)
        assert pair_to_path(spec, sigma) == p


def test_pair_to_path_ignores_bundle_conjugation():
    spec = CablingSpec((2, 0, 2))
    sigma = parse_permutation("(1)(234)")
    swap = Permutation.from_cycles(4, [(3, 4)])
    conj = swap.then(sigma).then(swap)
    assert pair_to_path(spec, conj) == pair_to_path(spec, sigma)


# -- weights -----------------------------------------------------------------

def test_w_sigma_examples():
    assert w_sigma(ChordDiagram(3), Permutation.identity(3)) == NPolynomial.monomial(3)
    assert w_sigma(D(2, (1, 2)), Permutation.identity(2)) == NPolynomial.monomial(1)
    assert w_sigma(D(2, (1, 2), (1, 2)), Permutation.identity(2)) == NPolynomial.monomial(2)


def test_w_k_sigma_examples():
    assert w_k_sigma(D(2, (1, 2)), CablingSpec((2, 2)), Permutation.identity(4)) == NPolynomial.monomial(3, 4)
    assert w_k_sigma(D(3, (1, 2)), CablingSpec((1, 0, 2)), Permutation.identity(3)).is_zero()
    d = D(3, (1, 3), (2, 3))
    assert w_k_sigma(d, CablingSpec((1, 1, 1)), Permutation.identity(3)) == w_sigma(d, Permutation.identity(3))


def test_w_path_examples():
    p = parse_path(SAMPLE_PATH)
    assert w_path(D(3, (1, 3), (2, 3)), p).is_zero()
    assert w_path(ChordDiagram(3), p) == NPolynomial.monomial(2)
    # frozen from the three independent routes, which agree
    assert format_polynomial(w_path(D(3, (1, 3)), p)) == "2*N^3 + 2*N"
    assert format_polynomial(w_path(D(3, (1, 3), (1, 3)), p)) == "N^4 + 15*N^2"
    assert lifting_count(D(3, (1, 3), (1, 3)), p) == 16


def test_w_path_rejects_letter_beyond_strands():
    with pytest.raises(InputError):
        w_path(D(2, (1, 2)), parse_path("{S3}"))


@pytest.mark.parametrize("n", [2, 3])
def test_routes_agree(n):
    diagrams = [d for m in range(3) for d in iter_diagrams(n, m)]
    for p in iter_paths(n, 4):
        spec, sigma = path_to_pair(p, n)
        for d in diagrams:
            direct = w_path(d, p)
            assert direct == w_k_sigma(d, spec, sigma)
            assert direct == w_k_sigma_via_cabling(d, spec, sigma)


@pytest.mark.parametrize("N", [2, 3])
def test_w_sigma_matches_dense_traces(N):
    cache = {}
    for n in (2, 3):
        for m in range(3):
            for d in iter_diagrams(n, m):
                for sigma in all_permutations(n):
                    assert w_sigma(d, sigma)(N) == dense_weight(N, n, d.chords, sigma, cache)


def test_lifting_component_bound():
    # c <= m + r, with equality exactly for liftings without crossings or connecting chords
    rng = random.Random(12)
    seen_equal = seen_strict = 0
    for _ in range(40):
        n = rng.choice((2, 3))
        p = rng.choice(list(iter_paths(n, 4)))
        m = rng.randint(0, 3)
        d = rng.choice(list(iter_diagrams(n, m)))
        r = len(p.components)
        for lift in iter_liftings(d, p):
            assert lift.components <= m + r
            tight = not lift.crossing and not lift.connecting
            assert (lift.components == m + r) == tight
            seen_equal += tight
            seen_strict += not tight
    assert seen_equal and seen_strict


def test_lifting_count_matches_enumeration():
    p = parse_path("{S1 S2, S2 S3 S3}")
    for d in iter_diagrams(3, 2):
        assert lifting_count(d, p) == sum(1 for _ in iter_liftings(d, p))


# -- the separating family ---------------------------------------------------

def test_path_of_diagram():
    assert path_of_diagram(D(3, (1, 2), (1, 3), (2, 3))) == Path.of([1], [1, 2], [2, 1, 3])
    assert path_of_diagram(ChordDiagram(3)) == Path.of([1], [2], [3])
    with pytest.raises(InputError):
        path_of_diagram(D(3, (1, 3), (1, 2)))


def test_flat_delta_examples():
    assert flat_delta_check(3, (1,), (1,), 3) == 1
    assert flat_delta_check(3, (2,), (1,), 3) == 0
    assert flat_delta_check(4, (1, 3), (1, 3), 4) == 1


def test_flat_delta_small_exhaustive():
    for nu in (2, 3):
        for m in range(3):
            for i in itertools.product(range(1, nu), repeat=m):
                for j in itertools.product(range(1, nu), repeat=m):
                    assert flat_delta_check(nu, i, j, 3) == (1 if i == j else 0)


def test_separation_matrix_small():
    mat = separation_matrix(3, 2)
    assert len(mat.rows) == 7
    assert mat.is_unitriangular()
    assert str(mat).splitlines()[-1] == "unitriangular=true"


def test_separation_matrix_budget():
    with pytest.raises(BudgetExceeded):
        separation_matrix(4, 3, budget=1000)
    with pytest.raises(InputError):
        separation_matrix(1, 2)


def test_evaluate_combination():
    x = relation_4t(1, 2, 3, 3)
    for d in enumerate_non_decreasing(3, 2):
        assert evaluate_combination(x, path_of_diagram(d)).is_zero()
    assert evaluate_combination(DiagramCombination.zero(3), parse_path(SAMPLE_PATH)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([(1, 2), (1, 3), (2, 3)]), min_size=1, max_size=3))
def test_straightening_preserves_weights(chords):
    d = ChordDiagram(3, tuple(chords))
    x = DiagramCombination.of(d)
    diff = x - normal_form(x)
    for b in enumerate_non_decreasing(3, d.degree):
        assert evaluate_combination(diff, path_of_diagram(b)).is_zero()


def test_path_of_diagram_keeps_every_empty_order():
    # each empty order contributes its singleton loop, S1 included
    assert path_of_diagram(D(3, (1, 3))) == parse_path("{S1, S2, S1 S3}")
    assert path_of_diagram(D(3, (1, 3), (2, 3))) == parse_path("{S1, S2, S2 S1 S3}")
