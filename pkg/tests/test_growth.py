import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pinnedgrowth import growth as G
from pinnedgrowth.errors import CapExceededError, FieldMismatchError, InvalidSetError
from pinnedgrowth.sets import FiniteScalarSet, affine_image, geometric_set, interval_set, random_set

S = FiniteScalarSet
int_sets = st.lists(st.integers(-15, 15), min_size=1, max_size=7).map(S)
tiny_sets = st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(S)


def _random_pairs(count, max_size, seed):
    rng = random.Random(seed)
    for k in range(count):
        yield (random_set(rng.getrandbits(64), rng.randint(1, max_size), 12),
               random_set(rng.getrandbits(64), rng.randint(1, max_size), 12))


# -- sumset / productset -------------------------------------------------------

def test_sumset_examples():
    assert list(G.sumset(S([0, 1]), S([0, 1]))) == [0, 1, 2]
    assert list(G.sumset(interval_set(3), interval_set(3))) == [2, 3, 4, 5, 6]
    assert list(G.sumset(S([1, 2, 4]), S([1, 2, 4]))) == [2, 3, 4, 5, 6, 8]


def test_productset_examples():
    assert list(G.productset(S([0, 1, 2]), S([-1, 0, 1]))) == [-2, -1, 0, 1, 2]
    A = S([Fraction(1, 2), 3, 7])
    assert G.productset(A, S([1])) == A
    assert list(G.productset(A, S([0]))) == [0]


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        G.sumset(interval_set(2), interval_set(2, "gaussian"))
    with pytest.raises(FieldMismatchError):
        G.mult_energy(interval_set(2), interval_set(2, "gaussian"))


# -- spectra and energy ------------------------------------------------------------

def test_product_spectrum_examples():
    assert dict(G.product_spectrum(S([0, 1]), S([0, 1]))) == {0: 3, 1: 1}
    assert dict(G.product_spectrum(S([1, 2]), S([1, 2]))) == {1: 1, 2: 2, 4: 1}


@given(int_sets, int_sets)
def test_product_spectrum_total(A, B):
    assert G.product_spectrum(A, B).total == len(A) * len(B)


@pytest.mark.parametrize("A, B, expected", [
    ([0, 1], [0, 1], 10),
    ([1, 2], [1, 2], 6),
    ([1], [1], 1),
])
def test_mult_energy_examples(A, B, expected):
    assert oracles.energy(A, B) == expected
    assert G.mult_energy(S(A), S(B)) == expected
    assert G.mult_energy_bruteforce(S(A), S(B)) == expected


def test_energy_paths_agree_on_random_sets():
    for A, B in _random_pairs(100, 10, seed=5):
        fast = G.mult_energy(A, B)
        assert fast == G.mult_energy_bruteforce(A, B)
        assert fast == G.mult_energy(B, A)
    for A, B in _random_pairs(10, 6, seed=6):
        assert G.mult_energy(A, B) == oracles.energy(list(A), list(B))


def test_energy_bruteforce_cap():
    with pytest.raises(CapExceededError):
        G.mult_energy_bruteforce(interval_set(101), interval_set(100))
    assert G.mult_energy_bruteforce(interval_set(5), interval_set(5), cap=25) == G.mult_energy(
        interval_set(5), interval_set(5))


@given(int_sets, int_sets)
def test_energy_symmetric(A, B):
    assert G.mult_energy(A, B) == G.mult_energy(B, A)


# -- Cauchy-Schwarz ----------------------------------------------------------------

def test_cs_bound_examples():
    assert G.cs_bound(S([1, 2]), S([1, 2])) == Fraction(16, 3)
    assert G.mult_energy(S([1, 2]), S([1, 2])) >= Fraction(16, 3)
    assert G.cs_bound(S([1]), S([1])) == 1 == G.mult_energy(S([1]), S([1]))


def test_cs_bound_below_energy_on_random_sets():
    for A, B in _random_pairs(200, 8, seed=9):
        assert G.cs_bound(A, B) <= G.mult_energy(A, B)


def test_cs_equality_when_products_are_distinct():
    # exponent sets {0,1} + {0,2} are distinct, so every product occurs once
    A, B = S([1, 2]), S([1, 4])
    assert G.cs_bound(A, B) == G.mult_energy(A, B) == 4
    A, B = geometric_set(3, 3), geometric_set(27, 2)
    assert G.cs_bound(A, B) == G.mult_energy(A, B)


@given(int_sets, int_sets)
def test_cs_equality_iff_uniform_multiplicity(A, B):
    counts = set(G.product_spectrum(A, B).values())
    assert (G.cs_bound(A, B) == G.mult_energy(A, B)) == (len(counts) == 1)


# -- Q ------------------------------------------------------------------------------

@pytest.mark.parametrize("A, expected", [
    ([5], (1, 1, 0, 0)),
    ([0, 1], (40, 36, 4, 0)),
    ([0, 1, 2], (273, 225, 36, 12)),
])
def test_count_Q_regression(A, expected):
    assert oracles.q_parts([Fraction(a) for a in A])[:4] == expected
    for method in ("bruteforce", "fast"):
        q = G.count_Q(S(A), method)
        assert (q.q_total, q.q_zero, q.q_diag, q.q_star) == expected


@settings(max_examples=40, deadline=None)
@given(tiny_sets)
def test_count_Q_matches_naive_oracle(A):
    total, zero, diag, star, _ = oracles.q_parts(list(A))
    expected = G.QDecomposition(total, zero, diag, star)
    assert G.count_Q(A) == expected
    assert G.count_Q(A, "fast") == expected


def test_count_Q_partition_and_closed_forms():
    for seed in range(20):
        A = random_set(seed, 2 + seed % 7, 20)
        n = len(A)
        q = G.count_Q(A)
        assert q.q_zero + q.q_diag + q.q_star == q.q_total
        assert q.q_diag == n * n * (n - 1) ** 2
        assert q.q_zero == n * n * (2 * n - 1) ** 2


def test_count_Q_cap():
    with pytest.raises(CapExceededError):
        G.count_Q(interval_set(13))
    assert G.count_Q(interval_set(13), "fast").q_total > 0
    with pytest.raises(CapExceededError):
        G.count_Q(interval_set(5), cap=4)


def test_q_decomposition_rejects_inconsistent_parts():
    with pytest.raises(ValueError):
        G.QDecomposition(10, 1, 2, 3)


# -- shifted energy sums -------------------------------------------------------------

def test_shifted_energy_sum_examples():
    A = S([0, 1])
    assert G.shifted_energy_sum(A, A, G.SUBTRACTIVE) == 40 == G.count_Q(A).q_total


def test_shifted_energy_sum_definition():
    A, B = S([0, 1, 3]), S([2, 5])
    expected = sum(G.mult_energy(affine_image(B, -1, a), affine_image(B, -1, a2)) for a in A for a2 in A)
    assert G.shifted_energy_sum(A, B, G.SUBTRACTIVE) == expected
    expected = sum(G.mult_energy(affine_image(B, 1, a), affine_image(B, 1, a2)) for a in A for a2 in A)
    assert G.shifted_energy_sum(A, B, G.ADDITIVE) == expected


@given(int_sets, int_sets)
def test_additive_is_subtractive_against_negation(A, B):
    assert G.shifted_energy_sum(A, B, G.ADDITIVE) == G.shifted_energy_sum(
        A, affine_image(B, -1, 0), G.SUBTRACTIVE)


def test_shifted_energy_sum_equals_Q():
    for seed in range(30):
        A = random_set(seed, 1 + seed % 8, 15)
        assert G.shifted_energy_sum(A, A) == G.count_Q(A).q_total


# -- pinned pair -----------------------------------------------------------------------

def test_extract_pinned_pair_example():
    cert = G.extract_pinned_pair(S([1, 2]))
    assert (cert.a, cert.a_prime) == (1, 1)
    assert cert.energy == 10
    assert cert.product_set_size == 2
    assert cert.cs_lower_bound == Fraction(16, 10)
    assert cert.cs_holds() and cert.pigeonhole_holds()


def test_extract_pinned_pair_interval_8():
    A = interval_set(8)
    for sign in G.SIGNS:
        cert = G.extract_pinned_pair(A, sign)
        assert cert.product_set_size >= cert.cs_lower_bound
        assert cert.energy * 64 <= G.shifted_energy_sum(A, A, sign)


def test_extract_pinned_pair_is_lexicographic_minimum():
    A = S([0, 1, 3, 7, 8])
    cert = G.extract_pinned_pair(A)
    table = {(a, b): G.mult_energy(affine_image(A, -1, a), affine_image(A, -1, b)) for a in A for b in A}
    best = min(table.values())
    assert cert.energy == best
    assert (cert.a, cert.a_prime) == min(k for k, v in table.items() if v == best)
    pinned = G.productset(affine_image(A, 1, -cert.a), affine_image(A, 1, -cert.a_prime))
    assert cert.product_set_size == len(pinned)


def test_extract_pinned_pair_singleton():
    with pytest.raises(InvalidSetError):
        G.extract_pinned_pair(S([4]))


# -- cross ratios -------------------------------------------------------------------------

def test_cross_ratio_examples():
    assert list(G.cross_ratio_set(S([0, 1]))) == [0, 1]
    assert list(G.cross_ratio_set(S([0, 1, 2]))) == [-1, 0, Fraction(1, 2), 1, 2]
    assert G.cross_ratio_spectrum(S([0, 1])).total == 4
    assert G.cross_ratio_spectrum(S([0, 1, 2])).total == 18


def test_cross_ratio_singleton():
    with pytest.raises(InvalidSetError):
        G.cross_ratio_set(S([1]))


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).map(S).filter(lambda A: len(A) >= 2))
def test_cross_ratio_against_oracle(A):
    naive = Counter(oracles.cross_ratios(list(A)))
    spec = G.cross_ratio_spectrum(A)
    assert dict(spec) == dict(naive)
    assert spec.total == len(A) ** 3 - len(A) ** 2
    assert 0 in spec and 1 in spec


def test_cross_ratio_rational_path_matches_integer_path():
    A = S([Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(9, 2)])
    assert G.cross_ratio_set(A) == G.cross_ratio_set(S([1, 3, 5, 9]))


def test_cross_ratio_footnote_relation():
    for seed in range(15):
        A = random_set(seed, 2 + seed % 5, 10)
        total, _, _, _, ac = oracles.q_parts(list(A))
        sq = G.cross_ratio_spectrum(A).sum_of_squares()
        assert sq == total - ac
        assert sq < total
        assert G.count_Q_degenerate_ac(A) == ac


def test_difference_product_set():
    A = S([0, 1, 3])
    naive = {(a - b) * (c - d) for a in A for b in A for c in A for d in A}
    assert set(G.difference_product_set(A)) == naive
