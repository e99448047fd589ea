"""Tests for exact finite-field arithmetic and the counting utilities."""

import random

import pytest

import oracles
from srgkit.gf import (
    char_sum_c,
    count_hermitian_norm_solutions,
    count_hyperbolic_solutions,
    field_of_order,
    hermitian_count_closed,
    hyperbolic_count_closed,
    make_field,
    norm,
    quadratic_character,
    trace_to_prime,
)


class TestMakeField:
    def test_deterministic_moduli(self):
        assert make_field(3, 1).modulus == (0, 1)
        assert make_field(3, 2).modulus == (1, 0, 1)
        assert make_field(2, 2).modulus == (1, 1, 1)
        assert make_field(2, 3).modulus == (1, 0, 1, 1)
        assert make_field(2, 6).modulus == (1, 0, 0, 0, 0, 1, 1)

    def test_element_counts(self):
        for p, k in [(2, 1), (3, 2), (2, 4), (5, 2)]:
            assert len(make_field(p, k).elements()) == p**k

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            make_field(4, 1)
        with pytest.raises(ValueError):
            make_field(1, 2)
        with pytest.raises(ValueError):
            make_field(3, 0)

    def test_cached_identity(self):
        assert make_field(3, 2) is make_field(3, 2)
        assert field_of_order(9) is make_field(3, 2)

    def test_field_of_order_rejects_non_prime_powers(self):
        with pytest.raises(ValueError):
            field_of_order(6)
        with pytest.raises(ValueError):
            field_of_order(1)

    def test_frobenius_has_order_six_on_gf64(self):
        field = make_field(2, 6)
        gen = next(
            a
            for a in field.elements()
            if a and all(a ** e != field.one for e in (9, 21))
            and a ** 63 == field.one
        )
        img = gen
        orbit = 0
        while True:
            img = img ** 2
            orbit += 1
            if img == gen:
                break
        assert orbit == 6


class TestFieldArithmetic:
    @pytest.mark.parametrize("p,k", [(3, 2), (2, 3), (5, 2), (2, 4)])
    def test_ring_laws_on_random_triples(self, p, k):
        field = make_field(p, k)
        rng = random.Random(20240 + p * k)
        for _ in range(60):
            a, b, c = (field.from_index(rng.randrange(field.q)) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + field.zero == a
            assert a * field.one == a
            assert a - a == field.zero

    @pytest.mark.parametrize("p,k", [(3, 2), (2, 3), (5, 1)])
    def test_inverses_exhaustively(self, p, k):
        field = make_field(p, k)
        for a in field.elements():
            if a:
                assert a * a.inverse() == field.one
            else:
                with pytest.raises(ZeroDivisionError):
                    a.inverse()

    def test_pow_and_division(self):
        field = make_field(3, 2)
        t = field.from_index(3)
        assert t ** 0 == field.one
        assert t ** (field.q - 1) == field.one
        assert t ** -1 == t.inverse()
        assert (t / t) == field.one

    def test_coeff_roundtrip(self):
        field = make_field(5, 2)
        for i in range(field.q):
            assert field.index_of(field.coeffs_of(i)) == i
        assert field([2, 3]).index == 2 + 3 * 5

    def test_subfield_embedding_is_a_field_embedding(self):
        big = make_field(2, 6)
        for k_sub in (1, 2, 3):
            sub, embed = big.subfield(k_sub)
            image = set(embed)
            assert len(image) == sub.q
            for i in range(sub.q):
                for j in range(sub.q):
                    assert embed[sub.add_table[i][j]] == big.add_table[embed[i]][embed[j]]
                    assert embed[sub.mul_table[i][j]] == big.mul_table[embed[i]][embed[j]]

    def test_subfield_requires_divisor_degree(self):
        with pytest.raises(ValueError):
            make_field(2, 6).subfield(4)


class TestNormTraceCharacter:
    def test_norm_basics(self):
        f9 = make_field(3, 2)
        f3, _ = f9.subfield(1)
        assert norm(f9.zero) == f3.zero
        assert norm(f9.one) == f3.one
        t = f9.from_index(3)
        assert norm(t) == f3.one  # t^2 = -1, so t^4 = 1

    @pytest.mark.parametrize("q", [4, 9, 16])
    def test_norm_multiplicative_and_surjective(self, q):
        ext = field_of_order(q)
        sub, _ = ext.subfield(ext.k // 2)
        for a in ext.elements():
            for b in ext.elements():
                assert norm(a * b) == norm(a) * norm(b)
        values = {norm(a).index for a in ext.elements() if a}
        assert values == set(range(1, sub.q))
        q0 = sub.q
        kernel = sum(1 for a in ext.elements() if a and norm(a) == sub.one)
        assert kernel == q0 + 1

    def test_norm_rejects_non_square_order(self):
        with pytest.raises(ValueError):
            norm(make_field(2, 3).one)

    def test_trace_examples(self):
        f4 = make_field(2, 2)
        assert trace_to_prime(f4.zero) == 0
        assert trace_to_prime(f4.one) == 0  # 1 + 1^2 = 0
        assert sum(1 for a in f4.elements() if trace_to_prime(a) == 0) == 2

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_trace_additive_and_balanced(self, k):
        field = make_field(2, k)
        for a in field.elements():
            for b in field.elements():
                assert trace_to_prime(a + b) == (
                    trace_to_prime(a) + trace_to_prime(b)
                ) % 2
        zeros = sum(1 for a in field.elements() if trace_to_prime(a) == 0)
        assert zeros == field.q // 2

    def test_trace_rejects_odd_characteristic(self):
        with pytest.raises(ValueError):
            trace_to_prime(make_field(3, 1).one)

    def test_character_examples_mod_5(self):
        f5 = make_field(5, 1)
        assert quadratic_character(f5.zero) == 0
        assert quadratic_character(f5(4)) == 1
        assert quadratic_character(f5(2)) == -1

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 25])
    def test_character_multiplicative_and_balanced(self, q):
        field = field_of_order(q)
        elems = field.elements()
        for a in elems[1:]:
            for b in elems[1:]:
                assert quadratic_character(a * b) == quadratic_character(
                    a
                ) * quadratic_character(b)
        assert sum(1 for a in elems if quadratic_character(a) == 1) == (q - 1) // 2

    def test_character_rejects_even_q(self):
        with pytest.raises(ValueError):
            quadratic_character(make_field(2, 2).one)


class TestHermitianCounts:
    def test_examples(self):
        assert count_hermitian_norm_solutions(1, 3, 0) == 1
        assert count_hermitian_norm_solutions(1, 3, 1) == 4
        assert count_hermitian_norm_solutions(2, 2, 0) == 10

    def test_frozen_zero_counts_over_gf9(self):
        assert count_hermitian_norm_solutions(1, 3, 0) == 1
        assert count_hermitian_norm_solutions(2, 3, 0) == 33
        assert count_hermitian_norm_solutions(3, 3, 0) == 225

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_agrees_with_enumeration(self, n, q):
        counts = oracles.hermitian_norm_counts(n, q)
        for c in range(q):
            assert count_hermitian_norm_solutions(n, q, c) == counts[c]

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_total_count(self, n, q):
        total = sum(count_hermitian_norm_solutions(n, q, c) for c in range(q))
        assert total == q ** (2 * n)

    def test_closed_forms(self):
        for q in (2, 3, 4, 5):
            for n in (1, 2, 3, 4):
                assert count_hermitian_norm_solutions(n, q, 0) == hermitian_count_closed(
                    n, q, zero=True
                )
                assert count_hermitian_norm_solutions(n, q, 1) == hermitian_count_closed(
                    n, q, zero=False
                )


class TestHyperbolicCounts:
    def test_examples(self):
        assert count_hyperbolic_solutions(1, 2, zero_target=True) == 3
        for q in (2, 3, 5):
            assert count_hyperbolic_solutions(0, q, zero_target=True) == 1
            assert count_hyperbolic_solutions(0, q, zero_target=False) == 0

    @pytest.mark.parametrize("q", [2, 3, 5])
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_agrees_with_enumeration(self, k, q):
        counts = oracles.hyperbolic_counts(k, q)
        assert count_hyperbolic_solutions(k, q, zero_target=True) == counts[0]
        if k:
            nonzero = set(counts[1:])
            assert nonzero == {count_hyperbolic_solutions(k, q, zero_target=False)}

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_partition_identity(self, k, q):
        a = count_hyperbolic_solutions(k, q, zero_target=True)
        b = count_hyperbolic_solutions(k, q, zero_target=False)
        assert a + (q - 1) * b == q ** (2 * k)
        assert a == hyperbolic_count_closed(k, q, zero=True)
        assert b == hyperbolic_count_closed(k, q, zero=False)


class TestCharSums:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_matches_direct_root_counting_exhaustively(self, q):
        field = field_of_order(q)
        for g1 in field.elements():
            for g2 in field.elements():
                for lam in field.elements():
                    assert char_sum_c(g1, g2, lam) == oracles.char_sum_direct(
                        g1, g2, lam
                    )

    @pytest.mark.parametrize("q", [7, 8, 9])
    def test_matches_direct_root_counting_sampled(self, q):
        field = field_of_order(q)
        rng = random.Random(987 + q)
        for _ in range(40):
            g1, g2, lam = (
                field.from_index(rng.randrange(q)) for _ in range(3)
            )
            assert char_sum_c(g1, g2, lam) == oracles.char_sum_direct(g1, g2, lam)

    def test_values_bounded(self):
        field = field_of_order(5)
        for g1 in field.elements():
            for lam in field.elements():
                value = char_sum_c(g1, g1, lam)
                assert 0 <= value <= 2 * field.q

    def test_diagonal_sums_separate_some_pair_of_slopes(self):
        # For every gamma there are two slopes lam1 != lam2, neither equal
        # to gamma, whose diagonal sums differ.
        field = field_of_order(5)
        for gamma in field.elements():
            values = {
                lam.index: char_sum_c(gamma, gamma, lam)
                for lam in field.elements()
                if lam != gamma
            }
            assert len(set(values.values())) >= 2

    def test_accepts_indices_with_explicit_q(self):
        field = field_of_order(4)
        for g1 in range(4):
            for g2 in range(4):
                for lam in range(4):
                    expected = oracles.char_sum_direct(
                        field.from_index(g1),
                        field.from_index(g2),
                        field.from_index(lam),
                    )
                    assert char_sum_c(g1, g2, lam, q=4) == expected
