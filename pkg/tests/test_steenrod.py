"""Reduced powers, primitive derivations, closed-form routes, corollary forms."""
import math
import random

import pytest

from dickson.fp_poly import (
    frobenius,
    parse_poly,
    poly_mul,
    poly_one,
    poly_pow,
    poly_scale,
    poly_sub,
    poly_var,
    poly_zero,
    Poly,
)
from dickson.invariants import P_coef, dickson_Q
from dickson.steenrod import (
    binom_mod_p,
    corollary_rhs,
    sign_convention_flag,
    smith_switzer_value,
    st_delta,
    st_delta_via_dl2,
    st_delta_via_main,
    steenrod_P,
)

SMALL_GRID = [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)]


def rand_poly(rng, n, p, max_terms=3, max_exp=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[m] = rng.randint(1, p - 1) if p > 2 else 1
    return Poly(n, p, terms)


def rand_homogeneous(rng, n, p, d):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        terms[tuple(parts)] = rng.randint(1, p - 1) if p > 2 else 1
    return Poly(n, p, terms)


class TestLucas:
    def test_frozen(self):
        assert binom_mod_p(10, 4, 3) == 0
        assert binom_mod_p(10, 1, 3) == 1
        assert binom_mod_p(5, 2, 2) == 0
        assert binom_mod_p(5, 2, 3) == 1
        assert binom_mod_p(5, 2, 5) == 0

    def test_out_of_range(self):
        assert binom_mod_p(3, 5, 2) == 0
        assert binom_mod_p(3, -1, 2) == 0
        assert binom_mod_p(0, 0, 7) == 1

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_against_exact(self, p):
        for a in range(26):
            for b in range(a + 1):
                assert binom_mod_p(a, b, p) == math.comb(a, b) % p

    def test_prime_row_vanishes(self):
        for p in (2, 3, 5, 7):
            for b in range(1, p):
                assert binom_mod_p(p, b, p) == 0


class TestReducedPower:
    def test_identity_at_zero(self):
        f = parse_poly("x1^2 + x1*x2", 2, 3)
        assert steenrod_P(f, 0) == f

    def test_squares_p2(self):
        x1 = poly_var(1, 2, 2)
        x2 = poly_var(2, 2, 2)
        assert steenrod_P(x1, 1) == x1 ** 2
        assert steenrod_P(x1 * x2, 1) == x1 ** 2 * x2 + x1 * x2 ** 2
        assert steenrod_P(x1 * x2, 2) == x1 ** 2 * x2 ** 2

    def test_powers_p3(self):
        x1 = poly_var(1, 1, 3)
        assert steenrod_P(x1, 1) == x1 ** 3
        assert steenrod_P(x1 ** 2, 1) == poly_scale(x1 ** 4, 2)
        assert steenrod_P(x1 ** 2, 2) == x1 ** 6

    def test_top_invariant_image(self):
        # the square of the degree-2 invariant lands back on invariants
        q = dickson_Q(2, 1, 2)
        assert steenrod_P(q, 1) == dickson_Q(2, 0, 2)
        assert steenrod_P(q, 2) == q ** 2

    @pytest.mark.parametrize("p,n", SMALL_GRID)
    def test_cartan(self, p, n):
        rng = random.Random(300 + 10 * p + n)
        for _ in range(15):
            f = rand_poly(rng, n, p, max_exp=4)
            g = rand_poly(rng, n, p, max_exp=4)
            for k in range(5):
                lhs = steenrod_P(poly_mul(f, g), k)
                rhs = poly_zero(n, p)
                for a in range(k + 1):
                    rhs = rhs + poly_mul(steenrod_P(f, a), steenrod_P(g, k - a))
                assert lhs == rhs

    @pytest.mark.parametrize("p,n", SMALL_GRID)
    def test_unstability(self, p, n):
        rng = random.Random(400 + 10 * p + n)
        for _ in range(15):
            d = rng.randint(1, 4)
            f = rand_homogeneous(rng, n, p, d)
            assert steenrod_P(f, d) == poly_pow(f, p)
            assert steenrod_P(f, d + 1).is_zero()
            assert steenrod_P(f, d + 3).is_zero()

    def test_degree_raising(self):
        for p in (2, 3, 5):
            f = dickson_Q(2, 1, p)
            d = f.degree()
            for k in (1, 2):
                img = steenrod_P(f, k)
                if not img.is_zero():
                    assert img.degree() == d + k * (p - 1)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            steenrod_P(poly_one(1, 2), -1)


class TestPrimitiveDerivation:
    def test_on_variables(self):
        x1 = poly_var(1, 2, 3)
        assert st_delta(x1, 1) == x1 ** 3
        assert st_delta(x1, 2) == x1 ** 9
        x2 = poly_var(2, 2, 3)
        assert st_delta(x1 * x2, 1) == x1 ** 3 * x2 + x1 * x2 ** 3

    def test_coefficient_from_exponent(self):
        f = parse_poly("x1^5", 1, 3)
        # 5 = 2 mod 3, target exponent 5 - 1 + 3
        assert st_delta(f, 1) == parse_poly("2*x1^7", 1, 3)

    def test_frozen_p2(self):
        q1 = dickson_Q(2, 1, 2)
        assert st_delta(q1, 1) == dickson_Q(2, 0, 2)
        assert st_delta(q1, 2) == parse_poly("x1^4*x2 + x1*x2^4", 2, 2)
        assert st_delta(q1, 2) == poly_mul(dickson_Q(2, 0, 2), q1)

    def test_frozen_p3(self):
        q1 = dickson_Q(2, 1, 3)
        assert st_delta(q1, 1) == dickson_Q(2, 0, 3)
        expected = parse_poly(
            "x1^12*x2^2 + 2*x1^10*x2^4 + 2*x1^4*x2^10 + x1^2*x2^12", 2, 3)
        assert st_delta(q1, 2) == expected
        assert expected == poly_mul(dickson_Q(2, 0, 3), q1)

    @pytest.mark.parametrize("p,n", SMALL_GRID)
    def test_derivation_law(self, p, n):
        rng = random.Random(500 + 10 * p + n)
        for _ in range(20):
            f = rand_poly(rng, n, p)
            g = rand_poly(rng, n, p)
            i = rng.randint(1, 2)
            assert st_delta(poly_mul(f, g), i) == \
                poly_mul(st_delta(f, i), g) + poly_mul(f, st_delta(g, i))

    @pytest.mark.parametrize("p,n", SMALL_GRID)
    def test_kills_p_th_powers(self, p, n):
        rng = random.Random(600 + 10 * p + n)
        for _ in range(20):
            f = rand_poly(rng, n, p)
            assert st_delta(poly_pow(f, p), 1).is_zero()
            assert st_delta(frobenius(f, 2), 2).is_zero()

    def test_degree_raising(self):
        for (p, i) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2)]:
            f = dickson_Q(2, 1, p)
            img = st_delta(f, i)
            assert img.degree() == f.degree() + p ** i - 1

    def test_rejects_low_index(self):
        with pytest.raises(ValueError):
            st_delta(poly_one(1, 2), 0)
        with pytest.raises(ValueError):
            st_delta(poly_one(1, 2), -2)


class TestClosedFormRoutes:
    @pytest.mark.parametrize("p,n", SMALL_GRID + [(5, 2)])
    def test_three_routes_agree(self, p, n):
        for s in range(n):
            for i in range(1, n + 4):
                direct = st_delta(dickson_Q(n, s, p), i)
                assert direct == st_delta_via_dl2(n, s, i, p)
                assert direct == st_delta_via_main(n, s, i, p)

    def test_validation(self):
        with pytest.raises(ValueError):
            st_delta_via_dl2(2, 2, 1, 3)
        with pytest.raises(ValueError):
            st_delta_via_dl2(2, 0, 0, 3)
        with pytest.raises(ValueError):
            st_delta_via_main(2, -1, 1, 3)
        with pytest.raises(ValueError):
            st_delta_via_main(2, 0, 0, 3)


class TestLowRangeTable:
    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
    def test_matches_direct_action(self, p, n):
        for s in range(n):
            for i in range(1, n + 1):
                assert st_delta(dickson_Q(n, s, p), i) == \
                    smith_switzer_value(n, s, i, p)

    def test_case_split(self):
        # i = s: a signed copy of the top invariant
        assert smith_switzer_value(2, 1, 1, 3) == dickson_Q(2, 0, 3)
        assert smith_switzer_value(3, 2, 2, 2) == dickson_Q(3, 0, 2)
        # i = n: the product form
        assert smith_switzer_value(2, 1, 2, 3) == \
            poly_mul(dickson_Q(2, 0, 3), dickson_Q(2, 1, 3))
        # everything else dies
        assert smith_switzer_value(3, 1, 2, 2).is_zero()
        assert smith_switzer_value(3, 2, 1, 5).is_zero()

    def test_s_zero_column(self):
        # s = 0 only survives at i = n
        for p, n in [(3, 2), (2, 3)]:
            for i in range(1, n):
                assert smith_switzer_value(n, 0, i, p).is_zero()
            assert not smith_switzer_value(n, 0, n, p).is_zero()

    def test_validation(self):
        with pytest.raises(ValueError):
            smith_switzer_value(2, 1, 3, 3)
        with pytest.raises(ValueError):
            smith_switzer_value(2, 2, 1, 3)

    def test_sign_convention_pin(self):
        assert sign_convention_flag() == 1
        assert sign_convention_flag(p=3, n=2) == 1
        assert sign_convention_flag(p=5, n=2) == 1
        assert sign_convention_flag(p=2, n=3) == 1
        with pytest.raises(ValueError):
            sign_convention_flag(p=3, n=1)


class TestCorollaryForms:
    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
    def test_one_past_rank(self, p, n):
        for s in range(n):
            assert st_delta(dickson_Q(n, s, p), n + 1) == \
                corollary_rhs("n+1", n, s, p)

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
    def test_two_past_rank(self, p, n):
        for s in range(n):
            assert st_delta(dickson_Q(n, s, p), n + 2) == \
                corollary_rhs("n+2", n, s, p)

    def test_three_past_rank_even_prime(self):
        for (p, n) in [(2, 2), (2, 3)]:
            for s in range(n):
                assert st_delta(dickson_Q(n, s, p), n + 3) == \
                    corollary_rhs("n+3", n, s, p)

    def test_three_past_rank_odd_prime_discrepancy(self):
        # The tabulated composite carries the opposite sign on its P-term.
        # The two sides therefore differ by exactly twice the P contribution,
        # which pins the tabulated inner quotients as otherwise correct.
        for (p, n, s) in [(3, 2, 1), (5, 2, 1)]:
            tabulated = corollary_rhs("n+3", n, s, p)
            direct = st_delta(dickson_Q(n, s, p), n + 3)
            assert tabulated != direct
            gap = poly_sub(tabulated, direct)
            pterm = poly_mul(
                dickson_Q(n, 0, p),
                frobenius(P_coef(n, n + 3, s, p), 1),
            )
            want = poly_scale(pterm, (2 * (-1) ** n) % p)
            assert gap == want

    def test_three_past_rank_odd_prime_s0_agrees(self):
        # the P contribution vanishes at s = 0, so no discrepancy there
        for p in (3, 5):
            assert st_delta(dickson_Q(2, 0, p), 5) == corollary_rhs("n+3", 2, 0, p)

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
    def test_kernel_form(self, p, n):
        for s in range(n):
            base = poly_mul(poly_pow(dickson_Q(n, 0, p), p - 1), dickson_Q(n, s, p))
            for i in range(1, n + 4):
                once = st_delta(base, i)
                assert once == corollary_rhs("kernel", n, s, p, i=i)
                assert st_delta(once, i).is_zero()

    def test_kernel_needs_index(self):
        with pytest.raises(ValueError):
            corollary_rhs("kernel", 2, 1, 3)

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            corollary_rhs("n+4", 2, 1, 3)

    def test_degrees(self):
        # each composite must land in the degree the direct action dictates
        for (p, n, s, off) in [(3, 2, 1, 1), (3, 2, 0, 2), (2, 3, 2, 3)]:
            got = corollary_rhs(f"n+{off}", n, s, p)
            assert got.degree() == dickson_Q(n, s, p).degree() + p ** (n + off) - 1
