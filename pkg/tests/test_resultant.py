import random

import numpy as np
import pytest

from padicres.errors import CommonRoots, PrecisionExhausted
from padicres.padic import PadicContext
from padicres.resultant import (common_root_test, det,
                                quotient_cardinality_exponent, res_disc,
                                resultant_poly, s_upper_bound,
                                smith_normal_form, sylvester_matrix,
                                sylvester_of_pair)
from padicres.series import TruncatedSeries, ZERO_TAIL


c2 = PadicContext(2, N=30)
c3 = PadicContext(3, N=30)
p = 2

F = TruncatedSeries.from_ints(c2, [-p, 1])
G = TruncatedSeries.from_ints(c2, [-p * p, 1])


def test_res_open_linear_pair():
    r = res_disc(F, G, "open")
    # Res = G(p) = p - p^2
    assert r.congruent(c2.from_int(p - p * p))
    assert r.valuation() == 1


def test_res_common_roots_ambiguous():
    r = res_disc(F, F, "open")
    assert r.is_zeroish
    assert r.min_valuation_pi() >= 20


def test_res_matches_product_over_roots():
    """det Sylvester = lc(A)^m prod B(z_i), via numpy roots as oracle."""
    rng = random.Random(5)
    c5 = PadicContext(5, N=40)
    checked = 0
    while checked < 40:
        n = rng.randint(1, 5)
        m = rng.randint(1, 5)
        ai = [rng.randint(-9, 9) for _ in range(n)] + [rng.randint(1, 9)]
        bi = [rng.randint(-9, 9) for _ in range(m)] + [rng.randint(1, 9)]
        A = TruncatedSeries.from_ints(c5, ai)
        B = TruncatedSeries.from_ints(c5, bi)
        if A.poly_degree() != n or B.poly_degree() != m:
            continue
        roots = np.roots(ai[::-1])
        val = complex(ai[-1])**m
        for z in roots:
            val *= sum(bi[k] * z**k for k in range(len(bi)))
        truth = int(round(val.real))
        if truth == 0 or abs(val.real) > 1e14:
            continue
        assert resultant_poly(A, B).congruent(c5.from_int(truth), 10), (ai, bi)
        checked += 1


def test_snf_examples():
    M = [[c2.from_int(p), c2.zero()], [c2.zero(), c2.one()]]
    assert smith_normal_form(M).valuations == [0, 1]
    M = sylvester_matrix(F, G)
    snf = smith_normal_form(M)
    assert snf.valuations == [0, 1]
    I = [[c2.one() if i == j else c2.zero() for j in range(3)] for i in range(3)]
    assert smith_normal_form(I).valuations == [0, 0, 0]


def test_snf_chain_and_det_sum():
    rng = random.Random(5)
    for _ in range(20):
        M = [[c3.random_elem(rng, 0, 3) for _ in range(4)] for _ in range(4)]
        snf = smith_normal_form([row[:] for row in M])
        if not snf.valid:
            continue
        for a, b in zip(snf.valuations, snf.valuations[1:]):
            assert a <= b
        d = det([row[:] for row in M])
        if not d.is_zeroish:
            assert sum(snf.valuations) == d.valuation_pi()


def test_snf_ambiguous_pivot():
    z = c2.zero(exact=False)
    M = [[z, z], [z, z]]
    snf = smith_normal_form(M)
    assert not snf.valid
    with pytest.raises(PrecisionExhausted):
        snf.last_valuation()


def test_quotient_cardinality():
    assert quotient_cardinality_exponent(F, G, "open") == 1
    FX = TruncatedSeries.from_ints(c2, [0, 1])
    G1 = TruncatedSeries.from_ints(c2, [-1, 1])
    assert quotient_cardinality_exponent(FX, G1, "open") == 0
    assert res_disc(FX, G1, "open").congruent(c2.from_int(-1))
    with pytest.raises(CommonRoots):
        quotient_cardinality_exponent(F, F, "open")


def test_s_upper_bound_examples():
    assert s_upper_bound(F, G, "open") == 1
    A = TruncatedSeries.from_ints(c3, [1, 1])
    B = TruncatedSeries.from_ints(c3, [2, 1])
    # coprime mod pi: bound 0
    assert s_upper_bound(A, B, "closed") == 0


def test_common_root_test():
    c32 = PadicContext(3, e=2, N=30)
    Fq = TruncatedSeries.from_ints(c32, [-3, 0, 1])
    Gq = TruncatedSeries(c32, [-c32.pi_power(1), c32.one()], ZERO_TAIL)
    assert common_root_test(Fq, Gq, 0, "closed").common
    v = common_root_test(F, G, 0, "closed")
    assert not v.common and v.valuation_pi == 1
    assert v.verdict == "NoCommonRoot"


def test_swap_and_translation_invariance():
    rng = random.Random(5)
    for _ in range(20):
        A = TruncatedSeries.from_ints(
            c3, [rng.randint(-9, 9), rng.randint(-9, 9), 1])
        B = TruncatedSeries.from_ints(c3, [rng.randint(-9, 9), 3, 1])
        rAB = res_disc(A, B, "closed")
        if rAB.is_zeroish:
            continue
        assert res_disc(B, A, "closed").valuation_pi() == rAB.valuation_pi()
        a = c3.from_int(3 * rng.randint(-3, 3))
        rT = res_disc(A.translate(a), B.translate(a), "closed")
        assert rT.valuation_pi() == rAB.valuation_pi()


def test_last_factor_bounds_phi_samples():
    from padicres.bounds import phi_eval
    rng = random.Random(7)
    for _ in range(10):
        A = TruncatedSeries.from_ints(
            c3, [3 * rng.randint(1, 5), rng.randint(1, 8), 1])
        B = TruncatedSeries.from_ints(c3, [3 * rng.randint(1, 5), 3, 1])
        r = res_disc(A, B, "closed")
        if r.is_zeroish:
            continue
        bound = smith_normal_form(sylvester_of_pair(A, B, "closed")).last_valuation()
        for _ in range(30):
            x = c3.random_elem(rng, 0, 3)
            assert phi_eval(A, B, x) * c3.e <= bound
        assert bound <= r.valuation_pi()
