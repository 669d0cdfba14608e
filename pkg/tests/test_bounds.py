import itertools
import random
from fractions import Fraction

import pytest

from padicres.bounds import (CountingProfile, alpha_beta_B, bound_gap,
                             bound_small_s, canonical_form_Rn,
                             canonical_form_eval, circle_sandwich,
                             construction_31, construction_51,
                             factorial_basis_poly, factorial_basis_valuation,
                             min_degree_bound, phi_eval, phi_max_report,
                             rescaled_pair, ring_cardinality_exponent)
from padicres.errors import NotApplicable
from padicres.padic import PadicContext
from padicres.resultant import res_disc
from padicres.series import TruncatedSeries, ZERO_TAIL


prof2 = CountingProfile(2, 1)
prof3 = CountingProfile(3, 1)
c2 = PadicContext(2, N=24)
c3 = PadicContext(3, N=24)


def test_alpha_beta_B_examples():
    assert prof2.alpha(4) == 3
    assert prof2.beta(1) == 2 and prof2.beta(2) == 4
    assert prof2.B(2) == 6
    assert prof3.alpha(3, "open") == 4
    assert alpha_beta_B(prof3, "alpha_prime", 3) == 4
    assert alpha_beta_B(prof2, "beta", 2) == 4


def test_counting_monotone():
    for prof in (prof2, prof3, CountingProfile(2, 2)):
        for variant in ("closed", "open"):
            tab = [prof.alpha(j, variant) for j in range(40)]
            assert tab == sorted(tab)
            bt = [prof.beta(m, variant) for m in range(12)]
            assert bt == sorted(bt)
            assert all(prof.beta(m, variant) <= prof.q * m for m in range(1, 12))


def test_factorial_basis_examples():
    assert factorial_basis_valuation(0, c2.from_int(5), c2) == 0
    x3 = c2.enumerate_dj(3)
    assert factorial_basis_valuation(2, x3, c2) == 1 == prof2.alpha(2)
    x5 = c2.enumerate_dj(5)
    assert factorial_basis_valuation(4, x5, c2) == prof2.alpha(4)


def test_factorial_basis_lower_bound_random():
    rng = random.Random(6)
    for ctx, prof in ((c2, prof2), (c3, prof3)):
        for _ in range(20):
            j = rng.randint(1, 6)
            x = ctx.random_elem(rng, 0, 2)
            assert factorial_basis_valuation(j, x, ctx) >= prof.alpha(j)


def test_factorial_equality_at_enumeration_points():
    for ctx, prof, jmax in ((c2, prof2, 6), (c3, prof3, 6)):
        for j in range(1, jmax):
            v = factorial_basis_valuation(j, ctx.enumerate_dj(j), ctx)
            assert v == prof.alpha(j)


def test_canonical_form_square():
    table = canonical_form_Rn(TruncatedSeries.from_ints(c2, [0, 0, 1]), 1)
    assert table == {(0, 1): 1}


def test_canonical_form_functional_agreement():
    for n in (1, 2):
        for trial in range(10):
            rng = random.Random(trial)
            P = TruncatedSeries.from_ints(
                c2, [rng.randint(0, 7) for _ in range(rng.randint(1, 4))])
            tab = canonical_form_Rn(P, n)
            for (i, j) in tab:
                assert i + prof2.alpha(j) < n
            for j in range(2**n):
                d = c2.enumerate_dj(j)
                diff = P.eval(d) - canonical_form_eval(c2, tab, d)
                assert diff.min_valuation_pi() >= n


def test_canonical_form_vanishing_factorial():
    # X^[4] has alpha(4) = 3 >= 2: vanishes as a function mod pi^2
    assert canonical_form_Rn(factorial_basis_poly(c2, 4), 2) == {}


def _function_count(p, f, n):
    """Oracle: number of distinct functions O_K/(pi^n) -> O_K/(pi^n)
    cut out by polynomials, as the additive closure of the monomial
    functions pi^i x^k (e = 1)."""
    ctx = PadicContext(p, f=f, N=n + 2)
    q = ctx.ff.q
    pts = [ctx.enumerate_dj(j) for j in range(q**n)]
    if f == 1:
        mod = p**n

        def value(x):
            if x.is_zeroish:
                return 0
            return (x.unit_int() * p**x.sh) % mod

        def add(u, v):
            return tuple((a + b) % mod for a, b in zip(u, v))

    elif n == 1:
        ff = ctx.ff

        def value(x):
            if x.is_zeroish:
                return ff.zero
            return x.residue() if x.sh == 0 else ff.zero

        def add(u, v):
            return tuple(ff.add(a, b) for a, b in zip(u, v))

    else:
        raise NotImplementedError
    gens = []
    scalars = [ctx.representative(c) for c in range(1, q)]
    for k in range(q**n):
        vec = [x**k for x in pts]
        for i in range(n):
            for c in scalars:
                gens.append(tuple(value((c * v).shift_pi(i)) for v in vec))
    zero = tuple(value(ctx.zero()) for _ in pts)
    seen = {zero}
    for g in gens:
        for s in list(seen):
            cur = s
            while True:
                cur = add(cur, g)
                if cur in seen:
                    break
                seen.add(cur)
    return len(seen)


@pytest.mark.parametrize("p,f,n", [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1)])
def test_ring_cardinality_vs_enumeration(p, f, n):
    prof = CountingProfile(p, f)
    want = p**ring_cardinality_exponent("R_n", prof, n=n)
    assert _function_count(p, f, n) == want


def test_two_level_ring_cardinality():
    assert ring_cardinality_exponent("R_S_s", prof2, S=3, s=3) == prof2.B(3)
    assert ring_cardinality_exponent("R_S_s", prof2, S=5, s=2) == 3 + prof2.B(2)
    assert ring_cardinality_exponent(
        "R_prime_S_s", prof2, S=5, s=2) == 3 + prof2.B(2, "open")
    assert ring_cardinality_exponent("kernel", prof2, n=2) == prof2.beta(2)


def test_bound_gap_examples():
    assert bound_gap(prof2, 1, 0) == prof2.B(1) - 1
    assert bound_gap(prof2, 2, 2) == 2
    assert bound_gap(prof2, 1, 1) == 1


def test_bound_small_s():
    assert bound_small_s(prof2, 0) == 0
    assert bound_small_s(prof3, 2) == 10
    assert bound_small_s(prof2, 1, "open") == 0
    with pytest.raises(NotApplicable):
        bound_small_s(prof2, 2)


def test_min_degree_bound():
    assert min_degree_bound(1, prof2) == 2
    assert min_degree_bound(1, prof3) == 3
    assert min_degree_bound(3, prof2) == 4


def test_min_degree_witness_and_exhaustive():
    # no monic polynomial of degree < beta(s) is divisible by pi^s
    # everywhere; the factorial witness is
    for p, s in [(2, 1), (2, 2), (3, 1)]:
        ctx = PadicContext(p, N=10)
        prof = CountingProfile(p, 1)
        beta_s = prof.beta(s)
        w = factorial_basis_poly(ctx, beta_s)
        for j in range(p**(s + 1)):
            val = w.eval(ctx.enumerate_dj(j))
            assert val.min_valuation_pi() >= s
        mod = p**s
        for d in range(1, beta_s):
            for coeffs in itertools.product(range(mod), repeat=d):
                ok_everywhere = True
                for x in range(mod):
                    acc = x**d
                    for i, cc in enumerate(coeffs):
                        acc += cc * x**i
                    if acc % mod:
                        ok_everywhere = False
                        break
                assert not ok_everywhere, (p, s, d, coeffs)


def test_construction_31():
    F, G = construction_31(1, c2)
    assert F.poly_degree() == 2
    assert F.coeff(0).is_exact_zero and F.coeff(1).congruent(c2.from_int(-1))
    assert G.poly_degree() == 4 and G.coeff(0).congruent(c2.from_int(2))
    for s in (1, 2):
        F, G = construction_31(s, c2)
        prof = CountingProfile(2, 1)
        for j in range(2**(s + 2)):
            assert phi_eval(F, G, c2.enumerate_dj(j)) == Fraction(s)
        r = res_disc(F, G, "closed")
        assert r.valuation_pi() == s * prof.beta(s)
        # exact identity v(Res) - s = s(beta(s) - 1)
        assert r.valuation_pi() - s == s * (prof.beta(s) - 1)


def test_construction_51_growth():
    prev = None
    for n in range(1, 5):
        st = construction_51(n, 3)
        assert st.phi_at_witness == st.expected_phi
        if prev is not None:
            assert st.phi_at_witness > prev
        prev = st.phi_at_witness
    st = construction_51(1, 3)
    assert st.expected_phi == Fraction(1)
    with pytest.raises(NotApplicable):
        construction_51(1, 2)


def test_circle_sandwich_brackets_sampled_max():
    rng = random.Random(9)
    for _ in range(8):
        roots_f = rng.sample([1, 2, 4, 5, 7, 8], 2)
        roots_g = rng.sample([1, 2, 4, 5, 7, 8], 2)
        F = TruncatedSeries.from_ints(c3, [1])
        for u in roots_f:
            F = F * TruncatedSeries(c3, [c3.from_int(-3 * u), c3.one()],
                                    ZERO_TAIL)
        G = TruncatedSeries.from_ints(c3, [1])
        for u in roots_g:
            G = G * TruncatedSeries(c3, [c3.from_int(-3 * u), c3.one()],
                                    ZERO_TAIL)
        if set(roots_f) & set(roots_g):
            continue
        sb = circle_sandwich(F, G, 0, 0)
        pts = [c3.from_int(3 * u) for u in roots_f + roots_g]
        pts += [c3.random_unit(rng).shift_pi(1) for _ in range(40)]
        mx = max(phi_eval(F, G, x) for x in pts)
        assert sb.lower <= mx <= sb.upper
        assert mx <= sb.upper_sharp


def test_phi_max_report_linear_pair():
    c2b = PadicContext(2, N=30)
    F = TruncatedSeries.from_ints(c2b, [-2, 1])
    G = TruncatedSeries.from_ints(c2b, [-4, 1])
    rep = phi_max_report(F, G, "closed", sample_budget=32)
    assert rep.S_est == Fraction(1)
    assert "root" in rep.S_arg
    assert all(rep.S_est <= b for b in rep.upper_bounds.values())
    assert rep.finite == "finite"


def test_phi_report_disjoint_slopes_bound():
    # disjoint slope sets: S <= max(v F(0), v G(0))
    F = TruncatedSeries.from_ints(c3, [3, 1])       # slope 1
    G = TruncatedSeries.from_ints(c3, [9, 0, 1])    # slope 1 each? use 27, deg1
    G = TruncatedSeries.from_ints(c3, [27, 1])      # slope 3
    rep = phi_max_report(F, G, "closed", sample_budget=64)
    cap = max(F.eval(c3.zero()).valuation(), G.eval(c3.zero()).valuation())
    assert rep.S_est <= cap


def test_rescaled_pair_pointwise_inequality():
    rng = random.Random(12)
    for _ in range(15):
        F = TruncatedSeries(c3, [c3.random_unit(rng).shift_pi(rng.randint(1, 3))
                                 for _ in range(3)], ZERO_TAIL)
        G = TruncatedSeries(c3, [c3.random_unit(rng).shift_pi(rng.randint(1, 3))
                                 for _ in range(3)], ZERO_TAIL)
        Fu, Gu, offset = rescaled_pair(F, G)
        assert Fu.coeffs[Fu.wideg()].valuation_pi() == 0
        assert Gu.coeffs[Gu.wideg()].valuation_pi() == 0
        for _ in range(25):
            x = c3.random_elem(rng, 0, 3)
            try:
                lhs = phi_eval(F, G, x)
                rhs = phi_eval(Fu, Gu, x)
            except Exception:
                continue
            assert lhs <= offset + rhs


def test_lemma_51_candidate_dominates_samples():
    # sampled phi never exceeds the candidate-set maximum
    rng = random.Random(13)
    a_roots = [3, 6, 21]
    b_roots = [12, 30]
    F = TruncatedSeries.from_ints(c3, [1])
    for a in a_roots:
        F = F * TruncatedSeries(c3, [c3.from_int(-a), c3.one()], ZERO_TAIL)
    G = TruncatedSeries.from_ints(c3, [1])
    for b in b_roots:
        G = G * TruncatedSeries(c3, [c3.from_int(-b), c3.one()], ZERO_TAIL)
    cand = max(phi_eval(F, G, c3.from_int(r)) for r in a_roots + b_roots)
    for _ in range(200):
        x = c3.random_elem(rng, 0, 4)
        assert phi_eval(F, G, x) <= cand


def test_construction_51_partial_products_behave():
    st = construction_51(2, 3)
    # polynomial partial products converge on the whole disc
    from padicres.newton import convergence_mu, NEG_INF
    assert convergence_mu(st.f_n).mu == NEG_INF <= 0
    # distinct root sets: no common root on the closed disc
    from padicres.resultant import common_root_test
    verdict = common_root_test(st.f_n, st.g_n, 0, "closed")
    assert not verdict.common


def test_construction_31_s_upper_bound_bracket():
    from padicres.resultant import s_upper_bound
    F, G = construction_31(1, c2)
    bound = s_upper_bound(F, G, "closed")
    assert 1 <= bound <= 2


def test_phi_report_construction_31():
    F, G = construction_31(1, c2)
    rep = phi_max_report(F, G, "closed", sample_budget=48)
    assert rep.S_est == Fraction(1)
    assert rep.s_est == Fraction(1)


def test_circle_sandwich_unit_resultant():
    # circle polynomials coprime mod pi: v(r) = 0 pins the bracket width
    F = TruncatedSeries.from_ints(c3, [-1, 1])
    G = TruncatedSeries.from_ints(c3, [-2, 1])
    sb = circle_sandwich(F, G, 0, 0)
    assert sb.r_valuation == 0
    assert sb.lower == sb.a and sb.upper == sb.b
    assert sb.lower == sb.upper - (sb.b - sb.a)
