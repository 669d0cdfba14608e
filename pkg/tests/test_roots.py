import math
import random
from fractions import Fraction

import pytest

from padicres.errors import NotApplicable, NotSquareFree
from padicres.padic import PadicContext
from padicres.roots import (ExpandConfig, digit_expand, irreducible_test,
                            newton_screen, padic_poly_gcd, root_find,
                            star_map)
from padicres.series import TruncatedSeries, ZERO_TAIL


c2 = PadicContext(2, N=60)
c3 = PadicContext(3, N=60)
c5 = PadicContext(5, N=60)


def ints(ctx, *cs):
    return TruncatedSeries.from_ints(ctx, list(cs))


def test_star_map():
    assert star_map(c2.from_int(2)) == (c2.ff.from_index(1), Fraction(1))
    eps, t = star_map(c5.from_int(7))
    assert c5.ff.to_index(eps) == 2 and t == 0
    c32 = PadicContext(3, e=2, N=20)
    eps, t = star_map(c32.pi_power(1))
    assert c32.ff.to_index(eps) == 1 and t == Fraction(1, 2)
    # v(x - omega(eps) p^t) > t by construction
    x = c5.from_int(7)
    eps, t = star_map(x)
    assert (x - c5.teichmuller(eps).scale_p(t)).valuation() > t


def test_newton_screen_examples():
    assert newton_screen(ints(c3, -3, 0, 1)) == "Irreducible"
    assert newton_screen(ints(c2, 8, -6, 1)) == "Reducible"
    assert newton_screen(ints(c3, -9, 0, 1)) == "Inconclusive"


def test_digit_expand_sqrt3():
    exp = digit_expand(ints(c3, -3, 0, 1))
    assert exp.terminated
    assert exp.terms[0][0] == Fraction(1, 2)
    assert exp.ctx.ff.to_index(exp.terms[0][1]) == 1
    xhat = exp.reconstruct()
    assert ints(exp.ctx, -3, 0, 1).eval(xhat).is_zeroish


def test_digit_expand_cyclotomic_over_q2():
    exp = digit_expand(ints(c2, 1, 1, 1))
    assert exp.terms[0][0] == Fraction(0)
    assert exp.ctx.f == 2
    assert exp.terminated
    # the Teichmuller cube root of unity is an exact root
    assert ints(exp.ctx, 1, 1, 1).eval(exp.reconstruct()).is_zeroish


def test_digit_expand_linear_is_digit_reading():
    cfg = ExpandConfig(max_terms=6, target_precision=Fraction(12))
    exp = digit_expand(ints(c5, -7, 1), cfg)
    assert exp.terms[0] == (Fraction(0), c5.ff.from_index(2))
    assert exp.terms[1][0] == Fraction(2)
    assert all(t2 > t1 for (t1, _), (t2, _) in zip(exp.terms, exp.terms[1:]))


def test_digit_expand_rejects_repeated_factor():
    with pytest.raises(NotSquareFree):
        digit_expand(ints(c3, 4, -4, 1))


def test_root_find_two_linear_factors():
    rep = root_find(ints(c2, 8, -6, 1))
    assert rep.zero_root_multiplicity == 0
    assert sorted(e.terms[0][0] for e in rep.expansions) == [1, 2]
    for e in rep.expansions:
        assert e.terminated
        assert ints(e.ctx, 8, -6, 1).eval(e.reconstruct()).is_zeroish


def test_root_find_cube_root_of_two():
    rep = root_find(ints(c2, -2, 0, 0, 1))
    assert len(rep.expansions) == 2
    assert sorted(e.multiplicity for e in rep.expansions) == [1, 2]
    for e in rep.expansions:
        assert e.terms[0][0] == Fraction(1, 3)
        assert ints(e.ctx, -2, 0, 0, 1).eval(e.reconstruct()).is_zeroish


def test_root_find_squarefree_reduction():
    rep = root_find(ints(c3, 0, 0, 1))
    assert rep.zero_root_multiplicity == 2
    assert rep.expansions == [] and rep.unsupported == []


def test_root_find_wild_piece_flagged():
    # X^2 - 2 over Q_2 has a wildly ramified root: reported, not dropped
    rep = root_find(ints(c2, -2, 0, 1))
    assert rep.expansions == []
    assert rep.unsupported


def test_exponent_denominator_invariant():
    rng = random.Random(17)
    for trial in range(10):
        p = [2, 3, 5][trial % 3]
        ctx = PadicContext(p, N=80)
        P = TruncatedSeries.from_ints(ctx, [1])
        for a in rng.sample(range(0, 4), 2):
            u = rng.randint(1, p**4)
            while u % p == 0:
                u = rng.randint(1, p**4)
            P = P * TruncatedSeries(ctx, [ctx.from_int(-u * p**a), ctx.one()],
                                    ZERO_TAIL)
        rep = root_find(P, ExpandConfig(max_terms=40,
                                        target_precision=Fraction(20)))
        assert not rep.unsupported
        for e in rep.expansions:
            assert e.achieved >= 20
            lcm = 1
            for d in e.exponent_denominators():
                lcm = lcm * d // math.gcd(lcm, d)
                assert P.poly_degree() % lcm == 0


def test_irreducible_examples():
    v = irreducible_test(ints(c3, -3, 0, 1))
    assert v.verdict == "Irreducible" and v.certificate == "newton_screen"
    v = irreducible_test(ints(c3, -1, 0, 1))
    assert v.verdict == "Reducible" and v.certificate == "modp_not_power"
    v = irreducible_test(ints(c2, 1, 1, 1))
    assert v.verdict == "Irreducible" and v.certificate == "modp_irreducible"


def test_irreducible_expansion_cases():
    # X^4 - p^2: single slope, gcd silent, separated by the digit walk
    v = irreducible_test(ints(c3, -9, 0, 0, 0, 1))
    assert v.verdict == "Reducible"
    # (X - 1)^2 - 3: needs one translation before the orbit closes
    v = irreducible_test(ints(c3, -2, -2, 1))
    assert v.verdict == "Irreducible" and v.certificate == "expansion_complete"
    assert 0 < v.steps <= v.step_bound
    # a pair congruent mod 3 that separates at depth 2
    v = irreducible_test(ints(c3, 4, -5, 1))  # (X-1)(X-4)
    assert v.verdict == "Reducible"
    assert v.steps <= v.step_bound


def test_irreducible_errors():
    with pytest.raises(NotSquareFree) as exc:
        irreducible_test(ints(c3, 4, -4, 1))
    assert exc.value.factor is not None
    with pytest.raises(NotApplicable):
        irreducible_test(ints(c2, -4, 0, 0, 0, 1))  # wild slope 1/2 at p=2


def test_gcd_helper():
    A = ints(c3, 4, -4, 1)          # (X-2)^2
    g = padic_poly_gcd(A, A.derivative())
    assert g.poly_degree() == 1
    assert g.coeff(0).congruent(c3.from_int(-2))


def test_expansion_field_degree_bounded():
    # all digits live in one extension with f* at most deg P
    rep = root_find(ints(c2, -2, 0, 0, 1))
    for e in rep.expansions:
        assert e.ctx.f <= 3
