import random
from collections import Counter
from fractions import Fraction

import pytest

from padicres.errors import InvalidInput, TailUncertain
from padicres.newton import (NEG_INF, characteristic_sequence,
                             circle_polynomial, convergence_mu,
                             eval_valuation_fast, roots_on_circle,
                             tame_rational_between)
from padicres.padic import PadicContext
from padicres.series import TruncatedSeries, ZERO_TAIL, affine_tail


c2 = PadicContext(2, N=30)
c3 = PadicContext(3, N=30)
p = 2

F_half = TruncatedSeries.from_ints(c2, [p, p, 1])
F_two = TruncatedSeries.from_ints(c2, [p**3, -(p + p * p), 1])  # (X-p)(X-p^2)
F_unit = TruncatedSeries.from_ints(c2, [1, 1])


def test_characteristic_sequence_examples():
    cs = characteristic_sequence(F_half)
    assert cs.breaks == [(0, Fraction(1)), (2, Fraction(0))]
    assert cs.slopes == [Fraction(1, 2)]
    assert cs.complete

    cs = characteristic_sequence(F_two)
    assert cs.breaks == [(0, Fraction(3)), (1, Fraction(1)), (2, Fraction(0))]
    assert cs.slopes == [Fraction(2), Fraction(1)]

    cs = characteristic_sequence(F_unit)
    assert cs.slopes == [Fraction(0)]
    assert cs.breaks[1][0] == 1


def test_slopes_strictly_decrease_random():
    rng = random.Random(2)
    for _ in range(40):
        D = rng.randint(1, 10)
        coeffs = [rng.randint(1, 80) for _ in range(D + 1)]
        F = TruncatedSeries.from_ints(c3, coeffs)
        cs = characteristic_sequence(F)
        for a, b in zip(cs.slopes, cs.slopes[1:]):
            assert b < a


def test_requires_certificate():
    F = TruncatedSeries.from_ints(c2, [p, 1], None)
    with pytest.raises(TailUncertain):
        characteristic_sequence(F)


def test_tail_floor_marks_incomplete():
    # geometric-type tail: slopes below the floor are not certified
    F = TruncatedSeries(c2, [c2.from_int(2), c2.one()], affine_tail(2, 0))
    cs = characteristic_sequence(F)
    assert not cs.complete
    with pytest.raises(TailUncertain):
        roots_on_circle(F, Fraction(-3))


def test_roots_on_circle():
    assert roots_on_circle(F_half, Fraction(1, 2)) == 2
    assert roots_on_circle(F_half, 1) == 0
    assert roots_on_circle(F_two, 2) == 1
    assert roots_on_circle(F_two, 1) == 1


def test_root_accounting_matches_construction():
    rng = random.Random(11)
    for trial in range(60):
        ctx = random.Random(trial).choice([c2, c3])
        k = rng.randint(1, 4)
        vals = [rng.randint(0, 4) for _ in range(k)]
        F = TruncatedSeries.from_ints(ctx, [1])
        want = Counter()
        for a in vals:
            u = ctx.random_unit(rng)
            F = F * TruncatedSeries(ctx, [u.shift_pi(a), ctx.one()], ZERO_TAIL)
            want[Fraction(a)] += 1
        got = Counter()
        for s, length in characteristic_sequence(F).slope_lengths():
            got[s] += length
        assert got == want


def test_circle_polynomial_examples():
    C = circle_polynomial(F_two, 1)
    assert C.ctx is c2 and C.poly_degree() == 1
    assert C.coeff(0).congruent(c2.from_int(-p), 20)
    C = circle_polynomial(F_two, 2)
    assert C.coeff(0).congruent(c2.from_int(-p * p), 20)
    C = circle_polynomial(F_half, Fraction(1, 2))
    assert C.poly_degree() == 2
    for i, want in enumerate([p, p, 1]):
        assert C.coeff(i).congruent(c2.from_int(want), 20)
    C = circle_polynomial(F_half, Fraction(1, 3))
    assert C.poly_degree() == 0 and C.coeff(0).congruent(c2.one())


def test_circle_factorization_consistency():
    # product of the circle polynomials over all slopes recovers the
    # monic normalization of a factorable polynomial
    rng = random.Random(4)
    for _ in range(10):
        vals = sorted({rng.randint(0, 3) for _ in range(2)})
        F = TruncatedSeries.from_ints(c3, [1])
        for a in vals:
            u = c3.random_unit(rng)
            F = F * TruncatedSeries(c3, [u.shift_pi(a * c3.e), c3.one()],
                                    ZERO_TAIL)
        prod = TruncatedSeries(c3, [c3.one()], ZERO_TAIL)
        for s in characteristic_sequence(F).slopes:
            prod = prod * circle_polynomial(F, s)
        for i in range(F.degree + 1):
            assert prod.coeff(i).congruent(F.coeff(i), 20)


def test_eval_valuation_fast_between_slopes():
    assert eval_valuation_fast(F_two, Fraction(3, 2)) == Fraction(5, 2)
    assert eval_valuation_fast(F_half, 1) == 1
    assert eval_valuation_fast(F_unit, 1) == 0


def test_eval_valuation_fast_on_slope_with_point():
    x = c2.from_int(3 * p)
    v = eval_valuation_fast(F_two, 1, x)
    assert v == Fraction(3)
    assert F_two.eval(x).valuation() == v


def test_eval_valuation_fast_matches_eval_random():
    rng = random.Random(11)
    for _ in range(25):
        exps = sorted(rng.sample(range(0, 6), rng.randint(1, 3)), reverse=True)
        F = TruncatedSeries.from_ints(c3, [1])
        for a in exps:
            u = c3.random_unit(rng)
            F = F * TruncatedSeries(c3, [u.shift_pi(a), c3.one()], ZERO_TAIL)
        t = Fraction(2 * rng.choice(exps) + 1, 2)
        rm = c3.refine(e_new=2)
        x = rm.embed(c3.random_unit(rng)).shift_pi(int(t * 2))
        want = F.reembed(rm).eval(x).valuation()
        assert eval_valuation_fast(F, t) == want


def test_convergence_mu():
    assert convergence_mu(F_half).mu == NEG_INF
    F = TruncatedSeries(c2, [c2.from_int(2**i) for i in range(5)],
                        affine_tail(1, 0))
    info = convergence_mu(F)
    assert info.mu == Fraction(-1)
    with pytest.raises(TailUncertain):
        convergence_mu(TruncatedSeries.from_ints(c2, [1, 1], None))


def test_tame_rational_between():
    for (a, b, pp) in [(0, 1, 2), (Fraction(1, 2), Fraction(2, 3), 2),
                       (Fraction(-3, 2), Fraction(-1, 2), 3)]:
        t = tame_rational_between(a, b, pp)
        assert a < t < b
        assert t.denominator % pp != 0
    with pytest.raises(InvalidInput):
        tame_rational_between(1, 1, 2)


def test_slopes_exceed_mu():
    # every slope of an affine-tailed series sits above the certified mu
    F = TruncatedSeries(c2, [c2.from_int(8), c2.from_int(2), c2.one()],
                        affine_tail(1, 0))
    info = convergence_mu(F)
    cs = characteristic_sequence(F)
    for s in cs.slopes:
        assert s > info.mu
