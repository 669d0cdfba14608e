"""Characteristic sequences (Newton polygons) of truncated series.

The break indices are computed by iterated maximization of the slope
function l_m(n) = (v(F_{k_{m-1}}) - v(F_n)) / (n - k_{m-1}), taking the
largest maximizing index at each step. Ties against the unseen tail are
settled by the tail certificate: a polynomial tail certifies the whole
polygon, an affine tail certifies every slope strictly above a
computable floor and leaves the rest flagged.

Slopes are p-adic valuations of roots and are kept as exact Fractions;
no floating point enters the polygon computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, PrecisionExhausted, TailUncertain
from .series import (TruncatedSeries, ZERO_TAIL, distinguished,
                     poly_divmod_monic, scale_substitute)

INF = math.inf
NEG_INF = -math.inf


@dataclass
class CharSequence:
    """Breaks (k_i, v_p(F_{k_i})) and the strictly decreasing slopes
    between them. zero_mult counts exact roots at the origin (the
    polygon then starts at k_0 = zero_mult instead of 0)."""

    breaks: list  # [(k, Fraction v_p)]
    slopes: list  # [Fraction], len = len(breaks) - 1
    complete: bool
    slope_floor: Fraction | float  # slopes > floor are certified found
    zero_mult: int = 0

    def slope_lengths(self):
        return [(self.slopes[i], self.breaks[i + 1][0] - self.breaks[i][0])
                for i in range(len(self.slopes))]

    def slope_index(self, t) -> int | None:
        t = Fraction(t)
        for i, a in enumerate(self.slopes):
            if a == t:
                return i
        return None

    def require_certified(self, t):
        if not self.complete and Fraction(t) <= self.slope_floor:
            raise TailUncertain(
                f"polygon certified only for slopes > {self.slope_floor}")


def _coeff_valuations(F: TruncatedSeries):
    """v_p per coefficient; exact zeros skipped; ambiguity guarded later."""
    e = F.ctx.e
    vals = {}
    ambiguous = {}
    for i, c in enumerate(F.coeffs):
        if c.is_exact_zero:
            continue
        if c.is_zeroish:
            ambiguous[i] = Fraction(c.min_valuation_pi(), e)
        else:
            vals[i] = Fraction(c.valuation_pi(), e)
    return vals, ambiguous


def characteristic_sequence(F: TruncatedSeries) -> CharSequence:
    """The break/slope data of F's Newton polygon."""
    if F.tail is None:
        raise TailUncertain("characteristic sequence needs a tail certificate")
    vals, ambiguous = _coeff_valuations(F)
    if not vals:
        raise InvalidInput("series has no coefficient with known valuation")
    e = F.ctx.e
    D = F.degree
    zero_mult = F.x_order() if F.coeffs[0].is_exact_zero else 0
    start = min(vals)
    for n in ambiguous:
        if n < start:
            raise PrecisionExhausted(
                f"coefficient {n} below the first break is ambiguous")
    # affine tail: v_p(F_i) >= (a i + b)/e for i > D
    if F.is_polynomial:
        ta = tb = None
    else:
        ta = F.tail.a / e
        tb = F.tail.b / e
    breaks = [(start, vals[start])]
    floor = NEG_INF
    complete = True
    k_cur, v_cur = breaks[0]
    while True:
        best = None
        best_k = None
        for n, vn in vals.items():
            if n <= k_cur:
                continue
            slope = (v_cur - vn) / (n - k_cur)
            if best is None or slope > best or (slope == best and n > best_k):
                best, best_k = slope, n
        # ambiguous coefficients could raise the max beyond what we see
        for n, vlow in ambiguous.items():
            if n <= k_cur:
                continue
            ceiling = (v_cur - vlow) / (n - k_cur)
            if best is None or ceiling > best or (ceiling == best and n > best_k):
                raise PrecisionExhausted(
                    f"coefficient {n} is ambiguous at the polygon frontier")
        if ta is not None:
            # tail could contribute l(n) up to (v_cur - (a n + b)/e)/(n - k)
            tail_sup = max(_tail_slope_sup(v_cur, k_cur, ta, tb, D), -ta)
            if best is None or tail_sup >= best:
                floor = tail_sup if best is None else max(tail_sup, best)
                complete = False
                break
        if best is None:
            break
        breaks.append((best_k, vals[best_k]))
        k_cur, v_cur = best_k, vals[best_k]
    slopes = []
    for i in range(1, len(breaks)):
        k0, v0 = breaks[i - 1]
        k1, v1 = breaks[i]
        slopes.append((v0 - v1) / (k1 - k0))
    for i in range(1, len(slopes)):
        if not slopes[i] < slopes[i - 1]:
            raise InvalidInput("polygon slopes failed to decrease strictly")
    return CharSequence(breaks, slopes, complete,
                        NEG_INF if complete else floor, zero_mult)


def _tail_slope_sup(v_cur, k_cur, ta, tb, D):
    """sup over integer n > D of (v_cur - (ta n + tb)) / (n - k_cur).

    The function is monotone in n on (k_cur, inf), so the sup over the
    tail range is attained at n = D + 1 or in the limit (-ta)."""
    n0 = D + 1
    at_start = (v_cur - (ta * n0 + tb)) / (n0 - k_cur)
    return max(at_start, -ta)


def roots_on_circle(F: TruncatedSeries, t) -> int:
    """Number of roots of valuation exactly t (k_i - k_{i-1} on a slope,
    zero off-slope)."""
    t = Fraction(t)
    cs = characteristic_sequence(F)
    cs.require_certified(t)
    for slope, length in cs.slope_lengths():
        if slope == t:
            return length
    return 0


def tame_rational_between(a, b, p: int):
    """Some rational strictly inside (a, b) whose denominator is prime
    to p (so scaling by it never needs wild ramification)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise InvalidInput(f"empty interval ({a}, {b})")
    q = 3 if p == 2 else 2
    Q = 1
    for _ in range(256):
        n = math.floor(b * Q)
        if Fraction(n, Q) == b:
            n -= 1
        if Fraction(n, Q) > a:
            return Fraction(n, Q)
        Q *= q
    raise InvalidInput("no tame rational found in the interval")


def tail_factor(F: TruncatedSeries, threshold) -> TruncatedSeries:
    """Monic polynomial whose roots are exactly the roots of F with
    v_p >= threshold, expressed over F's own context. The threshold must
    have a p-free scaling route (denominator times e prime to p)."""
    t = Fraction(threshold)
    G = scale_substitute(F, t)
    ctx2 = G.ctx
    n = G.wideg()
    lead = G.coeffs[n]
    Gn = G.scale(lead.inverse())
    dp = distinguished(Gn, "closed")
    d = dp.degree
    step = int(t * ctx2.e)
    coeffs = [dp.poly.coeff(j).shift_pi(step * (d - j)) for j in range(d + 1)]
    base = F.ctx
    out = [base.downcast(c) for c in coeffs]
    return TruncatedSeries(base, out, ZERO_TAIL)


def circle_polynomial(F: TruncatedSeries, t) -> TruncatedSeries:
    """The monic polynomial over F's context whose roots are exactly the
    roots of F with v_p = t; the unit polynomial when t is not a slope.

    Scaling exactly by t may need wild ramification (p dividing the
    denominator), so the factor is isolated between two tame radii
    bracketing the slope with no other slope in between.
    """
    t = Fraction(t)
    ctx = F.ctx
    cs = characteristic_sequence(F)
    cs.require_certified(t)
    idx = cs.slope_index(t)
    if idx is None:
        return TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    below = max((s for s in cs.slopes if s < t), default=t - 1)
    lo = tame_rational_between(below, t, ctx.p)
    B_ge = tail_factor(F, lo)
    above = min((s for s in cs.slopes if s > t), default=t + 1)
    hi = tame_rational_between(t, above, ctx.p)
    B_gt = tail_factor(F, hi)
    if B_ge.poly_degree() == B_gt.poly_degree():
        return TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    Q, rem = poly_divmod_monic(B_ge, B_gt)
    for c in rem.coeffs:
        if not c.is_zeroish and c.valuation_pi() < ctx.N // 2:
            raise PrecisionExhausted("circle factor division left a remainder")
    return Q


def eval_valuation_fast(F: TruncatedSeries, t, x=None):
    """v_p(F(x)) for v_p(x) = t read off the polygon.

    Strictly between slopes (or above all of them) no evaluation is
    needed: v_p(F(x)) = v_p(F_{k}) + k t for the break k where the
    polygon turns. On a slope the circle polynomial's value at x enters,
    so x must be supplied there.
    """
    t = Fraction(t)
    cs = characteristic_sequence(F)
    cs.require_certified(t)
    if cs.zero_mult:
        raise InvalidInput("series vanishes at 0; strip X powers first")
    slopes = cs.slopes
    on_slope = cs.slope_index(t)
    if on_slope is None:
        k_prev, v_prev = cs.breaks[0]
        for i, a in enumerate(slopes):
            if a > t:
                k_prev, v_prev = cs.breaks[i + 1]
            else:
                break
        return v_prev + k_prev * t
    if x is None:
        raise InvalidInput(
            "v_p(x) equals a slope; supply the point for the circle term")
    n = on_slope
    k_n, v_n = cs.breaks[n + 1]
    k_prev = cs.breaks[n][0]
    C = circle_polynomial(F, t)
    if not C.ctx.same(x.ctx):
        rmap = C.ctx.refine(f_new=x.ctx.f, e_new=x.ctx.e)
        C = C.reembed(rmap)
    val = C.eval(x)
    if val.is_zeroish:
        raise PrecisionExhausted("x is a root of the circle polynomial")
    return v_n + k_prev * t + val.valuation()


@dataclass
class ConvergenceInfo:
    """Certified convergence radius exponent mu and the disc kind."""

    mu: Fraction | float  # NEG_INF for polynomials
    disc_kind: str  # "open" | "closed"


def convergence_mu(F: TruncatedSeries) -> ConvergenceInfo:
    """mu = -liminf v_p(F_n)/n from the affine tail certificate."""
    if F.is_polynomial:
        return ConvergenceInfo(NEG_INF, "closed")
    if F.tail is None:
        raise TailUncertain("convergence radius needs a tail certificate")
    mu = Fraction(-F.tail.a, F.ctx.e)
    return ConvergenceInfo(mu, "open" if not F.tail.strict else "closed")
