"""Truncated power series over O_K (and K).

A TruncatedSeries holds coefficients for degrees 0..D plus an optional
tail certificate for the unseen coefficients. Certificates come in two
shapes: "zero" (the series is exactly a polynomial) and "affine"
(v_pi(F_i) >= a*i + b for all i > D). A constant bound T is the affine
certificate (0, T). Certificates are supplied by the caller and taken
as ground truth; the library only verifies what the retained
coefficients can show.

Weierstrass preparation lifts the coprime residue factorization of the
retained polynomial (X^n times a unit part for the open disc, the monic
mod-pi image times its leading coefficient for the closed disc) by
quadratic Hensel iteration over O_K. Because the lifting involves no
X-degree truncation, the distinguished factor and its cofactor are
pinned to the working precision; division with remainder then reduces
to exact long division against the monic factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, NotApplicable, NotAUnit, TailUncertain
from .padic import PadicContext, PadicElem

INF = math.inf


@dataclass(frozen=True)
class TailCert:
    """Certified lower bound on tail coefficient valuations (pi units)."""

    kind: str  # "zero" | "affine"
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    strict: bool = False  # tail valuations exceed the retained minimum

    def min_after(self, D: int):
        """inf over i > D of the certified v_pi(F_i); None if unbounded
        below (negative slope)."""
        if self.kind == "zero":
            return INF
        if self.a > 0:
            return self.a * (D + 1) + self.b
        if self.a == 0:
            return self.b
        return None

    def shifted(self, da: Fraction, db: Fraction) -> "TailCert":
        if self.kind == "zero":
            return self
        return TailCert("affine", self.a + da, self.b + db, self.strict)


ZERO_TAIL = TailCert("zero")


def constant_tail(bound, strict: bool = False) -> TailCert:
    return TailCert("affine", Fraction(0), Fraction(bound), strict)


def affine_tail(a, b, strict: bool = False) -> TailCert:
    return TailCert("affine", Fraction(a), Fraction(b), strict)


class TruncatedSeries:
    """Power series known through X-degree D, coefficients in one context."""

    __slots__ = ("ctx", "coeffs", "tail")

    def __init__(self, ctx: PadicContext, coeffs, tail: TailCert | None):
        coeffs = tuple(coeffs)
        if not coeffs:
            coeffs = (ctx.zero(),)
        for c in coeffs:
            ctx.check_same(c.ctx)
        self.ctx = ctx
        self.coeffs = coeffs
        self.tail = tail

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_ints(cls, ctx, ints, tail: TailCert | None = ZERO_TAIL):
        return cls(ctx, [ctx.from_int(int(c)) for c in ints], tail)

    @classmethod
    def from_fractions(cls, ctx, fracs, tail: TailCert | None = ZERO_TAIL):
        return cls(ctx, [ctx.from_fraction(c) for c in fracs], tail)

    @classmethod
    def x_power(cls, ctx, n: int):
        return cls(ctx, [ctx.zero()] * n + [ctx.one()], ZERO_TAIL)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_polynomial(self) -> bool:
        return self.tail is not None and self.tail.kind == "zero"

    def coeff(self, i: int) -> PadicElem:
        if i <= self.degree:
            return self.coeffs[i]
        if self.is_polynomial:
            return self.ctx.zero()
        raise InvalidInput(f"coefficient {i} beyond truncation degree {self.degree}")

    def poly_degree(self) -> int:
        """Degree of the retained polynomial part (last not-exactly-zero)."""
        for i in range(self.degree, -1, -1):
            if not self.coeffs[i].is_exact_zero:
                return i
        return 0

    def x_order(self) -> int:
        """Multiplicity of the exact root at 0."""
        for i, c in enumerate(self.coeffs):
            if not c.is_exact_zero:
                return i
        return len(self.coeffs)

    # -- Weierstrass degrees -----------------------------------------------

    def _retained_minimum(self):
        """(min v_pi, first index, last index); ambiguous coefficients that
        could undercut the minimum raise TailUncertain."""
        best = None
        first = last = None
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero:
                continue
            if c.is_zeroish:
                continue  # handled in the second pass against best
            v = c.valuation_pi()
            if best is None or v < best:
                best, first, last = v, i, i
            elif v == best:
                last = i
        if best is None:
            raise TailUncertain("no coefficient with a known valuation")
        for i, c in enumerate(self.coeffs):
            if c.is_zeroish and not c.is_exact_zero and c.min_valuation_pi() <= best:
                raise TailUncertain(
                    f"coefficient {i} is ambiguous at the candidate minimum")
        return best, first, last

    def wideg(self) -> int:
        """Smallest index attaining the minimal coefficient valuation."""
        if self.tail is None:
            raise TailUncertain("wideg needs a tail certificate")
        best, first, _ = self._retained_minimum()
        floor = self.tail.min_after(self.degree)
        if floor is None or floor < best:
            raise TailUncertain("tail certificate cannot exclude a smaller minimum")
        return first

    def lwideg(self) -> int:
        """Largest index attaining the minimum, all later strictly above."""
        if self.tail is None:
            raise TailUncertain("lwideg needs a tail certificate")
        best, _, last = self._retained_minimum()
        floor = self.tail.min_after(self.degree)
        if floor is None:
            raise TailUncertain("tail certificate unbounded below")
        if not (floor > best or (self.tail.strict and floor >= best)):
            raise TailUncertain("tail certificate cannot certify strict growth")
        return last

    # -- ring operations ------------------------------------------------------

    def _combined_tail(self, other, for_mul: bool = False):
        ta, tb = self.tail, other.tail
        if ta is None or tb is None:
            return None
        if ta.kind == "zero" and tb.kind == "zero":
            return ZERO_TAIL
        if for_mul:
            return None
        if ta.kind == "zero":
            return TailCert("affine", tb.a, tb.b, False)
        if tb.kind == "zero":
            return TailCert("affine", ta.a, ta.b, False)
        return TailCert("affine", min(ta.a, tb.a), min(ta.b, tb.b), False)

    def __add__(self, other):
        self.ctx.check_same(other.ctx)
        n = max(len(self.coeffs), len(other.coeffs))
        res = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else self._tail_zero()
            b = other.coeffs[i] if i < len(other.coeffs) else other._tail_zero()
            res.append(a + b)
        return TruncatedSeries(self.ctx, res, self._combined_tail(other))

    def _tail_zero(self):
        if self.is_polynomial:
            return self.ctx.zero()
        raise InvalidInput("adding series of different degrees needs zero tails")

    def __neg__(self):
        return TruncatedSeries(self.ctx, [-c for c in self.coeffs], self.tail)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self.ctx.check_same(other.ctx)
        cap = max(len(self.coeffs), len(other.coeffs)) - 1
        both_poly = self.is_polynomial and other.is_polynomial
        if both_poly:
            cap = self.poly_degree() + other.poly_degree()
        out = [self.ctx.zero() for _ in range(cap + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > cap:
                    break
                if b.is_exact_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ctx, out, ZERO_TAIL if both_poly else None)

    def scale(self, c: PadicElem) -> "TruncatedSeries":
        dv = c.valuation_pi() if not c.is_zeroish else 0
        tail = self.tail.shifted(Fraction(0), Fraction(dv)) if self.tail else None
        return TruncatedSeries(self.ctx, [c * a for a in self.coeffs], tail)

    def truncate(self, D: int) -> "TruncatedSeries":
        if D >= self.degree:
            return self
        # dropping retained coefficients forfeits a non-zero tail certificate
        tail = self.tail if self.is_polynomial and self.poly_degree() <= D else None
        return TruncatedSeries(self.ctx, self.coeffs[: D + 1], tail)

    def derivative(self) -> "TruncatedSeries":
        out = [self.coeffs[i] * i for i in range(1, len(self.coeffs))]
        if not out:
            out = [self.ctx.zero()]
        return TruncatedSeries(self.ctx, out, self.tail if self.is_polynomial else None)

    def translate(self, a: PadicElem) -> "TruncatedSeries":
        """F(X + a) by iterated synthetic division (polynomials only)."""
        if not self.is_polynomial:
            raise InvalidInput("translation needs a polynomial (zero tail)")
        n = self.degree
        work = list(self.coeffs)
        out = []
        for k in range(n + 1):
            for i in range(n - 1 - k, -1, -1):
                work[i] = work[i] + a * work[i + 1]
            out.append(work[0])
            work = work[1:]
        return TruncatedSeries(self.ctx, out, ZERO_TAIL)

    def reembed(self, rmap) -> "TruncatedSeries":
        """Transport into a refined context."""
        ratio = rmap.ctx.e // self.ctx.e
        tail = self.tail
        if tail is not None and tail.kind == "affine":
            tail = TailCert("affine", tail.a * ratio, tail.b * ratio, tail.strict)
        return TruncatedSeries(rmap.ctx, [rmap.embed(c) for c in self.coeffs], tail)

    def eval(self, x: PadicElem) -> PadicElem:
        """Horner evaluation with a certified truncation error bound."""
        self.ctx.check_same(x.ctx)
        e = self.ctx.e
        if x.min_valuation_pi() < 0:
            raise InvalidInput("evaluation point must lie in O_K")
        if not self.is_polynomial:
            if self.tail is None:
                raise TailUncertain("evaluation of a series with no tail certificate")
            t = x.min_valuation_pi()
            # term i > D has v_pi >= a*i + b + i*t; need that to diverge
            if self.tail.a + t <= 0:
                raise TailUncertain(
                    "cannot certify convergence at this radius from the tail")
            err = self.tail.a * (self.degree + 1) + self.tail.b + (self.degree + 1) * t
        else:
            err = INF
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if err is INF:
            return acc
        # cap the result's guarantee by the tail error
        err_i = int(math.floor(err))
        if acc.pl is None:
            if acc.sh is None:
                return PadicElem(self.ctx, err_i, None, 0)
            return PadicElem(self.ctx, min(acc.sh, err_i), None, 0)
        if acc.sh >= err_i:
            return PadicElem(self.ctx, err_i, None, 0)
        rel = min(acc.rel, err_i - acc.sh)
        return self.ctx.make(acc.sh, acc.pl, rel)

    # -- inspection ---------------------------------------------------------

    def valuation_profile(self):
        """(index, v_pi or None) for each retained coefficient."""
        out = []
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero:
                out.append((i, INF))
            elif c.is_zeroish:
                out.append((i, None))
            else:
                out.append((i, c.valuation_pi()))
        return out

    def valuation_profile_p(self):
        """Same, in p-adic units."""
        e = self.ctx.e
        return [(i, v if v is None or v is INF else Fraction(v, e))
                for i, v in self.valuation_profile()]

    def congruent(self, other, prec_pi: int | None = None) -> bool:
        """Equality of retained coefficients to the tracked precision."""
        n = max(len(self.coeffs), len(other.coeffs))
        for i in range(n):
            a = self.coeff(i) if i <= self.degree or self.is_polynomial else None
            b = other.coeff(i) if i <= other.degree or other.is_polynomial else None
            if a is None or b is None:
                return False
            if not a.congruent(b, prec_pi):
                return False
        return True

    def __repr__(self):
        prof = ", ".join(
            f"X^{i}:{'?' if v is None else v}" for i, v in self.valuation_profile())
        return f"<series D={self.degree} v_pi=[{prof}]>"


# -- division and preparation ------------------------------------------------


def unit_inverse(U: TruncatedSeries, degree: int | None = None) -> TruncatedSeries:
    """Inverse of a unit power series, through the given X-degree."""
    ctx = U.ctx
    u0 = U.coeffs[0]
    if u0.is_zeroish or u0.valuation_pi() != 0:
        raise NotAUnit("constant coefficient is not a unit")
    D = U.degree if degree is None else degree
    inv0 = u0.inverse()
    out = [inv0]
    for n in range(1, D + 1):
        acc = ctx.zero()
        for i in range(1, n + 1):
            ui = U.coeff(i) if (i <= U.degree or U.is_polynomial) else None
            if ui is None:
                break
            if ui.is_exact_zero:
                continue
            acc = acc + ui * out[n - i]
        out.append(-(inv0 * acc))
    return TruncatedSeries(ctx, out, None)


@dataclass
class DistinguishedPoly:
    """Monic factor carrying exactly the roots of F in the chosen disc,
    with the unit cofactor so that F = lead * poly * unit."""

    disc: str
    degree: int
    poly: TruncatedSeries
    unit: TruncatedSeries
    lead: PadicElem

    def reconstruct(self) -> TruncatedSeries:
        return (self.poly * self.unit).scale(self.lead)


def _tail_cap(F: TruncatedSeries) -> int:
    """Precision (pi units) to which in-window data determines the
    Weierstrass factors: unseen tail coefficients can shift them at the
    tail's certified level."""
    if F.is_polynomial:
        return F.ctx.N
    floor = F.tail.min_after(F.degree)
    if floor is None:
        raise TailUncertain("tail certificate unbounded below")
    return min(F.ctx.N, int(math.floor(floor)))


def _modx(ctx, coeffs, D: int) -> TruncatedSeries:
    """View coefficients as the polynomial they are mod X^{D+1}."""
    cs = list(coeffs[: D + 1])
    cs += [ctx.zero()] * (D + 1 - len(cs))
    return TruncatedSeries(ctx, cs, ZERO_TAIL)


def _residue_poly(ctx, F: TruncatedSeries):
    """Reduction of an O_K-coefficient polynomial mod the maximal ideal."""
    out = []
    for c in F.coeffs:
        if c.min_valuation_pi() < 0:
            raise InvalidInput("reduction needs integral coefficients")
        if c.is_zeroish or c.valuation_pi() > 0:
            out.append(ctx.ff.zero)
        else:
            out.append(c.residue())
    return ctx.ff.poly_strip(out)


def _lift_ff_poly(ctx, poly) -> TruncatedSeries:
    if not poly:
        return TruncatedSeries(ctx, [ctx.zero()], ZERO_TAIL)
    return TruncatedSeries(ctx, [ctx.teichmuller(c) for c in poly], ZERO_TAIL)


def _settled(E: TruncatedSeries, cap: int) -> bool:
    return all(c.is_zeroish or c.valuation_pi() >= cap for c in E.coeffs)


def _hensel_split(A: TruncatedSeries, n: int, disc: str, cap: int):
    """Lift the coprime residue factorization of the polynomial A into
    A = P * Q mod pi^cap with P monic of degree n carrying the roots of
    the chosen disc. Quadratic Hensel on polynomial factors: no X-degree
    truncation is involved, so the factors are pinned to pi^cap."""
    ctx = A.ctx
    d = A.poly_degree()
    ff = ctx.ff
    Abar = _residue_poly(ctx, A)
    if disc == "open":
        # A mod pi = X^n * ubar with ubar(0) a unit
        ubar = Abar[n:]
        P = TruncatedSeries.x_power(ctx, n)
        Q = _lift_ff_poly(ctx, ubar)
        pbar = ff.poly_strip([ff.zero] * n + [ff.one])
        qbar = ff.poly_strip(ubar)
    else:
        # A mod pi has degree exactly n with unit leading coefficient
        lc = Abar[n]
        pbar = ff.poly_monic(Abar[: n + 1])
        qbar = [lc]
        P = _lift_ff_poly(ctx, pbar)
        Q = _lift_ff_poly(ctx, qbar)
    # Bezout pair over the residue field: s*pbar + t*qbar = 1
    s_ff, t_ff = _ff_bezout(ff, pbar, qbar)
    s = _lift_ff_poly(ctx, s_ff)
    t = _lift_ff_poly(ctx, t_ff)
    one = TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    dq = d - n
    for _ in range(cap.bit_length() + 3):
        E = A - (P * Q)
        if _settled(E, cap):
            break
        # factor update: P' = P + (tE mod P), Q' = Q + Es + quo(tE, P) Q;
        # the true cofactor has degree dq, so coefficients above are
        # zero mod the squared error and may be dropped
        qq, r = poly_divmod_monic(E * t, P)
        P = P + r
        Q = _modx(ctx, (Q + E * s + qq * Q).coeffs, max(dq, 0))
        # Bezout refresh: t' = t(1 - b) mod P', s' = quo(1 - t'Q', P')
        b = (s * P) + (t * Q) - one
        _, t = poly_divmod_monic(t - t * b, P)
        s, _ = poly_divmod_monic(one - t * Q, P)
    else:
        raise TailUncertain("Weierstrass factor iteration failed to converge")
    # the iteration settles the factors mod pi^cap absolutely
    P = TruncatedSeries(ctx, [c.cap_abs_pi(cap) for c in P.coeffs], ZERO_TAIL)
    Q = TruncatedSeries(ctx, [c.cap_abs_pi(cap) for c in Q.coeffs], ZERO_TAIL)
    return P, Q


def _ff_bezout(ff, a, b):
    """Extended Euclid over the residue field: s*a + t*b = 1."""
    r0, r1 = ff.poly_strip(a), ff.poly_strip(b)
    s0, s1 = [ff.one], []
    t0, t1 = [], [ff.one]
    while r1:
        q, r = ff.poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, ff.poly_sub(s0, ff.poly_mul(q, s1))
        t0, t1 = t1, ff.poly_sub(t0, ff.poly_mul(q, t1))
    if ff.poly_deg(r0) != 0:
        raise InvalidInput("factors are not coprime mod pi")
    inv = ff.inv(r0[0])
    return ff.poly_scale(s0, inv), ff.poly_scale(t0, inv)


def distinguished(F: TruncatedSeries, disc: str) -> DistinguishedPoly:
    """Weierstrass preparation: F = F_n * P * U with P monic of degree
    wideg (open) or lwideg (closed) and U a unit power series."""
    ctx = F.ctx
    n = F.wideg() if disc == "open" else F.lwideg()
    lead = F.coeffs[n]
    if lead.is_zeroish or lead.valuation_pi() != 0:
        raise NotApplicable(
            "leading Weierstrass coefficient is not a unit; rescale first")
    cap = _tail_cap(F)
    inv_lead = lead.inverse()
    fu = [c * inv_lead for c in F.coeffs]
    if not F.is_polynomial:
        fu = [c.cap_abs_pi(cap) for c in fu]
    Fu = TruncatedSeries(ctx, fu, ZERO_TAIL)
    if n == 0:
        one = TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
        return DistinguishedPoly(disc, 0, one, Fu, lead)
    P, B = _hensel_split(Fu, n, disc, cap)
    if disc == "open":
        for i in range(n):
            c = P.coeffs[i]
            if not c.is_zeroish and c.valuation_pi() <= 0:
                raise TailUncertain(
                    "distinguished polynomial failed the open-disc shape check")
    return DistinguishedPoly(disc, n, P, B, lead)


def washington_divide(g: TruncatedSeries, f: TruncatedSeries, disc: str):
    """Division with remainder g = f q + r, deg r below the pivot index.

    disc = "open" divides at the Weierstrass degree of f, "closed" at
    the last Weierstrass degree; the pivot coefficient must be a unit.
    The remainder comes from exact division against the monic
    distinguished factor of f, so it is pinned to the full working
    precision for polynomial inputs and to the tail-certified level
    otherwise.
    """
    g.ctx.check_same(f.ctx)
    ctx = g.ctx
    if disc not in ("open", "closed"):
        raise InvalidInput(f"disc must be open or closed, got {disc!r}")
    dp = distinguished(f, disc)
    n = dp.degree
    D = max(g.degree, f.degree)
    if n == 0:
        q = _modx(ctx, (g * unit_inverse(dp.unit, degree=D)).coeffs, D)
        q = q.scale(dp.lead.inverse())
        return q, TruncatedSeries(ctx, [ctx.zero()], ZERO_TAIL)
    gw = _modx(ctx, g.coeffs, g.degree)
    Qhat, r = poly_divmod_monic(gw, dp.poly)
    Uinv = unit_inverse(dp.unit, degree=D)
    q = _modx(ctx, (Qhat * Uinv).coeffs, D).scale(dp.lead.inverse())
    if not (g.is_polynomial and f.is_polynomial):
        cap = min(_tail_cap(f), _tail_cap(g) if g.tail is not None else ctx.N)
        r = TruncatedSeries(ctx, [c.cap_abs_pi(cap) for c in r.coeffs], ZERO_TAIL)
        q = TruncatedSeries(ctx, [c.cap_abs_pi(cap) for c in q.coeffs], None)
    return q, r


def scale_substitute(F: TruncatedSeries, t) -> TruncatedSeries:
    """F(p^t X): coefficient i picks up p^{i t}. Refines the context
    when the denominator of t does not divide e."""
    t = Fraction(t)
    ctx = F.ctx
    step = t * ctx.e
    if step.denominator != 1:
        need = ctx.e * step.denominator
        rmap = ctx.refine(e_new=need)
        return scale_substitute(F.reembed(rmap), t)
    k = int(step)
    out = [c.shift_pi(k * i) for i, c in enumerate(F.coeffs)]
    tail = F.tail.shifted(Fraction(k), Fraction(0)) if F.tail else None
    return TruncatedSeries(ctx, out, tail)


def poly_divmod_monic(A: TruncatedSeries, B: TruncatedSeries):
    """Long division of polynomials by a monic divisor (exact)."""
    if not (A.is_polynomial and B.is_polynomial):
        raise InvalidInput("polynomial division needs zero tails")
    ctx = A.ctx
    db = B.poly_degree()
    if not B.coeffs[db].congruent(ctx.one()):
        raise InvalidInput("divisor must be monic")
    rem = list(A.coeffs[: A.poly_degree() + 1])
    q = [ctx.zero()] * max(0, len(rem) - db)
    for j in range(len(rem) - 1, db - 1, -1):
        c = rem[j]
        if c.is_zeroish and c.sh is None:
            continue
        q[j - db] = c
        for i in range(db + 1):
            rem[j - db + i] = rem[j - db + i] - c * B.coeff(i)
    r = TruncatedSeries(ctx, rem[:db] if db else [ctx.zero()], ZERO_TAIL)
    return TruncatedSeries(ctx, q if q else [ctx.zero()], ZERO_TAIL), r


def poly_monic_normalize(F: TruncatedSeries) -> TruncatedSeries:
    d = F.poly_degree()
    return F.truncate(d).scale(F.coeffs[d].inverse())
