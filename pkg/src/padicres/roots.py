"""Digit-expansion root finding and irreducibility over Q_p.

A root of a monic polynomial (degree prime to p) is approximated as
sum omega(eps_i) p^{t_i} with strictly increasing rational exponents
and residue digits eps_i in growing finite fields. One step of the
engine: take the circle factor at the branch slope, rescale it to unit
roots, read its reduction as a polynomial S in Y = X^{v} (v the
ramification jump of the slope), pick a digit class, translate, repeat.

For root finding every (slope, digit class) is a branch; the classes
are the irreducible factors of S(Y^v) over the current residue field,
and each branch stands for a whole packet of conjugate roots. For the
irreducibility test the same walk must instead stay homogeneous: more
than one continuation slope, or an S that is not the power of a single
irreducible, certifies reducibility; a single orbit certifies
irreducibility. The number of translation steps is bounded by
n * v_p(Res(P, P')).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InvalidInput, NotApplicable, NotSquareFree,
                     PrecisionExhausted)
from .newton import characteristic_sequence, circle_polynomial
from .padic import PadicContext, PadicElem
from .resultant import resultant_poly
from .series import TruncatedSeries, ZERO_TAIL, poly_divmod_monic

INF = math.inf


def star_map(x: PadicElem):
    """x -> (eps, t): the leading Teichmuller digit and the valuation,
    so that v(x - omega(eps) p^t) > t."""
    if x.is_zeroish:
        raise PrecisionExhausted("star map of a zeroish element")
    t = x.valuation()
    return x.residue(), t


def _reduced_slope_poly(C: TruncatedSeries, t: Fraction):
    """S(Y) with S(Y) read from the unit rescaling of the circle factor
    C at slope t: Y stands for X^v, v the ramification jump."""
    ctx = C.ctx
    d = C.poly_degree()
    v = (t * ctx.e).denominator
    if d % v:
        raise InvalidInput("slope denominator does not divide the circle degree")
    ff = ctx.ff
    out = []
    for i in range(d // v + 1):
        j = i * v
        shift = t * ctx.e * (j - d)
        c = C.coeff(j).shift_pi(int(shift))
        if c.min_valuation_pi() < 0:
            raise InvalidInput("scaled coefficient left the integers")
        if c.is_zeroish or c.valuation_pi() > 0:
            out.append(ff.zero)
        else:
            out.append(c.residue())
    return ff.poly_strip(out), v


def _digit_classes(ctx: PadicContext, S, v: int):
    """Irreducible factors of S(Y^v) over the residue field, one per
    conjugacy class of digits, ordered so that classes with a root in
    the residue field come first by root index (the fixed ordering the
    default chooser follows)."""
    ff = ctx.ff
    inflated = [ff.zero] * (v * (len(S) - 1) + 1)
    for i, c in enumerate(S):
        inflated[i * v] = c
    classes = [w for w, _ in ff.berlekamp_factor(ff.poly_strip(inflated))]

    def key(w):
        if ff.poly_deg(w) == 1:
            return (0, ff.to_index(ff.neg(w[0])))
        return (1, ff.poly_deg(w), tuple(ff.to_index(c) for c in w))

    return sorted(classes, key=key)


def _find_root_in(ff2, poly_over_ff2):
    for cand in ff2.elements():
        if ff2.poly_eval(poly_over_ff2, cand) == ff2.zero:
            return cand
    raise InvalidInput("no root of the digit class in the refined field")


@dataclass
class ExpansionState:
    """One branch of the digit walk."""

    ctx: PadicContext
    base_poly: TruncatedSeries  # original P transported to ctx
    current: TruncatedSeries  # the live circle-translate
    prefix: PadicElem
    t_prev: Fraction
    terms: list = field(default_factory=list)  # [(t, eps in ctx.ff)]
    mult: int = 1

    def refine(self, f_mult: int, e_new: int) -> "ExpansionState":
        rmap = self.ctx.refine(f_new=self.ctx.f * f_mult, e_new=e_new)
        emb = rmap.embed_ff
        return ExpansionState(
            rmap.ctx,
            self.base_poly.reembed(rmap),
            self.current.reembed(rmap),
            rmap.embed(self.prefix),
            self.t_prev,
            [(t, emb(c)) for t, c in self.terms],
            self.mult,
        )


@dataclass
class DigitExpansion:
    """A root approximation sum omega(eps_i) p^{t_i}."""

    ctx: PadicContext  # final refined context; residues live in ctx.ff
    terms: list  # [(Fraction t, residue tuple)]
    terminated: bool
    achieved: Fraction | float  # certified lower bound on v_p(P(root))
    multiplicity: int = 1
    residual_degree: int = 1
    unsupported: str | None = None

    def reconstruct(self) -> PadicElem:
        acc = self.ctx.zero(exact=True)
        for t, eps in self.terms:
            acc = acc + self.ctx.teichmuller(eps).scale_p(t)
        return acc

    def exponent_denominators(self):
        return [t.denominator for t, _ in self.terms]


@dataclass
class ExpandConfig:
    max_terms: int = 24
    target_precision: Fraction = Fraction(20)
    max_branches: int = 64


def _achieved(state: ExpansionState) -> Fraction | float:
    val = state.base_poly.eval(state.prefix)
    if val.is_zeroish:
        lo = val.min_valuation_pi()
        return INF if lo is INF else Fraction(lo, state.ctx.e)
    return val.valuation()


def _absorb_linear(state: ExpansionState, cfg: ExpandConfig) -> DigitExpansion:
    """The live factor is linear: its root is exact, so the rest of the
    expansion is plain digit reading."""
    residual = -state.current.coeff(0)
    while len(state.terms) < cfg.max_terms:
        if residual.is_zeroish:
            break
        eps, t = star_map(residual)
        state.terms.append((t, eps))
        omega_term = state.ctx.teichmuller(eps).scale_p(t)
        state.prefix = state.prefix + omega_term
        residual = residual - omega_term
        if not residual.is_zeroish and residual.valuation() >= cfg.target_precision:
            ach = _achieved(state)
            if ach >= cfg.target_precision:
                break
    return DigitExpansion(state.ctx, state.terms, True, _achieved(state),
                          state.mult, 1)


def _branch_step(state: ExpansionState, slope: Fraction, klass,
                 v: int) -> ExpansionState:
    """Advance one digit along the chosen slope and digit class."""
    ctx = state.ctx
    e_new = _lcm(ctx.e, slope.denominator)
    if e_new % ctx.p == 0:
        raise NotApplicable(f"slope {slope} needs wild ramification")
    st = state
    fdeg = ctx.ff.poly_deg(klass)
    if fdeg > 1 or e_new != ctx.e:
        st = state.refine(fdeg if fdeg > 1 else 1, e_new)
        if fdeg > 1:
            emb = ctx.ff.embedding(st.ctx.ff)
            klass = [emb(c) for c in klass]
    eps = _find_root_in(st.ctx.ff, klass)
    C = circle_polynomial(st.current, slope)
    delta = st.ctx.teichmuller(eps).scale_p(slope)
    nxt = C.translate(delta)
    st.terms.append((slope, eps))
    return ExpansionState(st.ctx, st.base_poly, nxt, st.prefix + delta, slope,
                          st.terms, st.mult * max(fdeg, 1))


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _expand_branches(state: ExpansionState, cfg: ExpandConfig, chooser,
                     collect_all: bool):
    """Depth-first walk of the digit tree from one state. With a chooser
    only that branch is followed; otherwise all branches are collected."""
    out = []
    stack = [state]
    while stack:
        st = stack.pop()
        if len(out) >= cfg.max_branches:
            break
        c0 = st.current.coeff(0)
        if c0.is_exact_zero or (c0.is_zeroish and _achieved(st) >= cfg.target_precision):
            out.append(DigitExpansion(st.ctx, st.terms, True, _achieved(st),
                                      st.mult, st.current.poly_degree()))
            continue
        if len(st.terms) >= cfg.max_terms or (
                st.terms and _achieved(st) >= cfg.target_precision):
            out.append(DigitExpansion(st.ctx, st.terms, False, _achieved(st),
                                      st.mult, st.current.poly_degree()))
            continue
        if st.current.poly_degree() == 1:
            out.append(_absorb_linear(st, cfg))
            continue
        cs = characteristic_sequence(st.current)
        conts = [s for s in cs.slopes if s > st.t_prev]
        if not conts:
            out.append(DigitExpansion(st.ctx, st.terms, False, _achieved(st),
                                      st.mult, st.current.poly_degree(),
                                      unsupported="no continuation slope"))
            continue
        options = []
        for slope in sorted(conts):
            v = (slope * st.ctx.e).denominator
            if slope.denominator % st.ctx.p == 0:
                options.append((slope, None, v))
                continue
            C = circle_polynomial(st.current, slope)
            S, v = _reduced_slope_poly(C, slope)
            for klass in _digit_classes(st.ctx, S, v):
                options.append((slope, klass, v))
        if chooser is not None:
            options = [chooser(options)]
        elif not collect_all:
            options = options[:1]
        for slope, klass, v in reversed(options):
            if klass is None:
                out.append(DigitExpansion(st.ctx, st.terms, False, _achieved(st),
                                          st.mult, st.current.poly_degree(),
                                          unsupported=f"wild slope {slope}"))
                continue
            stack.append(_branch_step(
                ExpansionState(st.ctx, st.base_poly, st.current, st.prefix,
                               st.t_prev, list(st.terms), st.mult),
                slope, klass, v))
    return out


def digit_expand(P: TruncatedSeries, config: ExpandConfig | None = None,
                 chooser=None) -> DigitExpansion:
    """Follow one root branch of a monic squarefree polynomial with
    p not dividing its degree; branches are Galois conjugate, so the
    default chooser (first class on the smallest slope) loses nothing."""
    cfg = config or ExpandConfig()
    _expand_preconditions(P)
    ctx = P.ctx
    state = ExpansionState(ctx, P, P, ctx.zero(exact=True), Fraction(-1))
    res = _expand_branches(state, cfg, chooser, collect_all=False)
    return res[0]


def _expand_preconditions(P: TruncatedSeries):
    """Monic and squarefree. The classical degree hypothesis (p not
    dividing deg P) only matters where a ramification jump would be
    wild; that is checked lazily at each slope, so unramified cases
    with p dividing the degree (cyclotomic-type) still run."""
    ctx = P.ctx
    n = P.poly_degree()
    if n < 1 or not P.coeffs[n].congruent(ctx.one()):
        raise InvalidInput("need a monic polynomial of degree >= 1")
    if n == 1:
        return
    r = resultant_poly(P, P.derivative())
    if r.is_zeroish:
        g = padic_poly_gcd(P, P.derivative())
        raise NotSquareFree("repeated factor detected by the resultant", g)


def _monic_strip(F: TruncatedSeries):
    """Monic rescale after dropping zeroish leading coefficients; None
    when the whole polynomial cancels at the working precision."""
    ctx = F.ctx
    for d in range(F.degree, -1, -1):
        c = F.coeffs[d]
        if not c.is_zeroish:
            body = TruncatedSeries(ctx, F.coeffs[: d + 1], ZERO_TAIL)
            return body.scale(c.inverse())
    return None


def padic_poly_gcd(A: TruncatedSeries, B: TruncatedSeries) -> TruncatedSeries:
    """Monic gcd by the Euclidean algorithm with valuation-normalized
    leading coefficients (desk-scale; precision-aware)."""
    ctx = A.ctx
    a = _monic_strip(A)
    b = _monic_strip(B)
    if a is None:
        return b if b is not None else TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    while b is not None and b.poly_degree() > 0:
        _, r = poly_divmod_monic(a, b)
        a, b = b, _monic_strip(TruncatedSeries(ctx, r.coeffs, ZERO_TAIL))
    if b is None:
        return a
    return TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)


@dataclass
class RootReport:
    expansions: list  # DigitExpansion
    zero_root_multiplicity: int
    unsupported: list  # descriptions of skipped factors


def root_find(P: TruncatedSeries, config: ExpandConfig | None = None) -> RootReport:
    """All root branches of a monic polynomial: split by Newton slopes,
    squarefree-reduce each circle factor, then expand every digit
    class. Factors with p dividing the degree are reported unsupported,
    never dropped."""
    cfg = config or ExpandConfig()
    ctx = P.ctx
    n = P.poly_degree()
    if n < 1 or not P.coeffs[n].congruent(ctx.one()):
        raise InvalidInput("need a monic polynomial of degree >= 1")
    cs = characteristic_sequence(P)
    zero_mult = cs.zero_mult
    expansions = []
    unsupported = []
    for t in cs.slopes:
        if t < 0:
            unsupported.append(f"slope {t}: roots outside the closed disc")
            continue
        C = circle_polynomial(P, t)
        g = padic_poly_gcd(C, C.derivative())
        if g.poly_degree() > 0:
            C, _ = poly_divmod_monic(C, g)
            d = C.poly_degree()
            C = C.truncate(d).scale(C.coeffs[d].inverse())
        piece = C
        d = piece.poly_degree()
        if d == 0:
            continue
        if t.denominator % ctx.p == 0:
            unsupported.append(f"slope {t}: wild ramification")
            continue
        state = ExpansionState(ctx, P, piece, ctx.zero(exact=True), Fraction(-1))
        for exp in _expand_branches(state, cfg, None, collect_all=True):
            if exp.unsupported:
                unsupported.append(exp.unsupported)
            else:
                expansions.append(exp)
    return RootReport(expansions, zero_mult, unsupported)


# -- irreducibility --------------------------------------------------------


@dataclass
class IrredVerdict:
    verdict: str  # "Irreducible" | "Reducible" | "PowerOfIrreducible"
    power: int | None
    certificate: str
    steps: int
    step_bound: int

    @property
    def reducible(self) -> bool:
        return self.verdict != "Irreducible"


def newton_screen(P: TruncatedSeries) -> str:
    """Polygon screen: several slopes force reducibility, a
    single slope with v_pi(a_0) prime to the degree forces
    irreducibility."""
    n = P.poly_degree()
    cs = characteristic_sequence(P)
    if cs.zero_mult:
        return "Reducible" if n > 1 else "Irreducible"
    if len(cs.slopes) > 1:
        return "Reducible"
    v0 = int(cs.breaks[0][1] * P.ctx.e)
    if math.gcd(v0, n) == 1:
        return "Irreducible"
    return "Inconclusive"


def irreducible_test(P: TruncatedSeries,
                     config: ExpandConfig | None = None) -> IrredVerdict:
    """Digit-walk irreducibility test for monic squarefree P over Q_p
    with p not dividing deg P."""
    cfg = config or ExpandConfig()
    ctx = P.ctx
    n = P.poly_degree()
    if n < 1 or not P.coeffs[n].congruent(ctx.one()):
        raise InvalidInput("need a monic polynomial")
    if n == 1:
        return IrredVerdict("Irreducible", None, "linear", 0, 0)
    r = resultant_poly(P, P.derivative())
    if r.is_zeroish:
        g = padic_poly_gcd(P, P.derivative())
        raise NotSquareFree("input has a repeated factor", g)
    step_bound = n * int(math.ceil(r.valuation()))
    screen = newton_screen(P)
    if screen != "Inconclusive":
        return IrredVerdict(screen, None, "newton_screen", 0, step_bound)
    state = ExpansionState(ctx, P, P, ctx.zero(exact=True), Fraction(-1))
    steps = 0
    first_stage = True
    while True:
        if state.current.coeff(0).is_zeroish:
            # the prefix is a root to the working precision
            if state.current.poly_degree() == 1:
                return IrredVerdict("Irreducible", None, "expansion_complete",
                                    steps, step_bound)
            return IrredVerdict("Reducible", None, "expansion_separation",
                                steps, step_bound)
        cs = characteristic_sequence(state.current)
        conts = [s for s in cs.slopes if s > state.t_prev]
        if len(conts) != 1:
            cert = "newton_screen" if first_stage else "expansion_separation"
            return IrredVerdict("Reducible", None, cert, steps, step_bound)
        t = conts[0]
        v = (t * state.ctx.e).denominator
        if v % state.ctx.p == 0:
            raise NotApplicable(f"slope {t} needs wild ramification")
        C = circle_polynomial(state.current, t)
        S, v = _reduced_slope_poly(C, t)
        factors = state.ctx.ff.berlekamp_factor(S)
        if len(factors) > 1:
            cert = ("modp_not_power" if first_stage and t == 0
                    else "expansion_separation")
            return IrredVerdict("Reducible", None, cert, steps, step_bound)
        W, mu = factors[0]
        if mu == 1:
            cert = ("modp_irreducible" if first_stage and t == 0
                    else "expansion_complete")
            return IrredVerdict("Irreducible", None, cert, steps, step_bound)
        klass = _digit_classes(state.ctx, W, v)[0]
        state = _branch_step(state, t, klass, v)
        steps += 1
        first_stage = False
        if steps > step_bound:
            raise RuntimeError(
                "step bound exceeded on squarefree input (contract violation)")
