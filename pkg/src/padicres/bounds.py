"""Counting machinery and bounds for phi(x) = min(v(F(x)), v(G(x))).

The counting functions alpha, beta, B (and their primed open-disc
variants) drive everything: alpha(j) is the guaranteed pi-valuation of
the falling factorial (X - d_0)...(X - d_{j-1}) over O_K, beta(m) the
first j where it reaches m, B the partial sums. Cardinalities of
polynomial-function rings, the resultant-gap bounds, the minimal-degree
bound and the sharpness construction all come straight from these.

All phi values are tracked in pi units internally (max phi = e times
the p-adic max) with Fractions only at the reporting boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CommonRoots, InvalidInput, NotApplicable, PrecisionExhausted
from .newton import characteristic_sequence, circle_polynomial
from .padic import PadicContext, PadicElem
from .resultant import res_disc, resultant_poly, s_upper_bound
from .series import TruncatedSeries, ZERO_TAIL

INF = math.inf


class CountingProfile:
    """Memoized alpha/beta/B tables for a residue field size p^f.

    variant "closed" is the O_K family (alpha), "open" the m_K family
    (alpha' = j + alpha)."""

    def __init__(self, p: int, f: int = 1, e: int = 1):
        self.p = p
        self.f = f
        self.e = e
        self.q = p**f
        self._beta_memo = {}

    def alpha(self, j: int, variant: str = "closed") -> int:
        if j < 0:
            raise InvalidInput("alpha needs a nonnegative argument")
        total = 0
        q = self.q
        power = q
        while power <= j:
            total += j // power
            power *= q
        if variant == "open":
            total += j
        return total

    def beta(self, m: int, variant: str = "closed") -> int:
        if m <= 0:
            return 0
        key = (m, variant)
        if key in self._beta_memo:
            return self._beta_memo[key]
        j = self._beta_memo.get((m - 1, variant), 0)
        while self.alpha(j, variant) < m:
            j += 1
        self._beta_memo[key] = j
        return j

    def B(self, s: int, variant: str = "closed") -> int:
        return sum(self.beta(m, variant) for m in range(1, s + 1))

    def table(self, which: str, upto: int):
        fn = {"alpha": lambda j: self.alpha(j),
              "alpha_prime": lambda j: self.alpha(j, "open"),
              "beta": lambda m: self.beta(m),
              "beta_prime": lambda m: self.beta(m, "open"),
              "B": lambda s: self.B(s),
              "B_prime": lambda s: self.B(s, "open")}[which]
        return [fn(k) for k in range(upto + 1)]


def alpha_beta_B(profile: CountingProfile, which: str, arg: int) -> int:
    """Dispatcher for the six counting functions."""
    table = {"alpha": ("alpha", "closed"), "beta": ("beta", "closed"),
             "B": ("B", "closed"), "alpha_prime": ("alpha", "open"),
             "beta_prime": ("beta", "open"), "B_prime": ("B", "open")}
    if which not in table:
        raise InvalidInput(f"unknown counting function {which!r}")
    name, variant = table[which]
    return getattr(profile, name)(arg, variant)


def factorial_basis_valuation(j: int, x: PadicElem, ctx: PadicContext) -> int:
    """v_pi of (x - d_0)(x - d_1)...(x - d_{j-1}); always >= alpha(j)."""
    acc = ctx.one()
    for i in range(j):
        acc = acc * (x - ctx.enumerate_dj(i))
    if acc.is_exact_zero:
        return INF
    if acc.is_zeroish:
        raise PrecisionExhausted("factorial product is ambiguous at this precision")
    v = acc.valuation_pi()
    prof = CountingProfile(ctx.p, ctx.f, ctx.e)
    if v < prof.alpha(j):
        raise InvalidInput("factorial valuation fell below alpha(j)")
    return v


def factorial_basis_poly(ctx: PadicContext, j: int) -> TruncatedSeries:
    """X^{[j]} = (X - d_0)...(X - d_{j-1}) as a polynomial."""
    F = TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    for i in range(j):
        F = F * TruncatedSeries(ctx, [-ctx.enumerate_dj(i), ctx.one()], ZERO_TAIL)
    return F


def canonical_form_Rn(P: TruncatedSeries, n: int):
    """The unique table {(i, j): digit index} with
    P = sum b_ij pi^i X^{[j]} over i + alpha(j) < n, as a function on
    O_K/(pi^n).

    Computed by triangular interpolation at the enumeration points d_j:
    the leading coefficient of the residual at d_j is divided by
    X^{[j]}(d_j) exactly.
    """
    ctx = P.ctx
    prof = CountingProfile(ctx.p, ctx.f, ctx.e)
    table = {}
    residual = P
    j = 0
    while j < ctx.ff.q**n and prof.alpha(j) < n:
        dj = ctx.enumerate_dj(j)
        val = residual.eval(dj)
        aj = prof.alpha(j)
        if not val.is_zeroish:
            denom = ctx.one()
            for i in range(j):
                denom = denom * (dj - ctx.enumerate_dj(i))
            ej = val / denom
            if ej.min_valuation_pi() < 0:
                raise InvalidInput("interpolation left the integers")
            digits = ej.digits(max(0, n - aj))
            for i, b in enumerate(digits):
                if b and i + aj < n:
                    table[(i, j)] = b
            # subtract the recorded digits of e_j times X^{[j]}
            keep = ctx.from_digit_indices(digits) if any(digits) else ctx.zero()
            if not keep.is_exact_zero:
                residual = residual - factorial_basis_poly(ctx, j).scale(keep)
        j += 1
    return table


def canonical_form_eval(ctx, table, x: PadicElem) -> PadicElem:
    """Evaluate a canonical table at a point."""
    acc = ctx.zero()
    by_j = {}
    for (i, j), b in table.items():
        by_j.setdefault(j, []).append((i, b))
    for j, pairs in sorted(by_j.items()):
        basis = ctx.one()
        for i in range(j):
            basis = basis * (x - ctx.enumerate_dj(i))
        coeff = ctx.zero()
        for i, b in pairs:
            coeff = coeff + ctx.representative(b).shift_pi(i)
        acc = acc + coeff * basis
    return acc


def ring_cardinality_exponent(kind: str, profile: CountingProfile, **params) -> int:
    """Exponent of p in the cardinality of the polynomial-function
    rings: R_n and R'_n need n, the two-level rings need S and s."""
    if kind in ("R_n", "R_prime_n"):
        n = params["n"]
        variant = "closed" if kind == "R_n" else "open"
        return profile.f * profile.B(n, variant)
    if kind in ("R_S_s", "R_prime_S_s"):
        S, s = params["S"], params["s"]
        if s > S or s < 0:
            raise InvalidInput("need 0 <= s <= S")
        variant = "closed" if kind == "R_S_s" else "open"
        return profile.f * (S - s + profile.B(s, variant))
    if kind == "kernel":
        n = params["n"]
        variant = params.get("variant", "closed")
        return profile.f * profile.beta(n, variant)
    raise InvalidInput(f"unknown ring kind {kind!r}")


def bound_gap(profile: CountingProfile, s: int, t: int, variant: str = "closed") -> int:
    """B(s+t) - 2B(t) - s (primed for the open disc): a lower bound on
    v_pi(Res) minus the max of phi."""
    if s < 0 or t < 0:
        raise InvalidInput("need s, t >= 0")
    v = "closed" if variant == "closed" else "open"
    return profile.B(s + t, v) - 2 * profile.B(t, v) - s


def bound_small_s(profile: CountingProfile, s: int, variant: str = "closed") -> int:
    """The small-s sharpening: p^f s^2 - s (closed) or s(s-1) (open),
    valid for s <= p^f - 1."""
    if s > profile.q - 1:
        raise NotApplicable(f"small-s bound needs s <= p^f - 1 = {profile.q - 1}")
    if variant == "closed":
        return profile.q * s * s - s
    return s * (s - 1)


def min_degree_bound(s: int, profile: CountingProfile) -> int:
    """Minimal degree of a monic polynomial with pi^s | P(x) for all
    x in O_K; the witness is the factorial polynomial of that degree."""
    if s < 1:
        raise InvalidInput("need s >= 1")
    return profile.beta(s)


def construction_31(s: int, ctx: PadicContext):
    """The sharpness pair: F = prod_{j < beta(s)} (X - d_j) and
    G = pi^s + prod_i (X - c_i)^{s+1}; phi is identically s on O_K and
    v_pi of the closed resultant is s*beta(s)."""
    if s < 1:
        raise InvalidInput("need s >= 1")
    prof = CountingProfile(ctx.p, ctx.f, ctx.e)
    F = factorial_basis_poly(ctx, prof.beta(s))
    G = TruncatedSeries(ctx, [ctx.one()], ZERO_TAIL)
    for i in range(ctx.ff.q):
        lin = TruncatedSeries(ctx, [-ctx.representative(i), ctx.one()], ZERO_TAIL)
        for _ in range(s + 1):
            G = G * lin
    G = G + TruncatedSeries(ctx, [ctx.pi_power(s)], ZERO_TAIL)
    return F, G


# -- the unbounded-phi construction ----------------------------------------


class _EisensteinQuotient:
    """Exact model of Q_p[X]/(X^m + p) with Fraction coefficients; the
    generator is a root of the Eisenstein polynomial X^m + p, so
    valuations read off coefficientwise as min(v_p(a_i) + i/m)."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m

    def mul(self, a, b):
        m, p = self.m, self.p
        out = [Fraction(0)] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        for k in range(2 * m - 2, m - 1, -1):
            c = out[k]
            if c:
                out[k - m] += -p * c
                out[k] = Fraction(0)
        return out[:m]

    def vp(self, a):
        best = None
        for i, ai in enumerate(a):
            if ai:
                v = Fraction(_frac_vp(ai, self.p)) + Fraction(i, self.m)
                if best is None or v < best:
                    best = v
        return best  # None means exactly zero

    def eval_poly(self, coeffs):
        """Evaluate a Fraction-coefficient polynomial at the generator."""
        acc = [Fraction(0)] * self.m
        gen = [Fraction(0), Fraction(1)] + [Fraction(0)] * (self.m - 2)
        for c in reversed(coeffs):
            acc = self.mul(acc, gen)
            acc[0] += c
        return acc


def _frac_vp(x: Fraction, p: int) -> int:
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass
class UnboundedPhiStage:
    """Stage n of the unbounded-phi pair: the partial products, the
    witness (a root of X^{2^n} + p), and phi there, verified by exact
    evaluation in the Eisenstein quotient model."""

    n: int
    p: int
    f_n: TruncatedSeries
    g_n: TruncatedSeries
    f_fracs: list
    g_fracs: list
    witness_modulus_degree: int
    phi_at_witness: Fraction
    expected_phi: Fraction


def construction_51(n: int, p: int, ctx: PadicContext | None = None) -> UnboundedPhiStage:
    """Partial products of the unbounded-phi construction:
    f_n picks up the factors p^{-1}(X^{2^i} + p) and g_n the factors
    (p + p^{2i})^{-1}(X^{2^i} + p + p^{2i}) for i = 1..n. The witness is
    a root of the last f-factor, where f_n vanishes and
    v_p(g_n) = -n + sum_{i<n} 2^{-i} + 2n, strictly increasing with n.
    """
    if n < 1:
        raise InvalidInput("need n >= 1")
    if p == 2:
        raise NotApplicable("the witness tower is wild at p = 2")
    f_fracs = [Fraction(1)]
    g_fracs = [Fraction(1)]

    def polymul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return out

    for i in range(1, n + 1):
        fac_f = [Fraction(p), *([Fraction(0)] * (2**i - 1)), Fraction(1)]
        fac_f = [c / p for c in fac_f]
        f_fracs = polymul(f_fracs, fac_f)
        den = Fraction(p + p**(2 * i))
        fac_g = [den, *([Fraction(0)] * (2**i - 1)), Fraction(1)]
        fac_g = [c / den for c in fac_g]
        g_fracs = polymul(g_fracs, fac_g)
    model = _EisensteinQuotient(p, 2**n)
    fx = model.eval_poly(f_fracs)
    if model.vp(fx) is not None:
        raise InvalidInput("witness failed to kill the f-factor")
    gx = model.eval_poly(g_fracs)
    phi = model.vp(gx)
    expected = Fraction(-n) + sum(Fraction(1, 2**i) for i in range(1, n)) + 2 * n
    base = ctx if ctx is not None else PadicContext(p, N=30)
    f_series = TruncatedSeries.from_fractions(base, f_fracs)
    g_series = TruncatedSeries.from_fractions(base, g_fracs)
    return UnboundedPhiStage(n, p, f_series, g_series, f_fracs, g_fracs,
                             2**n, phi, expected)


# -- phi evaluation and reports -------------------------------------------


def phi_eval(F: TruncatedSeries, G: TruncatedSeries, x: PadicElem):
    """min(v_p F(x), v_p G(x)) as a Fraction (INF at a shared root)."""
    a = F.eval(x)
    b = G.eval(x)
    va = a.valuation() if not a.is_zeroish else None
    vb = b.valuation() if not b.is_zeroish else None
    if va is None and vb is None:
        lo = min(a.min_valuation_pi(), b.min_valuation_pi())
        raise PrecisionExhausted(f"phi only bounded below by {lo} (pi units)")
    e = F.ctx.e
    if va is None:
        lo = a.min_valuation_pi()
        return vb if lo is INF or vb <= Fraction(lo, e) else _phi_fail(a)
    if vb is None:
        lo = b.min_valuation_pi()
        return va if lo is INF or va <= Fraction(lo, e) else _phi_fail(b)
    return min(va, vb)


def _phi_fail(elem):
    raise PrecisionExhausted(
        f"phi needs the ambiguous branch beyond pi^{elem.min_valuation_pi()}")


@dataclass
class SandwichBounds:
    """Bracket for max phi on the circle of a shared slope
    (p-adic units)."""

    slope: Fraction
    a: Fraction
    b: Fraction
    r_valuation: Fraction
    lower: Fraction
    upper: Fraction
    upper_sharp: Fraction


def circle_sandwich(F: TruncatedSeries, G: TruncatedSeries,
                    n_idx: int, m_idx: int) -> SandwichBounds:
    """Bracket max phi over the circle where slope n_idx of F equals
    slope m_idx of G."""
    csF = characteristic_sequence(F)
    csG = characteristic_sequence(G)
    if csF.slopes[n_idx] != csG.slopes[m_idx]:
        raise InvalidInput("the chosen slopes do not match")
    t = csF.slopes[n_idx]
    e = F.ctx.e
    kn, v_kn = csF.breaks[n_idx + 1]
    kp = csF.breaks[n_idx][0]
    lm, v_lm = csG.breaks[m_idx + 1]
    lp = csG.breaks[m_idx][0]
    termF = v_kn + kp * t
    termG = v_lm + lp * t
    a, b = min(termF, termG), max(termF, termG)
    CF = circle_polynomial(F, t)
    CG = circle_polynomial(G, t)
    r = resultant_poly(CF, CG)
    if r.is_zeroish:
        raise CommonRoots("circle polynomials share a root at this precision")
    vr = r.valuation()
    len_f = kn - kp
    len_g = lm - lp
    lower = a + vr / min(len_f, len_g)
    upper = b + vr
    dvF = int((v_kn - csF.breaks[n_idx][1]) * e)
    dvG = int((v_lm - csG.breaks[m_idx][1]) * e)
    c = max(Fraction(math.gcd(abs(dvF), len_f), len_f),
            Fraction(math.gcd(abs(dvG), len_g), len_g))
    return SandwichBounds(t, a, b, vr, lower, upper, b + c * vr)


@dataclass
class PhiReport:
    """Observed max/min of phi with every certified upper bound."""

    disc: str
    s_est: Fraction | None
    S_est: Fraction | None
    S_arg: str | None
    upper_bounds: dict
    finite: str  # "finite" | "unknown"
    finite_reason: str
    candidates: list
    samples: int


def phi_max_report(F: TruncatedSeries, G: TruncatedSeries, disc: str = "closed",
                   sample_budget: int = 64, rng=None,
                   extra_points=()) -> PhiReport:
    """Evaluate phi at the root candidate set (the maximum of phi is
    attained at a root of one of the circle polynomials; materialized
    where rational over the context) plus random samples; report the
    observed extremes against every certified bound."""
    import random as _random
    rng = rng or _random.Random(0)
    F.ctx.check_same(G.ctx)
    ctx = F.ctx
    e = ctx.e
    r = res_disc(_unit_normalized(F), _unit_normalized(G), disc)
    if r.is_zeroish:
        raise CommonRoots("pair shares a root at the working precision")
    bounds = {"resultant": r.valuation()}
    try:
        bounds["last_invariant_factor"] = Fraction(
            s_upper_bound(F, G, disc), e)
    except PrecisionExhausted:
        pass
    csF = characteristic_sequence(F)
    csG = characteristic_sequence(G)
    candidates = []
    values = []
    for x, label in list(extra_points):
        values.append((phi_eval(F, G, x), label))
        candidates.append(label)
    for cs, H, label in ((csF, F, "F"), (csG, G, "G")):
        for t in cs.slopes:
            if t < 0 or (disc == "open" and t <= 0):
                continue
            C = circle_polynomial(H, t)
            for root, lab in _rational_roots(C):
                values.append((phi_eval(F, G, root), f"{label} root at slope {t}"))
                candidates.append(f"{label}:slope {t}")
    zero = ctx.zero(exact=True)
    values.append((phi_eval(F, G, zero), "origin"))
    sampled = 0
    for _ in range(sample_budget):
        x = ctx.random_unit(rng).shift_pi(rng.randint(0 if disc == "closed" else 1, 2 * e))
        try:
            values.append((phi_eval(F, G, x), "sample"))
        except PrecisionExhausted:
            continue
        sampled += 1
    # counting-gap bounds seeded by a certified lower bound on min phi
    prof = CountingProfile(ctx.p, ctx.f, ctx.e)
    variant = "closed" if disc == "closed" else "open"
    s_lower = max(0, min(_content_pi(F), _content_pi(G)))
    vpi_r = int(r.valuation_pi())
    gap = max(bound_gap(prof, s_lower, t, variant) for t in range(0, 5))
    bounds["counting_gap"] = Fraction(vpi_r - gap, e)
    if s_lower <= prof.q - 1:
        bounds["small_s"] = Fraction(vpi_r - bound_small_s(prof, s_lower, variant), e)
    finite, reason = _finiteness(csF, csG)
    vals_only = [v for v, _ in values]
    S_est = max(vals_only) if vals_only else None
    arg = values[vals_only.index(S_est)][1] if vals_only else None
    return PhiReport(disc, min(vals_only) if vals_only else None, S_est, arg,
                     bounds, finite, reason, candidates, sampled)


def _unit_normalized(F: TruncatedSeries) -> TruncatedSeries:
    n = F.wideg()
    c = F.coeffs[n]
    if c.valuation_pi() == 0:
        return F
    return F.scale(c.inverse())


def rescaled_pair(F: TruncatedSeries, G: TruncatedSeries):
    """The rescaling route for non-unit leading Weierstrass
    coefficients: divide each series by its wideg coefficient. Returns
    (F', G', offset) with the pointwise guarantee

        phi(F, G)(x) <= offset + phi(F', G')(x),

    offset = max of the two leading coefficient valuations in v_p.
    """
    nF, nG = F.wideg(), G.wideg()
    cF, cG = F.coeffs[nF], G.coeffs[nG]
    e = F.ctx.e
    offset = Fraction(max(cF.valuation_pi(), cG.valuation_pi()), e)
    return F.scale(cF.inverse()), G.scale(cG.inverse()), offset


def _content_pi(F: TruncatedSeries) -> int:
    vals = [c.valuation_pi() for c in F.coeffs if not c.is_zeroish]
    return min(vals) if vals else 0


def _rational_roots(C: TruncatedSeries):
    """Roots of a monic polynomial living in the polynomial's own
    context: exact for degree one, first-digit refinements otherwise
    are skipped (the sandwich bounds still cover those circles)."""
    d = C.poly_degree()
    if d == 1:
        return [(-C.coeff(0), "linear")]
    return []


def _finiteness(csF, csG):
    if not (csF.complete and csG.complete):
        return "unknown", "polygon truncated: slope intersection unknown"
    shared = set(csF.slopes) & set(csG.slopes)
    return "finite", (f"finite slope intersection ({len(shared)} shared)")
