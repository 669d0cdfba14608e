"""Resultants of p-adic power series via distinguished polynomials.

The resultant on a disc is Res(F_n P, G_N Q) for the distinguished
polynomials P, Q of the two series, evaluated as a Sylvester
determinant. O_K is a discrete valuation ring, so both the determinant
and the Smith normal form reduce to minimal-valuation pivoting: every
elimination quotient stays integral and the pivots automatically form
the divisibility chain.

Zero detection is precision-relative throughout: a determinant that
cancels to the working precision is reported as "valuation >= bound",
never as an exact zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (CommonRoots, InvalidInput, NotApplicable,
                     PrecisionExhausted)
from .padic import PadicElem
from .series import TruncatedSeries, distinguished, scale_substitute

INF = math.inf


def sylvester_matrix(A: TruncatedSeries, B: TruncatedSeries):
    """Sylvester matrix in the ascending layout: row i of the first
    block is the coefficient vector of X^i A in the basis 1..X^{n+m-1},
    likewise for B. Polynomials only."""
    if not (A.is_polynomial and B.is_polynomial):
        raise InvalidInput("Sylvester matrix needs polynomials")
    A.ctx.check_same(B.ctx)
    ctx = A.ctx
    n, m = A.poly_degree(), B.poly_degree()
    if n < 1 and m < 1:
        raise InvalidInput("need at least one positive degree")
    size = n + m
    rows = []
    for i in range(m):
        row = [ctx.zero()] * size
        for j in range(n + 1):
            row[i + j] = A.coeff(j)
        rows.append(row)
    for i in range(n):
        row = [ctx.zero()] * size
        for j in range(m + 1):
            row[i + j] = B.coeff(j)
        rows.append(row)
    return rows


_SIGN_CACHE = {}


def _det_sign_ascending(n: int, m: int) -> int:
    """det(ascending layout) = sign * Res(A, B) with the classical
    Res(A, B) = lc(A)^m prod B(z_i). Calibrated once per shape on the
    pair (X^n, X^m + 2), whose resultant is 2^n."""
    key = (n, m)
    if key in _SIGN_CACHE:
        return _SIGN_CACHE[key]
    size = n + m
    mat = [[0] * size for _ in range(size)]
    for i in range(m):
        mat[i][i + n] = 1  # X^n
    for i in range(m, size):
        mat[i][i - m] = 2  # X^m + 2
        mat[i][i - m + m] = 1
    d = _int_det(mat)
    sign = 1 if d == 2**n else -1
    if d != 2**n and d != -(2**n):
        raise InvalidInput("sign calibration failed")
    _SIGN_CACHE[key] = sign
    return sign


def _int_det(mat):
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    sign = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            k = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= k * m[c][j]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


@dataclass
class SNFResult:
    """Invariant factors of a matrix over O_K as pi-valuations, in the
    divisibility order; the pivot elements are kept for determinant
    reconstruction. valid means every pivot had a certified valuation
    down to full rank."""

    valuations: list  # ints, nondecreasing
    pivots: list  # PadicElem
    valid: bool
    ambiguous_floor: int | None  # abs precision where pivoting stopped

    def last_valuation(self):
        if not self.valid:
            raise PrecisionExhausted(
                "invariant factors undetermined at the working precision")
        return self.valuations[-1]


def smith_normal_form(matrix) -> SNFResult:
    """SNF over O_K by minimal-valuation pivoting (leftmost-topmost on
    ties); elementary operations are unimodular over the local ring."""
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InvalidInput("matrix must be square")
    vals = []
    pivots = []
    floor = None
    for step in range(n):
        best = None
        for i in range(step, n):
            for j in range(step, n):
                x = m[i][j]
                if x.is_zeroish:
                    continue
                v = x.valuation_pi()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            lows = [m[i][j].min_valuation_pi() for i in range(step, n)
                    for j in range(step, n)]
            floor = min(lows) if lows else None
            break
        v, bi, bj = best
        if bi != step:
            m[step], m[bi] = m[bi], m[step]
        if bj != step:
            for row in m:
                row[step], row[bj] = row[bj], row[step]
        pivot = m[step][step]
        inv_p = pivot.inverse()
        for i in range(step + 1, n):
            x = m[i][step]
            if x.is_zeroish and x.sh is None:
                continue
            c = x * inv_p
            for j in range(step, n):
                m[i][j] = m[i][j] - c * m[step][j]
        for j in range(step + 1, n):
            x = m[step][j]
            if x.is_zeroish and x.sh is None:
                continue
            c = x * inv_p
            for i in range(step, n):
                m[i][j] = m[i][j] - c * m[i][step]
        vals.append(v)
        pivots.append(pivot)
    valid = len(vals) == n
    if valid:
        for a, b in zip(vals, vals[1:]):
            if b < a:
                raise InvalidInput("pivot valuations failed the chain order")
    return SNFResult(vals, pivots, valid, floor)


def det_valuation(matrix):
    """(v_pi of det, certified) where certified=False reports only a
    lower bound (cancellation beyond the working precision)."""
    snf = smith_normal_form(matrix)
    if snf.valid:
        return sum(snf.valuations), True
    done = sum(snf.valuations)
    remaining = len(matrix) - len(snf.valuations)
    if snf.ambiguous_floor is None:
        raise PrecisionExhausted("empty trailing block")
    return done + remaining * snf.ambiguous_floor, False


def det(matrix, sign: int = 1):
    """Determinant via elimination with minimal-valuation pivoting."""
    m = [list(row) for row in matrix]
    n = len(m)
    ctx = m[0][0].ctx
    acc = ctx.one()
    if sign < 0:
        acc = -acc
    for step in range(n):
        best = None
        for i in range(step, n):
            x = m[i][step]
            if x.is_zeroish:
                continue
            v = x.valuation_pi()
            if best is None or v < best[0]:
                best = (v, i)
        if best is None:
            # remaining block is ambiguous: det only bounded below
            bound = acc.min_valuation_pi()
            for i in range(step, n):
                bound += min(m[i][j].min_valuation_pi() for j in range(step, n))
            return PadicElem(ctx, bound, None, 0)
        _, bi = best
        if bi != step:
            m[step], m[bi] = m[bi], m[step]
            acc = -acc
        pivot = m[step][step]
        inv_p = pivot.inverse()
        acc = acc * pivot
        for i in range(step + 1, n):
            x = m[i][step]
            if x.is_zeroish and x.sh is None:
                continue
            c = x * inv_p
            for j in range(step + 1, n):
                m[i][j] = m[i][j] - c * m[step][j]
    return acc


def resultant_poly(A: TruncatedSeries, B: TruncatedSeries):
    """Classical resultant of two polynomials as a context element:
    Res(A, B) = lc(A)^{deg B} prod over roots z of A of B(z)."""
    n, m = A.poly_degree(), B.poly_degree()
    if n == 0:
        return A.coeff(0) ** m
    if m == 0:
        return B.coeff(0) ** n
    return det(sylvester_matrix(A, B), _det_sign_ascending(n, m))


def _prepared_pair(F: TruncatedSeries, G: TruncatedSeries, disc: str):
    dF = distinguished(F, disc)
    dG = distinguished(G, disc)
    A = dF.poly.scale(dF.lead)
    B = dG.poly.scale(dG.lead)
    return A, B, dF, dG


def res_disc(F: TruncatedSeries, G: TruncatedSeries, disc: str):
    """Res on the open or closed unit disc: Res(F_n P, G_N Q) as an
    element; common roots show up as an ambiguous-zero valuation."""
    F.ctx.check_same(G.ctx)
    A, B, dF, dG = _prepared_pair(F, G, disc)
    if dF.degree == 0 and dG.degree == 0:
        return F.ctx.one()
    if dF.degree == 0:
        return dF.lead ** dG.degree
    if dG.degree == 0:
        return dG.lead ** dF.degree
    return resultant_poly(A, B)


def quotient_cardinality_exponent(F, G, disc: str) -> int:
    """Exponent of p in |O_K[[X]]-quotient by (F, G)| = f * v_pi(Res)."""
    r = res_disc(F, G, disc)
    if r.is_zeroish:
        raise CommonRoots(
            f"resultant valuation only bounded below by {r.min_valuation_pi()}")
    return F.ctx.f * r.valuation_pi()


def sylvester_of_pair(F, G, disc: str):
    """Sylvester matrix of the monic distinguished polynomials: the
    row lattice whose quotient carries the ideal-quotient count."""
    dF = distinguished(F, disc)
    dG = distinguished(G, disc)
    if dF.degree < 1 and dG.degree < 1:
        raise NotApplicable("both distinguished polynomials are constant")
    return sylvester_matrix(dF.poly, dG.poly)


def s_upper_bound(F, G, disc: str) -> int:
    """v_pi of the last invariant factor of the Sylvester lattice: an
    upper bound for the pi-valuation max of min(v F, v G)."""
    snf = smith_normal_form(sylvester_of_pair(F, G, disc))
    return snf.last_valuation()


@dataclass
class CommonRootVerdict:
    common: bool
    valuation_pi: int | None  # certified v_pi(Res) when no common root
    floor_pi: int | None  # lower bound when ambiguous

    @property
    def verdict(self) -> str:
        return "CommonRoot" if self.common else "NoCommonRoot"


def common_root_test(F, G, t, disc: str) -> CommonRootVerdict:
    """Scale both series onto the disc of radius p^{-t} and test the
    resultant there; ambiguous-zero valuation at the working precision
    means a common root (to that precision)."""
    t = Fraction(t)
    Fs = scale_substitute(F, t)
    Gs = scale_substitute(G, t)
    if not Fs.ctx.same(Gs.ctx):
        fine = Fs.ctx if Fs.ctx.e >= Gs.ctx.e else Gs.ctx
        if Fs.ctx.e < fine.e:
            Fs = Fs.reembed(Fs.ctx.refine(e_new=fine.e))
        if Gs.ctx.e < fine.e:
            Gs = Gs.reembed(Gs.ctx.refine(e_new=fine.e))
    nF = Fs.wideg()
    nG = Gs.wideg()
    Fu = Fs.scale(Fs.coeffs[nF].inverse())
    Gu = Gs.scale(Gs.coeffs[nG].inverse())
    r = res_disc(Fu, Gu, disc)
    if r.is_zeroish:
        return CommonRootVerdict(True, None, r.min_valuation_pi())
    return CommonRootVerdict(False, r.valuation_pi(), None)
