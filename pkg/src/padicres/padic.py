"""Finite-precision arithmetic in O_K for K = Q_p(zeta, p^{1/e}).

A context fixes the prime p, the residue degree f (unramified part
W = Z_p[y]/(m(y))), the tame ramification index e with pi^e = p and
p not dividing e, and the working precision N counted in pi-adic
digits.

An element is pi^shift * u with u a unit of O_K known modulo pi^rel,
stored as e slots of W-coefficient tuples:

    u = sum_{r<e} w_r pi^r,   w_r = sum_{j<f} a_{rj} y^j  (ints mod p^M_r)

Zero has two flavors: the exact zero (infinite precision) and the
ambiguous zero, which only asserts x = 0 mod pi^a for the element's
absolute precision a. Any operation that needs the valuation of an
ambiguous zero raises PrecisionExhausted instead of guessing.

Digit expansions use Teichmuller representatives (the unique
(p^f - 1)-st roots of unity plus 0), so the representative set is
multiplicative and the star map of the root-finding layer is
canonical.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ContextMismatch, InvalidInput, PrecisionExhausted
from .ffield import FField, is_prime

INF = math.inf


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of integer zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicContext:
    """Ambient data for O_K plus the low-level tower kernels."""

    __slots__ = (
        "p", "f", "e", "N", "ff", "modulus_lift", "_pp", "_mcap",
        "_wzero", "_teich_cache", "_reps",
    )

    def __init__(self, p: int, f: int = 1, e: int = 1, N: int = 30,
                 modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise InvalidInput(f"p = {p} is not prime")
        if f < 1 or e < 1 or N < 1:
            raise InvalidInput("need f >= 1, e >= 1, N >= 1")
        if e % p == 0:
            raise InvalidInput(f"wild ramification rejected: p = {p} divides e = {e}")
        self.p, self.f, self.e, self.N = p, f, e, N
        self.ff = FField(p, f, modulus)
        self.modulus_lift = tuple(int(c) for c in self.ff.modulus)
        self._mcap = (N + e - 1) // e + 2
        self._pp = [p**i for i in range(self._mcap + 1)]
        self._wzero = (0,) * f
        self._teich_cache = {}
        self._reps = None

    def __repr__(self):
        return f"PadicContext(p={self.p}, f={self.f}, e={self.e}, N={self.N})"

    def same(self, other: "PadicContext") -> bool:
        return (self.p, self.f, self.e, self.N, self.modulus_lift) == (
            other.p, other.f, other.e, other.N, other.modulus_lift)

    def check_same(self, other: "PadicContext"):
        if self is other or self.same(other):
            return
        raise ContextMismatch(f"contexts differ: {self} vs {other}")

    # -- W = Z_p[y]/(m) kernels, coefficients as ints mod p^M ------------

    def _w_add(self, a, b, mod):
        return tuple((x + y) % mod for x, y in zip(a, b))

    def _w_sub(self, a, b, mod):
        return tuple((x - y) % mod for x, y in zip(a, b))

    def _w_scale(self, a, c, mod):
        return tuple((x * c) % mod for x in a)

    def _w_mul(self, a, b, mod):
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % mod,)
        conv = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        m = self.modulus_lift
        for k in range(2 * f - 2, f - 1, -1):
            c = conv[k] % mod
            if c:
                for j in range(f):
                    if m[j]:
                        conv[k - f + j] -= c * m[j]
            conv[k] = 0
        return tuple(c % mod for c in conv[:f])

    def _w_val(self, a, cap):
        """min p-valuation over coefficients, or None if zero mod p^cap."""
        p = self.p
        best = None
        for x in a:
            if x:
                v = _vp_int(x, p)
                if v < cap and (best is None or v < best):
                    best = v
                    if best == 0:
                        return 0
        return best

    def _w_inv(self, a, M):
        """Inverse of a unit of W mod p^M by Newton lifting."""
        p = self.p
        res = tuple(x % p for x in a)
        z = self.ff.inv(res)
        z = tuple(int(c) for c in z)
        prec = 1
        while prec < M:
            prec = min(2 * prec, M)
            mod = self._pp[prec]
            az = self._w_mul(a, z, mod)
            two_minus = tuple((-x) % mod for x in az)
            two_minus = (two_minus[0] + 2) % mod, *two_minus[1:]
            z = self._w_mul(z, two_minus, mod)
        return z

    def _w_div_p(self, a, d):
        pd = self._pp[d] if d <= self._mcap else self.p**d
        out = []
        for x in a:
            if x % pd:
                raise InvalidInput("inexact division by p in W")
            out.append(x // pd)
        return tuple(out)

    # -- payload kernels (tuple of e W-tuples) ----------------------------

    def _slot_cap(self, rel, r):
        return (rel - r + self.e - 1) // self.e if rel > r else 0

    def _pl_reduce(self, pl, rel):
        out = []
        for r in range(self.e):
            cap = self._slot_cap(rel, r)
            if cap <= 0:
                out.append(self._wzero)
            else:
                mod = self._pp[cap]
                out.append(tuple(x % mod for x in pl[r]))
        return tuple(out)

    def _pl_val(self, pl, rel):
        best = None
        for r in range(self.e):
            cap = self._slot_cap(rel, r)
            if cap <= 0:
                continue
            wv = self._w_val(pl[r], cap)
            if wv is not None:
                cand = r + self.e * wv
                if best is None or cand < best:
                    best = cand
        return best

    def _pl_add(self, a, b, rel):
        mod = self._pp[self._slot_cap(rel, 0)]
        return tuple(self._w_add(a[r], b[r], mod) for r in range(self.e))

    def _pl_neg(self, a, rel):
        mod = self._pp[self._slot_cap(rel, 0)]
        return tuple(tuple((-x) % mod for x in a[r]) for r in range(self.e))

    def _pl_mul(self, a, b, rel):
        e = self.e
        mod = self._pp[self._slot_cap(rel, 0)]
        if e == 1:
            return (self._w_mul(a[0], b[0], mod),)
        acc = [self._wzero] * e
        p = self.p
        for r in range(e):
            ar = a[r]
            if ar == self._wzero:
                continue
            for s in range(e):
                bs = b[s]
                if bs == self._wzero:
                    continue
                t = r + s
                prod = self._w_mul(ar, bs, mod)
                if t >= e:
                    t -= e
                    prod = self._w_scale(prod, p, mod)
                acc[t] = self._w_add(acc[t], prod, mod)
        return tuple(acc)

    def _ppow(self, d: int) -> int:
        return self._pp[d] if d <= self._mcap else self.p**d

    def _pl_shift_down(self, pl, k):
        """Payload of pi^{-k} x; requires v_pi(x) >= k."""
        e = self.e
        out = []
        for q in range(e):
            r = (q + k) % e
            d = (r - k - q) // e
            w = pl[r]
            out.append(self._w_scale(w, self._ppow(d), self._pp[self._mcap])
                       if d >= 0 else self._w_div_p(w, -d))
        return tuple(out)

    def _pl_shift_up(self, pl, k):
        e = self.e
        out = []
        for q in range(e):
            r = (q - k) % e
            d = (r + k - q) // e
            out.append(self._w_scale(pl[r], self._ppow(d), self._pp[self._mcap]))
        return tuple(out)

    def _pl_inv(self, pl, rel):
        z0 = self._w_inv(pl[0], self._slot_cap(rel, 0))
        z = (z0,) + (self._wzero,) * (self.e - 1)
        prec = 1
        while prec < rel:
            prec = min(2 * prec, rel)
            uz = self._pl_mul(pl, z, prec)
            mod = self._pp[self._slot_cap(prec, 0)]
            corr = self._pl_neg(uz, prec)
            w0 = list(corr[0])
            w0[0] = (w0[0] + 2) % mod
            corr = (tuple(w0),) + corr[1:]
            z = self._pl_mul(z, corr, prec)
        return self._pl_reduce(z, rel)

    # -- element constructors ---------------------------------------------

    def make(self, shift: int, payload, rel: int) -> "PadicElem":
        """Normalize raw data into a canonical element."""
        if rel <= 0 or payload is None:
            return PadicElem(self, shift + max(rel, 0), None, 0)
        payload = self._pl_reduce(payload, rel)
        v = self._pl_val(payload, rel)
        if v is None:
            return PadicElem(self, shift + rel, None, 0)
        if v:
            payload = self._pl_reduce(self._pl_shift_down(payload, v), rel - v)
            shift += v
            rel -= v
        return PadicElem(self, shift, payload, rel)

    def zero(self, exact: bool = True) -> "PadicElem":
        if exact:
            return PadicElem(self, None, None, 0)
        return PadicElem(self, self.N, None, 0)

    def one(self) -> "PadicElem":
        return self.make(0, self._unit_payload(1), self.N)

    def _unit_payload(self, scalar: int):
        w = (scalar % self._pp[self._mcap],) + (0,) * (self.f - 1)
        return (w,) + (self._wzero,) * (self.e - 1)

    def from_int(self, n: int, rel: int | None = None) -> "PadicElem":
        if n == 0:
            return self.zero(exact=True)
        rel = self.N if rel is None else rel
        v = _vp_int(n, self.p)
        u = n // self._pp[v] if v <= self._mcap else n // self.p**v
        return self.make(self.e * v, self._unit_payload(u), rel)

    def from_fraction(self, x) -> "PadicElem":
        x = Fraction(x)
        if x == 0:
            return self.zero(exact=True)
        num, den = x.numerator, x.denominator
        vn = _vp_int(num, self.p)
        vd = _vp_int(den, self.p)
        un = num // self.p**vn
        ud = den // self.p**vd
        mod = self._pp[self._mcap]
        inv = pow(ud % mod, -1, mod)
        return self.make(self.e * (vn - vd), self._unit_payload(un * inv), self.N)

    def pi_power(self, k: int) -> "PadicElem":
        return self.make(k, self._unit_payload(1), self.N)

    def p_power(self, t) -> "PadicElem":
        """p^t for an exact rational t with denominator dividing e."""
        t = Fraction(t)
        k = t * self.e
        if k.denominator != 1:
            raise InvalidInput(f"p^{t} is not in this context (e = {self.e})")
        return self.pi_power(int(k))

    # -- Teichmuller representatives ---------------------------------------

    def teichmuller_payload(self, c) -> tuple:
        """W-tuple of the Teichmuller lift of residue c, mod p^mcap."""
        idx = self.ff.to_index(c)
        cached = self._teich_cache.get(idx)
        if cached is not None:
            return cached
        mod = self._pp[self._mcap]
        z = tuple(int(x) for x in c)
        q = self.ff.q
        for _ in range(self._mcap + 1):
            zz = z
            k = q
            acc = self._unit_payload(1)[0]
            base = z
            while k:
                if k & 1:
                    acc = self._w_mul(acc, base, mod)
                base = self._w_mul(base, base, mod)
                k >>= 1
            z = acc
            if z == zz:
                break
        self._teich_cache[idx] = z
        return z

    def teichmuller(self, c) -> "PadicElem":
        """omega(c): the Teichmuller representative of a residue."""
        if self.ff.is_zero(c):
            return self.zero(exact=True)
        return self.make(0, (self.teichmuller_payload(c),) + (self._wzero,) * (self.e - 1), self.N)

    def representative(self, j: int) -> "PadicElem":
        """c_j, the j-th residue representative (c_0 = 0)."""
        return self.teichmuller(self.ff.from_index(j))

    def representatives(self):
        if self._reps is None:
            self._reps = [self.representative(j) for j in range(self.ff.q)]
        return list(self._reps)

    # -- the d_j enumeration of residues mod pi^n ---------------------------

    def enumerate_dj(self, j: int, ndigits: int | None = None) -> "PadicElem":
        """The j-th element of O_K/(pi^n): base-p^f digits of j become
        representative digits of pi-powers."""
        ndigits = self.N if ndigits is None else ndigits
        if not 0 <= j < self.ff.q**ndigits:
            raise InvalidInput(f"d_{j} needs more than {ndigits} digits")
        if j == 0:
            return self.zero(exact=True)
        digits = []
        while j:
            digits.append(j % self.ff.q)
            j //= self.ff.q
        return self.from_digit_indices(digits)

    def from_digit_indices(self, digits, shift: int = 0) -> "PadicElem":
        """Element sum_i omega(c_{digits[i]}) pi^{shift+i}, full precision."""
        mod = self._pp[self._mcap]
        slots = [self._wzero] * self.e
        for i, d in enumerate(digits):
            if d:
                w = self.teichmuller_payload(self.ff.from_index(d))
                r = i % self.e
                slots[r] = self._w_add(slots[r], self._w_scale(w, self._pp[i // self.e], mod), mod)
        return self.make(shift, tuple(slots), self.N)

    def random_unit(self, rng, ndigits: int | None = None) -> "PadicElem":
        n = self.N if ndigits is None else ndigits
        digits = [rng.randrange(1, self.ff.q)]
        digits += [rng.randrange(self.ff.q) for _ in range(n - 1)]
        return self.from_digit_indices(digits)

    def random_elem(self, rng, min_val_pi: int = 0, max_val_pi: int = 4) -> "PadicElem":
        v = rng.randint(min_val_pi, max_val_pi)
        return self.random_unit(rng).shift_pi(v)

    # -- context refinement -------------------------------------------------

    def refine(self, f_new: int | None = None, e_new: int | None = None,
               N_new: int | None = None) -> "RefineMap":
        """Extend to residue degree f_new and ramification e_new.

        Keeps p-adic precision by default. Returns a RefineMap whose
        embed/embed_ff carry elements and residues into the new context.
        """
        f2 = self.f if f_new is None else f_new
        e2 = self.e if e_new is None else e_new
        if f2 % self.f or e2 % self.e:
            raise InvalidInput("refinement must extend both f and e")
        ratio = e2 // self.e
        N2 = self.N * ratio if N_new is None else N_new
        if f2 == self.f and e2 == self.e and N2 == self.N:
            return RefineMap(self, self, lambda x: x, lambda c: c)
        ctx2 = PadicContext(self.p, f2, e2, N2)
        emb_ff = self.ff.embedding(ctx2.ff)
        if f2 == self.f:
            def emb_w(w, _mod):
                return w
        elif self.f == 1:
            pad = (0,) * (f2 - 1)

            def emb_w(w, _mod):
                return (w[0],) + pad
        else:
            ygen = self._hensel_root_of_modulus(ctx2)

            def emb_w(w, mod):
                acc = ctx2._wzero
                for c in reversed(w):
                    acc = ctx2._w_mul(acc, ygen, mod)
                    acc = (acc[0] + c) % mod, *acc[1:]
                return tuple(x % mod for x in acc)

        mcap_mod = ctx2._pp[ctx2._mcap]

        def embed(x: "PadicElem") -> "PadicElem":
            if x.pl is None:
                if x.sh is None:
                    return ctx2.zero(exact=True)
                return PadicElem(ctx2, x.sh * ratio, None, 0)
            slots = [ctx2._wzero] * e2
            for r in range(self.e):
                slots[r * ratio] = emb_w(x.pl[r], mcap_mod)
            return ctx2.make(x.sh * ratio, tuple(slots), x.rel * ratio)

        return RefineMap(self, ctx2, embed, emb_ff)

    def downcast(self, x: "PadicElem") -> "PadicElem":
        """Bring an element of a ramified refinement of this context back
        down, capping the precision at the first digit that does not live
        on the coarse lattice."""
        fine = x.ctx
        if fine.p != self.p or fine.f != self.f or fine.e % self.e:
            raise InvalidInput("downcast needs a ramified refinement of self")
        ratio = fine.e // self.e
        if ratio == 1:
            return x
        if x.pl is None:
            if x.sh is None:
                return self.zero(exact=True)
            return PadicElem(self, x.sh // ratio, None, 0)
        if x.sh % ratio:
            # valuation off the coarse lattice: zero to the coarse eye
            return PadicElem(self, x.sh // ratio, None, 0)
        # payload slots off the lattice cap the usable precision
        cap = x.rel
        for r in range(fine.e):
            if r % ratio == 0:
                continue
            wv = fine._w_val(x.pl[r], fine._slot_cap(x.rel, r))
            if wv is not None:
                cap = min(cap, r + fine.e * wv)
        slots = [self._wzero] * self.e
        mod = self._pp[self._mcap]
        for r in range(0, min(fine.e, cap), ratio):
            slots[r // ratio] = x.pl[r]
        return self.make(x.sh // ratio, tuple(slots), cap // ratio)

    def _hensel_root_of_modulus(self, ctx2: "PadicContext"):
        """Lift the generator y of W into W2 as a root of the old modulus."""
        emb_ff = self.ff.embedding(ctx2.ff)
        root_res = emb_ff(self.ff.from_index(self.p))  # image of y
        z = tuple(int(c) for c in root_res)
        m = self.modulus_lift
        dm = [i * m[i] for i in range(1, len(m))]
        mcap = ctx2._mcap
        prec = 1
        while prec < mcap:
            prec = min(2 * prec, mcap)
            mod = ctx2._pp[prec]
            mz = ctx2._wzero
            for c in reversed(m):
                mz = ctx2._w_mul(mz, z, mod)
                mz = (mz[0] + c) % mod, *mz[1:]
            dz = ctx2._wzero
            for c in reversed(dm):
                dz = ctx2._w_mul(dz, z, mod)
                dz = (dz[0] + c) % mod, *dz[1:]
            corr = ctx2._w_mul(mz, ctx2._w_inv(dz, prec), mod)
            z = ctx2._w_sub(z, corr, mod)
        return z


class RefineMap:
    """Bundle of a context refinement: target plus element/residue maps."""

    __slots__ = ("src", "ctx", "embed", "embed_ff")

    def __init__(self, src, ctx, embed, embed_ff):
        self.src = src
        self.ctx = ctx
        self.embed = embed
        self.embed_ff = embed_ff


class PadicElem:
    """Immutable finite-precision element of K.

    Three states: exact zero (sh is None), ambiguous zero (payload None,
    sh = absolute pi-precision), and unit-scaled (payload's first digit
    nonzero, so the valuation is exactly sh).
    """

    __slots__ = ("ctx", "sh", "pl", "rel")

    def __init__(self, ctx, sh, pl, rel):
        self.ctx = ctx
        self.sh = sh
        self.pl = pl
        self.rel = rel

    # -- state predicates ---------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.pl is None and self.sh is None

    @property
    def is_zeroish(self) -> bool:
        """Zero as far as the retained digits can tell."""
        return self.pl is None

    @property
    def exact(self) -> bool:
        """True only for the exact zero; every other element is a
        finite-precision approximation."""
        return self.is_exact_zero

    @property
    def has_valuation(self) -> bool:
        return self.pl is not None or self.sh is None

    @property
    def abs_prec_pi(self):
        if self.sh is None:
            return INF
        return self.sh + self.rel

    def valuation_pi(self):
        """Exact pi-adic valuation (math.inf for the exact zero)."""
        if self.pl is not None:
            return self.sh
        if self.sh is None:
            return INF
        raise PrecisionExhausted(
            f"ambiguous zero: only v_pi >= {self.sh} is known")

    def valuation(self):
        """v_p = v_pi / e as an exact Fraction (inf for exact zero)."""
        v = self.valuation_pi()
        return v if v is INF else Fraction(v, self.ctx.e)

    def min_valuation_pi(self):
        """Certified lower bound, defined for every element."""
        return INF if self.sh is None else self.sh

    @property
    def is_unit(self) -> bool:
        return self.pl is not None and self.sh == 0

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicElem):
            self.ctx.check_same(other.ctx)
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if isinstance(other, Fraction):
            return self.ctx.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if self.pl is None and self.sh is None:
            return other
        if other.pl is None and other.sh is None:
            return self
        if self.pl is None and other.pl is None:
            return PadicElem(ctx, min(self.sh, other.sh), None, 0)
        if self.pl is None:
            return other._add_ambiguous(self.sh)
        if other.pl is None:
            return self._add_ambiguous(other.sh)
        sa, sb = self.sh, other.sh
        s = min(sa, sb)
        absp = min(sa + self.rel, sb + other.rel)
        rel = absp - s
        if rel <= 0:
            return PadicElem(ctx, absp, None, 0)
        pa = ctx._pl_shift_up(self.pl, sa - s) if sa > s else self.pl
        pb = ctx._pl_shift_up(other.pl, sb - s) if sb > s else other.pl
        return ctx.make(s, ctx._pl_add(pa, pb, rel), rel)

    def _add_ambiguous(self, prec):
        if self.sh >= prec:
            return PadicElem(self.ctx, prec, None, 0)
        rel = min(self.rel, prec - self.sh)
        return self.ctx.make(self.sh, self.pl, rel)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.pl is None:
            return self
        return PadicElem(self.ctx, self.sh, self.ctx._pl_neg(self.pl, self.rel), self.rel)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if (self.pl is None and self.sh is None) or (other.pl is None and other.sh is None):
            return ctx.zero(exact=True)
        if self.pl is None or other.pl is None:
            lo = self.min_valuation_pi() + other.min_valuation_pi()
            return PadicElem(ctx, lo, None, 0)
        rel = min(self.rel, other.rel)
        return ctx.make(self.sh + other.sh, ctx._pl_mul(self.pl, other.pl, rel), rel)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "PadicElem":
        if self.pl is None:
            if self.sh is None:
                raise ZeroDivisionError("inversion of exact zero")
            raise PrecisionExhausted(
                "inversion of an ambiguous zero; raise the precision")
        ctx = self.ctx
        return PadicElem(ctx, -self.sh, ctx._pl_inv(self.pl, self.rel), self.rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def cap_abs_pi(self, k: int) -> "PadicElem":
        """Forget digits beyond absolute precision pi^k."""
        if self.pl is None:
            if self.sh is None or self.sh <= k:
                return self if self.sh is not None else PadicElem(self.ctx, k, None, 0)
            return PadicElem(self.ctx, k, None, 0)
        if self.abs_prec_pi <= k:
            return self
        if self.sh >= k:
            return PadicElem(self.ctx, k, None, 0)
        return self.ctx.make(self.sh, self.pl, k - self.sh)

    def shift_pi(self, k: int) -> "PadicElem":
        """Multiply by pi^k (exact, no precision loss)."""
        if self.pl is None:
            if self.sh is None:
                return self
            return PadicElem(self.ctx, self.sh + k, None, 0)
        return PadicElem(self.ctx, self.sh + k, self.pl, self.rel)

    def scale_p(self, t) -> "PadicElem":
        """Multiply by p^t, t rational with denominator dividing e."""
        k = Fraction(t) * self.ctx.e
        if k.denominator != 1:
            raise InvalidInput(f"p^{t} not representable at e = {self.ctx.e}")
        return self.shift_pi(int(k))

    # -- digits ---------------------------------------------------------------

    def residue(self):
        """First digit of the unit part as a residue-field element."""
        if self.pl is None:
            raise PrecisionExhausted("residue of a zeroish element")
        p = self.ctx.p
        return tuple(c % p for c in self.pl[0])

    def digits(self, n: int, start: int = 0):
        """Teichmuller digit indices c_i of x = sum c_i pi^i for
        i in [start, start+n); requires x = 0 mod pi^start."""
        ctx = self.ctx
        if self.pl is None:
            if self.sh is None:
                return [0] * n
            if self.sh >= start + n:
                return [0] * n
            raise PrecisionExhausted("not enough digits retained")
        if self.sh < start:
            raise InvalidInput(f"element has valuation {self.sh} < start {start}")
        if self.abs_prec_pi < start + n:
            raise PrecisionExhausted(
                f"requested {n} digits from {start}, known to {self.abs_prec_pi}")
        out = [0] * (self.sh - start)
        pl, rel = self.pl, self.rel
        mod = ctx._pp[ctx._mcap]
        while len(out) < n and rel > 0:
            res = tuple(c % ctx.p for c in pl[0])
            idx = ctx.ff.to_index(res)
            out.append(idx)
            if idx:
                w = ctx.teichmuller_payload(res)
                pl = (ctx._w_sub(pl[0], w, mod),) + pl[1:]
            pl = ctx._pl_reduce(ctx._pl_shift_down(pl, 1), rel - 1)
            rel -= 1
        while len(out) < n:
            out.append(0)
        return out[:n]

    # -- comparisons ------------------------------------------------------------

    def congruent(self, other, prec_pi: int | None = None) -> bool:
        """x = y mod pi^prec (default: the common tracked precision)."""
        d = self - other
        if prec_pi is None:
            return d.pl is None
        return d.min_valuation_pi() >= prec_pi

    def __eq__(self, other):
        if not isinstance(other, PadicElem):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return (self.ctx.same(other.ctx) and self.sh == other.sh
                and self.pl == other.pl and self.rel == other.rel)

    def __hash__(self):
        return hash((self.sh, self.pl, self.rel))

    def unit_int(self) -> int:
        """For f = 1 contexts: the unit part as a plain integer mod p^M."""
        if self.ctx.f != 1:
            raise InvalidInput("unit_int needs f = 1")
        if self.pl is None:
            return 0
        return self.pl[0][0]

    def __repr__(self):
        if self.is_exact_zero:
            return f"<padic 0 exact p={self.ctx.p}>"
        if self.pl is None:
            return f"<padic O(pi^{self.sh}) p={self.ctx.p}>"
        shown = self.digits(min(self.rel, 8), start=self.sh)
        return (f"<padic p={self.ctx.p} v_pi={self.sh} "
                f"digits={shown}... prec={self.abs_prec_pi}>")


def digit_expand_elem(x: PadicElem, n: int):
    """First n representative digits of x (from pi^0); the reassembled
    sum reproduces x mod pi^n."""
    return x.digits(n)
