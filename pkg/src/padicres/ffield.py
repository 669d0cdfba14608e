"""Arithmetic and polynomial factorization over F_{p^f}.

Field elements are coefficient tuples over F_p of length f (little
endian in the generator y). Polynomials are Python lists of elements,
least degree first, with trailing zeros stripped; the zero polynomial
is the empty list and its degree is the NEG_INF sentinel, never -1.

Factorization is Berlekamp's algorithm (deterministic: the splitting
scan enumerates field elements in a fixed order), irreducibility is
Rabin's test, and the two stay independent so they can cross-check
each other.
"""

from __future__ import annotations

from .errors import InvalidInput

NEG_INF = float("-inf")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FField:
    """The finite field F_{p^f} with a fixed monic irreducible modulus.

    When no modulus is given, the lexicographically first monic
    irreducible of degree f over F_p is used (polynomials ordered by
    their little-endian base-p coefficient encoding), which keeps
    every run reproducible.
    """

    __slots__ = ("p", "f", "q", "modulus", "_red", "zero", "one")

    def __init__(self, p: int, f: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise InvalidInput(f"p = {p} is not prime")
        if f < 1:
            raise InvalidInput(f"f = {f} must be positive")
        self.p = p
        self.f = f
        self.q = p**f
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1) if f > 1 else (1 % p,)
        if modulus is None:
            modulus = self._default_modulus(p, f)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != f + 1 or modulus[f] != 1:
            raise InvalidInput("modulus must be monic of degree f")
        self.modulus = modulus
        # y^f = -(m_0 + m_1 y + ... + m_{f-1} y^{f-1})
        self._red = tuple((-modulus[j]) % p for j in range(f))

    @staticmethod
    def _default_modulus(p: int, f: int) -> tuple[int, ...]:
        if f == 1:
            return (0, 1)
        base = FField(p, 1)
        for code in range(p**f):
            coeffs = []
            c = code
            for _ in range(f):
                coeffs.append(c % p)
                c //= p
            coeffs.append(1)
            poly = [(ci % p,) for ci in coeffs]
            poly = base.poly_strip(poly)
            if base.poly_deg(poly) == f and base.rabin_irreducible(poly):
                return tuple(coeffs)
        raise InvalidInput(f"no irreducible of degree {f} over F_{p}")

    # -- element level --------------------------------------------------

    def elem(self, *coeffs: int) -> tuple[int, ...]:
        cs = list(coeffs) + [0] * (self.f - len(coeffs))
        return tuple(c % self.p for c in cs[: self.f])

    def from_index(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.q:
            raise InvalidInput(f"element index {i} out of range for F_{self.q}")
        out = []
        for _ in range(self.f):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def to_index(self, a) -> int:
        i = 0
        for c in reversed(a):
            i = i * self.p + c
        return i

    def elements(self):
        for i in range(self.q):
            yield self.from_index(i)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, f = self.p, self.f
        if f == 1:
            return (a[0] * b[0] % p,)
        conv = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        red = self._red
        for k in range(2 * f - 2, f - 1, -1):
            c = conv[k] % p
            if c:
                for j in range(f):
                    if red[j]:
                        conv[k - f + j] += c * red[j]
            conv[k] = 0
        return tuple(c % p for c in conv[:f])

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero field element")
        return self.pow(a, self.q - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def is_zero(self, a) -> bool:
        return a == self.zero

    # -- polynomial level ------------------------------------------------

    def poly_strip(self, poly):
        n = len(poly)
        while n > 0 and poly[n - 1] == self.zero:
            n -= 1
        return list(poly[:n])

    def poly_deg(self, poly):
        return len(poly) - 1 if poly else NEG_INF

    def poly_from_ints(self, ints):
        """Coefficients as integers: for f = 1 plain residues, otherwise
        element indices in the base-p encoding."""
        return self.poly_strip([self.from_index(i % self.q) for i in ints])

    def poly_to_ints(self, poly):
        return [self.to_index(c) for c in poly]

    def x_poly(self):
        return [self.zero, self.one]

    def poly_add(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self.zero
            y = b[i] if i < len(b) else self.zero
            out.append(self.add(x, y))
        return self.poly_strip(out)

    def poly_sub(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self.zero
            y = b[i] if i < len(b) else self.zero
            out.append(self.sub(x, y))
        return self.poly_strip(out)

    def poly_scale(self, a, c):
        return self.poly_strip([self.mul(x, c) for x in a])

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != self.zero:
                for j, bj in enumerate(b):
                    if bj != self.zero:
                        out[i + j] = self.add(out[i + j], self.mul(ai, bj))
        return self.poly_strip(out)

    def poly_divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(a)
        db, lb = len(b) - 1, b[-1]
        inv_lb = self.inv(lb)
        q = [self.zero] * max(0, len(a) - db)
        while len(a) - 1 >= db and a:
            da = len(a) - 1
            c = self.mul(a[-1], inv_lb)
            q[da - db] = c
            for j in range(db + 1):
                a[da - db + j] = self.sub(a[da - db + j], self.mul(c, b[j]))
            a = self.poly_strip(a)
            if not a:
                break
        return self.poly_strip(q), self.poly_strip(a)

    def poly_mod(self, a, b):
        return self.poly_divmod(a, b)[1]

    def poly_monic(self, a):
        if not a:
            return []
        return self.poly_scale(a, self.inv(a[-1]))

    def poly_gcd(self, a, b):
        a, b = self.poly_strip(a), self.poly_strip(b)
        while b:
            a, b = b, self.poly_mod(a, b)
        return self.poly_monic(a)

    def poly_derivative(self, a):
        out = []
        for i in range(1, len(a)):
            k = i % self.p
            c = a[i]
            acc = self.zero
            for _ in range(k):
                acc = self.add(acc, c)
            out.append(acc)
        return self.poly_strip(out)

    def poly_eval(self, a, x):
        acc = self.zero
        for c in reversed(a):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_pow_mod(self, a, k: int, mod):
        out = [self.one]
        base = self.poly_mod(a, mod)
        while k:
            if k & 1:
                out = self.poly_mod(self.poly_mul(out, base), mod)
            base = self.poly_mod(self.poly_mul(base, base), mod)
            k >>= 1
        return out

    def poly_eq(self, a, b):
        return self.poly_strip(a) == self.poly_strip(b)

    # -- irreducibility and factorization ---------------------------------

    def rabin_irreducible(self, qpoly) -> bool:
        """Rabin's test: x^{q^n} = x mod q and gcd(x^{q^{n/l}} - x, q) = 1
        for every prime l dividing n."""
        qpoly = self.poly_strip(qpoly)
        n = self.poly_deg(qpoly)
        if n is NEG_INF or n < 1:
            raise InvalidInput("irreducibility needs degree >= 1")
        if qpoly[-1] != self.one:
            raise InvalidInput("non-monic input")
        x = self.x_poly()
        for ell in _prime_divisors(n):
            h = self.poly_pow_mod(x, self.q ** (n // ell), qpoly)
            g = self.poly_gcd(self.poly_sub(h, x), qpoly)
            if self.poly_deg(g) != 0:
                return False
        h = self.poly_pow_mod(x, self.q**n, qpoly)
        return self.poly_eq(h, self.poly_mod(x, qpoly))

    def pth_root_poly(self, a):
        """Inverse of the p-power map on F_q[X^p] subsets: a must have
        support only on degrees divisible by p."""
        out = []
        for i in range(0, len(a), self.p):
            # p-th root in F_{p^f} is Frobenius applied f-1 times
            out.append(self.pow(a[i], self.p ** (self.f - 1)))
        for i, c in enumerate(a):
            if i % self.p and c != self.zero:
                raise InvalidInput("not a polynomial in X^p")
        return self.poly_strip(out)

    def squarefree_decomposition(self, a):
        """Char-p square-free decomposition: list of (monic squarefree
        factor, multiplicity) with product of factor^mult = a."""
        a = self.poly_monic(self.poly_strip(a))
        out = []
        d = self.poly_derivative(a)
        if not d:
            if self.poly_deg(a) == 0:
                return []
            for g, m in self.squarefree_decomposition(self.pth_root_poly(a)):
                out.append((g, m * self.p))
            return out
        t = self.poly_gcd(a, d)
        v = self.poly_divmod(a, t)[0]
        i = 1
        while self.poly_deg(v) > 0:
            w = self.poly_gcd(t, v)
            piece = self.poly_divmod(v, w)[0]
            if self.poly_deg(piece) > 0:
                out.append((self.poly_monic(piece), i))
            v = w
            t = self.poly_divmod(t, w)[0]
            i += 1
        if self.poly_deg(t) > 0:
            for g, m in self.squarefree_decomposition(self.pth_root_poly(t)):
                out.append((g, m * self.p))
        return out

    def _berlekamp_splitting(self, a):
        """Factor a monic squarefree polynomial into monic irreducibles."""
        n = self.poly_deg(a)
        if n == 1:
            return [a]
        x = self.x_poly()
        # rows of the Frobenius matrix: x^{qi} mod a, built iteratively
        xq = self.poly_pow_mod(x, self.q, a)
        rows = [[self.one] + [self.zero] * (n - 1)]
        cur = [self.one]
        for _ in range(1, n):
            cur = self.poly_mod(self.poly_mul(cur, xq), a)
            rows.append(list(cur) + [self.zero] * (n - len(cur)))
        # kernel of (Q - I) over F_q
        mat = [[self.sub(rows[i][j], self.one if i == j else self.zero) for j in range(n)] for i in range(n)]
        basis = self._nullspace(mat)
        if len(basis) == 1:
            return [a]
        factors = [a]
        for vec in basis:
            vpoly = self.poly_strip(list(vec))
            if self.poly_deg(vpoly) <= 0:
                continue
            new_factors = []
            for h in factors:
                if self.poly_deg(h) == 1:
                    new_factors.append(h)
                    continue
                pieces = []
                rem = h
                for c in self.elements():
                    g = self.poly_gcd(rem, self.poly_sub(vpoly, [c]))
                    if 0 < self.poly_deg(g) < self.poly_deg(rem):
                        pieces.append(g)
                        rem = self.poly_divmod(rem, g)[0]
                    if self.poly_deg(rem) == 0:
                        break
                if self.poly_deg(rem) > 0:
                    pieces.append(rem)
                new_factors.extend(pieces if pieces else [h])
            factors = new_factors
            if len(factors) == len(basis):
                break
        return [self.poly_monic(h) for h in factors]

    def _nullspace(self, mat):
        """Kernel basis of the n x n matrix over F_q (row convention:
        vector v is in the kernel iff sum_i v_i mat[i] = 0)."""
        n = len(mat)
        m = [list(row) for row in mat]
        # column echelon on the transpose, i.e. row reduce m^T
        mt = [[m[i][j] for i in range(n)] for j in range(n)]
        pivots = {}
        r = 0
        for c in range(n):
            pr = None
            for i in range(r, n):
                if mt[i][c] != self.zero:
                    pr = i
                    break
            if pr is None:
                continue
            mt[r], mt[pr] = mt[pr], mt[r]
            inv_p = self.inv(mt[r][c])
            mt[r] = [self.mul(v, inv_p) for v in mt[r]]
            for i in range(n):
                if i != r and mt[i][c] != self.zero:
                    coef = mt[i][c]
                    mt[i] = [self.sub(a, self.mul(coef, b)) for a, b in zip(mt[i], mt[r])]
            pivots[c] = r
            r += 1
        basis = []
        for c in range(n):
            if c in pivots:
                continue
            vec = [self.zero] * n
            vec[c] = self.one
            for pc, pr in pivots.items():
                vec[pc] = self.neg(mt[pr][c])
            basis.append(tuple(vec))
        return basis

    def berlekamp_factor(self, qpoly):
        """Full factorization of a monic polynomial.

        Returns a list of (monic irreducible, multiplicity) pairs sorted
        by (degree, coefficient encoding) so output order is canonical.
        """
        qpoly = self.poly_strip(qpoly)
        if self.poly_deg(qpoly) is NEG_INF or self.poly_deg(qpoly) < 1:
            raise InvalidInput("factorization needs degree >= 1")
        if qpoly[-1] != self.one:
            raise InvalidInput("non-monic input")
        out = {}
        for part, mult in self.squarefree_decomposition(qpoly):
            for irr in self._berlekamp_splitting(part):
                key = tuple(self.to_index(c) for c in irr)
                if key in out:
                    out[key] = (irr, out[key][1] + mult)
                else:
                    out[key] = (irr, mult)
        pairs = list(out.values())
        pairs.sort(key=lambda fm: (len(fm[0]), [self.to_index(c) for c in fm[0]]))
        return pairs

    def squarefree(self, qpoly) -> bool:
        qpoly = self.poly_strip(qpoly)
        n = self.poly_deg(qpoly)
        if n is NEG_INF or n < 1:
            raise InvalidInput("squarefree test needs degree >= 1")
        d = self.poly_derivative(qpoly)
        if not d:
            return False
        return self.poly_deg(self.poly_gcd(qpoly, d)) == 0

    def perfect_power_decompose(self, qpoly):
        """(Q, m) with Q irreducible and Q^m = qpoly and m maximal, or
        None when the input has at least two distinct irreducible
        factors."""
        pairs = self.berlekamp_factor(qpoly)
        if len(pairs) != 1:
            return None
        return pairs[0]

    def poly_roots(self, qpoly):
        """Roots in this field, each once (input need not be squarefree)."""
        roots = []
        for irr, _ in self.berlekamp_factor(qpoly):
            if self.poly_deg(irr) == 1:
                roots.append(self.neg(irr[0]))
        return roots

    # -- embeddings --------------------------------------------------------

    def embedding(self, other: "FField"):
        """Field embedding F_{p^f} -> F_{p^{f'}} for f | f'.

        Deterministic: the generator maps to the first root of this
        field's modulus in the target's element enumeration.
        """
        if other.p != self.p or other.f % self.f != 0:
            raise InvalidInput("no embedding: target must be an extension")
        if other.f == self.f and other.modulus == self.modulus:
            return lambda a: a
        mod_img = [other.elem(c) for c in self.modulus]
        root = None
        for cand in other.elements():
            if other.poly_eval(mod_img, cand) == other.zero:
                root = cand
                break
        if root is None:
            raise InvalidInput("modulus has no root in target field")

        def embed(a):
            acc = other.zero
            for c in reversed(a):
                acc = other.add(other.mul(acc, root), other.elem(c))
            return acc

        return embed


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
