"""Explicit finite fields F_{p^n} with integer-encoded elements.

An element is an integer in [0, p^n) whose base-p digits are the coefficients
of a polynomial in the representation root z, reduced modulo a fixed monic
irreducible of degree n.  The modulus is the first irreducible in the integer
encoding order, so every field, its canonical generator and all discrete logs
are reproducible constants.  The prime field is the n = 1 case (no z).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _prime_factors(n: int) -> list[int]:
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


class FF:
    """The field with p0^n elements."""

    def __init__(self, p0: int, n: int = 1):
        if p0 < 2 or any(p0 % d == 0 for d in range(2, int(p0 ** 0.5) + 1)):
            raise ValueError(f"characteristic must be prime, got {p0}")
        if n < 1:
            raise ValueError("extension degree must be positive")
        self.p0 = p0
        self.n = n
        self.q = p0 ** n
        self.modulus = self._find_modulus() if n > 1 else (0, 1)
        self._gen = None
        self._dlog = None
        self._mul_tab = None
        self._embed_roots: dict[int, int] = {}

    # -- representation -------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p0)
            a //= self.p0
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for d in reversed(list(ds)):
            a = a * self.p0 + d % self.p0
        return a

    def elements(self):
        return range(self.q)

    # -- modulus search (prime-field polynomial arithmetic on digit lists) ----

    def _find_modulus(self) -> tuple:
        p0, n = self.p0, self.n
        for m in range(p0 ** n):
            coeffs = []
            mm = m
            for _ in range(n):
                coeffs.append(mm % p0)
                mm //= p0
            poly = tuple(coeffs) + (1,)
            if self._poly_irreducible(poly):
                return poly
        raise AssertionError("no irreducible modulus found")

    def _poly_mulmod(self, f, g, m):
        p0 = self.p0
        out = [0] * (len(f) + len(g) - 1)
        for a, ca in enumerate(f):
            if ca:
                for b, cb in enumerate(g):
                    out[a + b] = (out[a + b] + ca * cb) % p0
        # reduce by monic m
        dm = len(m) - 1
        for d in range(len(out) - 1, dm - 1, -1):
            c = out[d]
            if c:
                out[d] = 0
                for jj in range(dm):
                    out[d - dm + jj] = (out[d - dm + jj] - c * m[jj]) % p0
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _poly_powmod(self, f, e, m):
        out = (1,)
        base = f
        while e:
            if e & 1:
                out = self._poly_mulmod(out, base, m)
            base = self._poly_mulmod(base, base, m)
            e >>= 1
        return out

    def _poly_gcd(self, f, g):
        p0 = self.p0
        f, g = list(f), list(g)

        def norm(h):
            while h and h[-1] == 0:
                h.pop()
            return h

        f, g = norm(f), norm(g)
        while g:
            # f mod g
            inv_lead = pow(g[-1], -1, p0)
            while len(f) >= len(g) and f:
                c = f[-1] * inv_lead % p0
                shift = len(f) - len(g)
                for jj in range(len(g)):
                    f[shift + jj] = (f[shift + jj] - c * g[jj]) % p0
                f = norm(f)
            f, g = g, f
        return tuple(f)

    def _poly_irreducible(self, f) -> bool:
        d = len(f) - 1
        if d < 1 or f[-1] != 1:
            return False
        x = (0, 1)
        xq = self._poly_powmod(x, self.p0 ** d, f)
        if self._sub_poly(xq, x) != (0,):
            return False
        for r in _prime_factors(d):
            h = self._poly_powmod(x, self.p0 ** (d // r), f)
            diff = self._sub_poly(h, x)
            if len(self._poly_gcd(diff, f)) != 1:
                return False
        return True

    def _sub_poly(self, f, g):
        p0 = self.p0
        out = [0] * max(len(f), len(g))
        for k, c in enumerate(f):
            out[k] = c % p0
        for k, c in enumerate(g):
            out[k] = (out[k] - c) % p0
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    # -- field arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p0 = self.p0
        return self.from_digits([(x + y) % p0 for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.from_digits([(-x) % self.p0 for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p0
        if self.q <= 512:
            if self._mul_tab is None:
                tab = np.empty((self.q, self.q), dtype=np.int64)
                for x in range(self.q):
                    for y in range(x, self.q):
                        v = self._mul_slow(x, y)
                        tab[x, y] = v
                        tab[y, x] = v
                self._mul_tab = tab
            return int(self._mul_tab[a, b])
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        prod = self._poly_mulmod(tuple(self.digits(a)), tuple(self.digits(b)), self.modulus)
        return self.from_digits(prod)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        e %= self.q - 1
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, power: int = 1) -> int:
        return self.pow(a, self.p0 ** power) if a else 0

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = self.q - 1
        for r in _prime_factors(self.q - 1):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    # -- canonical generator and discrete logs ---------------------------------

    @property
    def generator(self) -> int:
        """Least element (in encoding order) generating the multiplicative group."""
        if self._gen is None:
            for a in range(1, self.q):
                if self.element_order(a) == self.q - 1:
                    self._gen = a
                    break
            else:
                raise AssertionError("no generator found")
        return self._gen

    def dlog(self, a: int) -> int:
        """Discrete log base the canonical generator."""
        if a == 0:
            raise ValueError("0 has no discrete log")
        if self._dlog is None:
            table = [0] * self.q
            g = self.generator
            acc = 1
            for k in range(self.q - 1):
                table[acc] = k
                acc = self.mul(acc, g)
            self._dlog = table
        return self._dlog[a]

    def is_nth_power(self, a: int, m: int) -> bool:
        if a == 0:
            raise ValueError("0 is not a unit")
        if (self.q - 1) % m != 0:
            raise ValueError(f"{m} does not divide the group order")
        return self.dlog(a) % m == 0

    def nth_root(self, a: int, m: int) -> int:
        """The m-th root with least discrete log (m | q-1; a must be an m-th power)."""
        k = self.dlog(a)
        if k % m != 0:
            raise ValueError(f"element {a} is not an {m}-th power")
        best = min((k + j * (self.q - 1)) // m % (self.q - 1) for j in range(m))
        return self.pow(self.generator, best)

    # -- subfield embedding ------------------------------------------------------

    def embed_from(self, sub: "FF", a: int) -> int:
        """Image of a under the canonical field embedding of sub into self
        (the representation root of sub maps to the least root of its modulus)."""
        if sub.p0 != self.p0:
            raise ValueError("mixed characteristic")
        if self.n % sub.n != 0:
            raise ValueError("no subfield of that degree")
        if sub.n == 1:
            return a % self.p0
        root = self._embed_roots.get(sub.q)
        if root is None:
            for r in range(self.q):
                acc = 0
                for c in reversed(sub.modulus):
                    acc = self.add(self.mul(acc, r), c % self.p0)
                if acc == 0:
                    root = r
                    break
            else:
                raise AssertionError("modulus of the subfield has no root here")
            self._embed_roots[sub.q] = root
        acc = 0
        for c in reversed(sub.digits(a)):
            acc = self.add(self.mul(acc, root), c)
        return acc

    def in_subfield(self, a: int, qsub: int) -> bool:
        """Whether a lies in the subfield with qsub elements."""
        return self.pow(a, qsub) == a if a else True

    def render(self, a: int) -> str:
        """Constant as an expression in the representation root z."""
        if self.n == 1:
            return str(a)
        terms = []
        for k in reversed(range(self.n)):
            c = self.digits(a)[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                zs = "z" if k == 1 else f"z^{k}"
                terms.append(zs if c == 1 else f"{c}*{zs}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"FF({self.p0}^{self.n})" if self.n > 1 else f"FF({self.p0})"

    def __eq__(self, other):
        return isinstance(other, FF) and (self.p0, self.n) == (other.p0, other.n)

    def __hash__(self):
        return hash((self.p0, self.n))


@lru_cache(maxsize=None)
def GF(p0: int, n: int = 1) -> FF:
    return FF(p0, n)
