"""Exact arithmetic in two concrete cyclic degree-p function-field extensions.

Variant R (ramified): K = F_q(s) over F = F_q(t) with t = s^p and
sigma(s) = xi_p * s, so the p-th root of the radicand t is the variable s
itself.  Here xi_p is not a norm from K (the twist invariant is 0).

Variant C (constant-field): K = F_{q^p}(t) over F = F_q(t), sigma the
q-power Frobenius on constants, radicand the canonical generator u of F_q*
with canonical p-th root v in F_{q^p}, xi_p = v^(q-1).  Every element of F_q*
is a norm of constants, so xi_p is a norm (twist invariant 1).

Elements of K are kept in factored form: a nonzero constant times monic
irreducible atoms (in s for R, in t for C) with integer exponents.  The
factored and expanded (numerator/denominator) forms convert exactly, which
keeps multiplicative work (norms, roots, class computations) and additive
work (the Hilbert-90 resolvent) both exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import polynomials as pl
from .finitefield import FF, GF
from .group_algebra import is_odd_prime


class ArenaError(ValueError):
    pass


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p0 in range(2, q + 1):
        if q % p0 == 0:
            m = 0
            qq = q
            while qq % p0 == 0:
                qq //= p0
                m += 1
            if qq != 1:
                raise ArenaError(f"{q} is not a prime power")
            return p0, m
    raise ArenaError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    """A nonzero element of K: unit constant times monic irreducible atoms
    with integer exponents, atoms sorted by (degree, encoding)."""

    arena: "Arena" = field(compare=False, repr=False)
    constant: int
    factors: tuple

    def key(self):
        return (self.constant, self.factors)

    def is_one(self) -> bool:
        return self.constant == 1 and not self.factors

    def _merge(self, other: "FieldElement", flip: int) -> "FieldElement":
        ff = self.arena.ff
        exps = dict(self.factors)
        for atom, e in other.factors:
            exps[atom] = exps.get(atom, 0) + flip * e
        const = ff.mul(self.constant,
                       other.constant if flip == 1 else ff.inv(other.constant))
        return self.arena.element(const, exps)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return self._merge(other, 1)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self._merge(other, -1)

    def __pow__(self, n: int) -> "FieldElement":
        ff = self.arena.ff
        exps = {atom: e * n for atom, e in self.factors}
        return self.arena.element(ff.pow(self.constant, n) if n else 1, exps)

    def inverse(self) -> "FieldElement":
        return self ** -1

    def expand(self) -> tuple[pl.Poly, pl.Poly]:
        """(numerator, denominator): coprime, denominator monic, constant folded
        into the numerator."""
        ff = self.arena.ff
        num: pl.Poly = (self.constant,)
        den: pl.Poly = (1,)
        for atom, e in self.factors:
            if e > 0:
                for _ in range(e):
                    num = pl.mul(ff, num, atom)
            else:
                for _ in range(-e):
                    den = pl.mul(ff, den, atom)
        return num, den

    def render(self) -> str:
        from . import parsing

        return parsing.render_element(self)

    def __repr__(self):
        return f"<{self.render()}>"


class Arena:
    """One concrete cyclic degree-p extension K/F with exact operations."""

    def __init__(self, p: int, q: int, variant: str):
        if not is_odd_prime(p):
            raise ArenaError(f"p must be an odd prime, got {p}")
        variant = variant.upper()
        if variant not in ("R", "C"):
            raise ArenaError(f"variant must be R or C, got {variant!r}")
        if (q - 1) % p != 0:
            raise ArenaError(f"need p | q-1, got p={p}, q={q}")
        p0, m = _factor_prime_power(q)
        self.p = p
        self.q = q
        self.variant = variant
        if variant == "R":
            self.ff: FF = GF(p0, m)
            self.base_ff: FF = self.ff
            self.var = "s"
            self.gen = self.ff.generator
            self.xi = self.ff.pow(self.gen, (q - 1) // p)
            self.a_root = self.element(1, {pl.X: 1})
            self.a = self.element(1, {pl.X: p})
        else:
            if m != 1:
                raise ArenaError("variant C is supported for prime q only")
            self.ff = GF(p0, p)
            self.base_ff = GF(p0, 1)
            self.var = "t"
            self.gen = self.ff.generator
            u = self.ff.embed_from(self.base_ff, self.base_ff.generator)
            self.radicand_const = u
            v = self.ff.nth_root(u, p)
            self.v = v
            self.xi = self.ff.pow(v, q - 1)
            if self.ff.pow(self.xi, p) != 1 or self.xi == 1:
                raise AssertionError("xi_p is not a primitive p-th root of unity")
            self.a_root = self.from_constant(v)
            self.a = self.from_constant(u)
        self._xi_pows = [self.ff.pow(self.xi, e) for e in range(p)]
        self._orbit_cache: dict = {}
        self._f_units = None
        self.upsilon, self.alpha = self._verify_upsilon()

    # -- element constructors --------------------------------------------------

    def element(self, constant: int, exps) -> FieldElement:
        if constant == 0:
            raise ArenaError("field elements are nonzero")
        if isinstance(exps, dict):
            items = [(a, e) for a, e in exps.items() if e]
        else:
            items = [(a, e) for a, e in exps if e]
        items.sort(key=lambda ae: pl.atom_key(ae[0], self.ff.q))
        return FieldElement(self, constant % self.ff.q, tuple(items))

    def one(self) -> FieldElement:
        return self.element(1, {})

    def from_constant(self, c: int) -> FieldElement:
        return self.element(c, {})

    def from_poly(self, f: pl.Poly) -> FieldElement:
        if pl.is_zero(f):
            raise ArenaError("field elements are nonzero")
        unit, atoms = pl.factor(self.ff, f)
        return self.element(unit, {a: e for a, e in atoms})

    def from_rational(self, num: pl.Poly, den: pl.Poly) -> FieldElement:
        if pl.is_zero(num):
            raise ArenaError("field elements are nonzero")
        if pl.is_zero(den):
            raise ZeroDivisionError("zero denominator")
        un, an = pl.factor(self.ff, num)
        ud, ad = pl.factor(self.ff, den)
        exps = {a: e for a, e in an}
        for a, e in ad:
            exps[a] = exps.get(a, 0) - e
        return self.element(self.ff.div(un, ud), exps)

    # -- the Galois action -------------------------------------------------------

    def sigma_const(self, c: int) -> int:
        if self.variant == "R":
            return c
        return self.ff.pow(c, self.q)

    def atom_sigma(self, atom: pl.Poly) -> tuple[int, pl.Poly]:
        """(unit, image): sigma(atom) = unit * image with image monic irreducible."""
        ff = self.ff
        if self.variant == "R":
            d = pl.deg(atom)
            unit = ff.pow(self.xi, d)
            inv_unit = ff.inv(unit)
            img = tuple(ff.mul(c, ff.mul(ff.pow(self.xi, k), inv_unit))
                        for k, c in enumerate(atom))
            return unit, pl.normalize(img)
        img = tuple(self.sigma_const(c) for c in atom)
        return 1, pl.normalize(img)

    def sigma(self, x: FieldElement) -> FieldElement:
        ff = self.ff
        const = self.sigma_const(x.constant)
        exps: dict = {}
        for atom, e in x.factors:
            unit, img = self.atom_sigma(atom)
            exps[img] = exps.get(img, 0) + e
            if unit != 1:
                const = ff.mul(const, ff.pow(unit, e))
        return self.element(const, exps)

    def sigma_pow(self, x: FieldElement, k: int) -> FieldElement:
        for _ in range(k % self.p):
            x = self.sigma(x)
        return x

    def sigma_orbit(self, atom: pl.Poly) -> tuple[list, list]:
        """(atoms, units): atoms[0] = atom and sigma(atoms[m]) =
        units[m] * atoms[(m+1) % L]; L is 1 or p."""
        cached = self._orbit_cache.get(atom)
        if cached is not None:
            return cached
        atoms = [atom]
        units = []
        cur = atom
        for _ in range(self.p):
            unit, img = self.atom_sigma(cur)
            units.append(unit)
            if img == atom:
                break
            atoms.append(img)
            cur = img
        else:
            raise AssertionError("sigma orbit did not close in p steps")
        out = (atoms, units)
        self._orbit_cache[atom] = out
        return out

    def norm(self, x: FieldElement) -> FieldElement:
        out = x
        cur = x
        for _ in range(self.p - 1):
            cur = self.sigma(cur)
            out = out * cur
        if self.sigma(out) != out:
            raise AssertionError("norm left the fixed field")
        return out

    # -- roots, membership, invariants -------------------------------------------

    def is_in_F(self, x: FieldElement) -> bool:
        return self.sigma(x) == x

    def pth_root(self, x: FieldElement):
        """y with y^p = x, or None; the constant takes the root of least
        discrete log."""
        if any(e % self.p for _, e in x.factors):
            return None
        if not self.ff.is_nth_power(x.constant, self.p):
            return None
        root_const = self.ff.nth_root(x.constant, self.p)
        return self.element(root_const, {a: e // self.p for a, e in x.factors})

    def index_of(self, x: FieldElement):
        """The twist residue e with xi^e = (p-th root of N(x))^(sigma - 1), or
        None when N(x) is not a p-th power in K (x outside the domain)."""
        y = self.pth_root(self.norm(x))
        if y is None:
            return None
        r = self.sigma(y) / y
        if r.factors:
            raise AssertionError("root ratio is not a constant")
        for e in range(self.p):
            if r.constant == self._xi_pows[e]:
                return e
        raise AssertionError("root ratio is not a p-th root of unity")

    # -- Hilbert 90 ----------------------------------------------------------------

    def _rational_add(self, n1, d1, n2, d2):
        ff = self.ff
        num = pl.add(ff, pl.mul(ff, n1, d2), pl.mul(ff, n2, d1))
        den = pl.mul(ff, d1, d2)
        if pl.is_zero(num):
            return (), (1,)
        g = pl.gcd_monic(ff, num, den)
        if pl.deg(g) > 0:
            num = pl.exact_div(ff, num, g)
            den = pl.exact_div(ff, den, g)
        return num, den

    def _theta_sequence(self):
        if self.variant == "R":
            m = 0
            while True:
                yield self.element(1, {pl.X: m} if m else {})
                m += 1
        else:
            z = self.ff.from_digits([0, 1])
            m = 0
            while True:
                for j in range(self.p):
                    zc = self.ff.pow(z, j) if j else 1
                    yield self.element(zc, {pl.X: m} if m else {})
                m += 1

    def hilbert90(self, c: FieldElement) -> FieldElement:
        """b with sigma(b)/b = c, for N(c) = 1: the character-sum resolvent
        b0 = sum_k (prod_{j<k} sigma^j(c)) sigma^k(theta) over the fixed
        monomial sequence for theta, inverted and reduced modulo F*."""
        if not self.norm(c).is_one():
            raise ArenaError("hilbert90 requires an element of norm exactly 1")
        ds = [self.one()]
        run = c
        for _ in range(1, self.p):
            ds.append(ds[-1] * run)
            run = self.sigma(run)
        budget = self.p * (self.p + 2)
        for _, theta in zip(range(budget), self._theta_sequence()):
            num, den = (), (1,)
            for k in range(self.p):
                tn, td = (ds[k] * self.sigma_pow(theta, k)).expand()
                num, den = self._rational_add(num, den, tn, td)
            if not pl.is_zero(num):
                b = self.reduce_mod_F(self.from_rational(num, den).inverse())
                if self.sigma(b) / b != c:
                    raise AssertionError("resolvent produced a wrong witness")
                return b
        raise AssertionError("no nonvanishing resolvent found (impossible)")

    # -- reduction modulo F* ----------------------------------------------------------

    def _f_const_units(self):
        if self._f_units is None:
            if self.variant == "R":
                self._f_units = tuple(range(1, self.ff.q))
            else:
                self._f_units = tuple(
                    self.ff.embed_from(self.base_ff, c)
                    for c in range(1, self.base_ff.q)
                )
        return self._f_units

    def reduce_mod_F(self, x: FieldElement) -> FieldElement:
        """Canonical representative of x modulo the multiplicative group of F
        restricted to x's support: fixed atoms are dropped, quasi-fixed atoms
        (sigma(f) = unit * f) get exponents in [0, p), full orbits are shifted
        so their least exponent is 0, and the constant is reduced modulo the
        constants of F.  sigma(x)/x is unchanged."""
        exps = dict(x.factors)
        const = x.constant
        seen: set = set()
        for atom, _ in x.factors:
            if atom in seen:
                continue
            atoms, units = self.sigma_orbit(atom)
            seen.update(atoms)
            if len(atoms) == 1:
                if units[0] == 1:
                    exps[atom] = 0
                else:
                    exps[atom] = exps.get(atom, 0) % self.p
            else:
                shift = min(exps.get(a, 0) for a in atoms)
                if shift:
                    for a in atoms:
                        exps[a] = exps.get(a, 0) - shift
        const = min(self.ff.mul(const, f) for f in self._f_const_units())
        return self.element(const, exps)

    # -- radicand decompositions ---------------------------------------------------

    def decompose_F_class(self, c: FieldElement) -> tuple[int, FieldElement]:
        """(s0, f) with c = a^s0 * f^p, f in F, for c in F that is a p-th power
        in K; found by testing c / a^s0 for an F-rational root, s0 = 0..p-1."""
        if not self.is_in_F(c):
            raise ArenaError("decompose_F_class requires an element of F")
        for s0 in range(self.p):
            y = self.pth_root(c / (self.a ** s0))
            if y is not None and self.sigma(y) == y:
                return s0, y
        raise ArenaError("element is not a p-th power in K")

    # -- twist invariant of the arena ------------------------------------------------

    def _verify_upsilon(self):
        if self.variant == "R":
            if self.ff.dlog(self.xi) % self.p == 0:
                raise AssertionError("xi_p is a p-th power in the constants")
            if self.index_of(self.from_constant(self.gen)) != 0:
                raise AssertionError("a constant class has nonzero twist residue")
            if self.index_of(self.a_root) == 0:
                raise AssertionError("the radicand root has zero twist residue")
            return 0, self.a_root
        for k in range(1, self.p):
            cand = self.from_constant(self.ff.pow(self.gen, k))
            e = self.index_of(cand)
            if e is None:
                raise AssertionError("constant class outside the index domain")
            if e != 0:
                return 1, cand
        raise AssertionError("no constant class of nonzero twist residue found")


def make_arena(p: int, q: int, variant: str) -> Arena:
    return Arena(p, q, variant)
