"""The central extensions B(i, e) of the cyclic group of order p by the
length-i indecomposable module, realized on explicit normal forms.

Elements are pairs (v, k) with v a length-i vector over F_p (the module part,
basis 1, x, ..., x^{i-1} with x the image of sigma - 1) and k the sigma
exponent.  Multiplication is the extension cocycle

    (v, k) * (w, l) = (v + sigma^k w + carry, k + l mod p),

carry = e * x^{i-1} exactly when k + l >= p, so the distinguished lift
(0, 1) has p-th power e * x^{i-1}.  For e = 0 this is the semidirect product;
B(2, 0) is the Heisenberg group of order p^3.

Profiles (order, exponent, center, Frattini subgroup, nilpotency class,
minimal generators) are recomputed from the multiplication itself, and
isomorphism/surjection questions are settled by exhaustive search over
generator images via the kernels in search_kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import search_kernels
from .group_algebra import is_odd_prime

TABLE_CAP = 4096
FULL_PAIRS_CAP = 1200


class SizeCapError(ValueError):
    pass


@dataclass(frozen=True)
class GroupProfile:
    order: int
    exponent: int
    center_size: int
    frattini_size: int
    nilpotency_class: int
    min_generators: int


class GroupBie:
    """The group B(i, e) over F_p, order p^(i+1)."""

    def __init__(self, p: int, i: int, e: int):
        if not is_odd_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if not 1 <= i <= p:
            raise ValueError(f"module length must satisfy 1 <= i <= p, got {i}")
        self.p = p
        self.i = i
        self.e = e % p
        self.n = p ** (i + 1)
        self.n_mod = p ** i
        # sigma^k acts on the module part by multiplication by (1 + x)^k:
        # lower-triangular band of binomial coefficients.
        self._sig = []
        for k in range(p):
            mat = [[comb(k, r - c) % p if r >= c else 0 for c in range(i)] for r in range(i)]
            self._sig.append(tuple(tuple(row) for row in mat))
        carry = [0] * i
        carry[i - 1] = self.e
        self._carry = tuple(carry)
        self._table = None
        self._inv = None

    # -- element plumbing ----------------------------------------------------

    def identity(self):
        return (tuple([0] * self.i), 0)

    def sigma_lift(self):
        return (tuple([0] * self.i), 1)

    def tau(self, j: int):
        """The module basis element x^j as a group element."""
        if not 0 <= j < self.i:
            raise ValueError("module basis index out of range")
        v = [0] * self.i
        v[j] = 1
        return (tuple(v), 0)

    def check_element(self, x) -> None:
        v, k = x
        if len(v) != self.i or not all(0 <= c < self.p for c in v) or not 0 <= k < self.p:
            raise ValueError(f"malformed element {x!r} for B({self.i},{self.e}) over F_{self.p}")

    def _apply_sigma(self, k: int, w):
        mat = self._sig[k % self.p]
        return tuple(sum(mat[r][c] * w[c] for c in range(self.i)) % self.p for r in range(self.i))

    def mul(self, x, y):
        v, k = x
        w, l = y
        img = self._apply_sigma(k, w)
        if k + l >= self.p:
            out = tuple((v[r] + img[r] + self._carry[r]) % self.p for r in range(self.i))
        else:
            out = tuple((v[r] + img[r]) % self.p for r in range(self.i))
        return (out, (k + l) % self.p)

    def inv(self, x):
        v, k = x
        w = self._apply_sigma((-k) % self.p, tuple((-c) % self.p for c in v))
        if k != 0:
            w = tuple((w[r] - self._carry[r]) % self.p for r in range(self.i))
        return (w, (-k) % self.p)

    def power(self, x, m: int):
        out = self.identity()
        base = x
        m %= self.n
        while m:
            if m & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            m >>= 1
        return out

    def order_of(self, x) -> int:
        acc = x
        m = 1
        while acc != self.identity():
            acc = self.mul(acc, x)
            m += 1
        return m

    def encode(self, x) -> int:
        v, k = x
        m = 0
        for c in reversed(v):
            m = m * self.p + c
        return k * self.n_mod + m

    def decode(self, idx: int):
        k, m = divmod(idx, self.n_mod)
        v = []
        for _ in range(self.i):
            v.append(m % self.p)
            m //= self.p
        return (tuple(v), k)

    def k_of(self, idx: int) -> int:
        return idx // self.n_mod

    def elements(self):
        return (self.decode(idx) for idx in range(self.n))

    def describe(self, idx: int) -> str:
        v, k = self.decode(idx)
        return f"(v={list(v)}, k={k})"

    # -- table ops ------------------------------------------------------------

    def mul_table(self) -> np.ndarray:
        if self._table is None:
            if self.n > TABLE_CAP:
                raise SizeCapError(f"group of order {self.n} exceeds the table cap {TABLE_CAP}")
            tab = np.empty((self.n, self.n), dtype=np.int64)
            elems = list(self.elements())
            for a, x in enumerate(elems):
                for b, y in enumerate(elems):
                    tab[a, b] = self.encode(self.mul(x, y))
            self._table = tab
        return self._table

    def inv_table(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.array([self.encode(self.inv(x)) for x in self.elements()],
                                 dtype=np.int64)
        return self._inv

    def identity_index(self) -> int:
        return 0

    def __repr__(self):
        return f"GroupBie(p={self.p}, i={self.i}, e={self.e})"


class TableGroup:
    """A finite group given by an explicit multiplication table."""

    def __init__(self, table: np.ndarray, names=None):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        self.n = table.shape[0]
        self._table = table
        ident = [x for x in range(self.n)
                 if np.array_equal(table[x], np.arange(self.n))]
        if len(ident) != 1:
            raise ValueError("table has no unique identity")
        self._id = ident[0]
        inv = np.full(self.n, -1, dtype=np.int64)
        for a in range(self.n):
            hits = np.nonzero(table[a] == self._id)[0]
            if len(hits) != 1:
                raise ValueError("table is not a group (missing inverses)")
            inv[a] = hits[0]
        self._inv = inv
        self.names = list(names) if names is not None else None

    def mul_table(self) -> np.ndarray:
        return self._table

    def inv_table(self) -> np.ndarray:
        return self._inv

    def identity_index(self) -> int:
        return self._id

    def describe(self, idx: int) -> str:
        if self.names is not None:
            return str(self.names[idx])
        return str(idx)


def group_mul(group: GroupBie, x, y):
    """Product in B(i, e); validates its inputs."""
    group.check_element(x)
    group.check_element(y)
    return group.mul(x, y)


def _closure(group: GroupBie, seed):
    """Subgroup generated by the seed elements (as a set of elements)."""
    seen = set(seed)
    seen.add(group.identity())
    frontier = list(seen)
    gens = list(seed)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _normal_closure(group: GroupBie, seed, conjugators):
    """Smallest subgroup containing seed and stable under conjugation by the
    given elements (and their inverses)."""
    conj = list(conjugators) + [group.inv(c) for c in conjugators]
    current = set(seed)
    while True:
        sub = _closure(group, current)
        extra = set()
        for x in sub:
            for c in conj:
                y = group.mul(group.mul(c, x), group.inv(c))
                if y not in sub:
                    extra.add(y)
        if not extra:
            return sub
        current = sub | extra


def _commutator(group: GroupBie, x, y):
    return group.mul(group.mul(x, y), group.inv(group.mul(y, x)))


def group_profile(group: GroupBie) -> GroupProfile:
    """Invariants recomputed from the multiplication itself.

    For orders up to FULL_PAIRS_CAP the center and derived subgroups use full
    pairwise enumeration; above that the computation falls back to generator
    based closures, which agree (the generators generate).
    """
    p, i = group.p, group.i
    if p > 5 or i > p:
        raise SizeCapError("group profiles are limited to p <= 5, i <= p")
    n = group.n
    elems = list(group.elements())
    gens = [group.sigma_lift(), group.tau(0)]

    orders = [group.order_of(x) for x in elems]
    exponent = max(orders)

    small = n <= FULL_PAIRS_CAP
    if small:
        center = [x for x in elems if all(group.mul(x, y) == group.mul(y, x) for y in elems)]
        comm_seed = {_commutator(group, x, y) for x in elems for y in elems}
        derived = _closure(group, comm_seed)
    else:
        center = [x for x in elems if all(group.mul(x, g) == group.mul(g, x) for g in gens)]
        comm_seed = {_commutator(group, x, g) for x in elems for g in gens}
        derived = _normal_closure(group, comm_seed, gens)

    pth = {group.power(x, p) for x in elems}
    frattini = _closure(group, pth | set(derived))

    # lower central series
    cls = 1
    current = derived
    while len(current) > 1:
        cls += 1
        if small:
            seed = {_commutator(group, h, y) for h in current for y in elems}
            current = _closure(group, seed)
        else:
            seed = {_commutator(group, h, g) for h in current for g in gens}
            current = _normal_closure(group, seed, gens)

    frat_size = len(frattini)
    min_gens = 0
    q = n // frat_size
    while q > 1:
        q //= p
        min_gens += 1

    return GroupProfile(order=n, exponent=exponent, center_size=len(center),
                        frattini_size=frat_size, nilpotency_class=cls,
                        min_generators=min_gens)


@lru_cache(maxsize=None)
def _cached_profile(p: int, i: int, e: int) -> GroupProfile:
    return group_profile(GroupBie(p, i, e))


def group_isomorphic(g1: GroupBie, g2) -> tuple[bool, dict | None]:
    """Exhaustive isomorphism test from B(i, e) onto any table group.

    Enumerates images of the generating pair (sigma lift, module generator)
    of g1 in g2 in lexicographic index order; the first pair that satisfies
    g1's defining relations and generates g2 gives the isomorphism.  Returns
    (True, witness) or (False, None).
    """
    if not isinstance(g1, GroupBie):
        raise TypeError("the source group must be a GroupBie")
    if isinstance(g2, GroupBie):
        if g1.n != g2.n:
            return False, None
        p1 = _cached_profile(g1.p, g1.i, g1.e)
        p2 = _cached_profile(g2.p, g2.i, g2.e)
        if p1 != p2:
            return False, None
    else:
        if g1.n != g2.n:
            return False, None
    table = g2.mul_table()
    inv = g2.inv_table()
    idn = g2.identity_index()
    s, t = search_kernels.iso_pair_search(table, inv, idn, g1.p, g1.i, g1.e)
    if s < 0:
        return False, None
    return True, {"sigma_image": g2.describe(s), "tau0_image": g2.describe(t),
                  "sigma_index": s, "tau0_index": t}


@dataclass(frozen=True)
class SurjectionLaw:
    exists: bool
    kernel: str | None
    kernel_size: int | None
    verified: bool | None = None
    witness: dict | None = None


def search_g_surjection(g1: GroupBie, g2: GroupBie) -> dict | None:
    """Exhaustive search for a surjection g1 -> g2 compatible with the
    projections to the order-p quotient (lift maps over sigma, module part to
    module part).  Returns the first witness, or None."""
    table = g2.mul_table()
    inv = g2.inv_table()
    idn = g2.identity_index()
    kvals = np.array([g2.k_of(idx) for idx in range(g2.n)], dtype=np.int64)
    s, t = search_kernels.gsurj_pair_search(table, inv, idn, kvals, g1.p, g1.i, g1.e)
    if s < 0:
        return None
    # kernel size: the homomorphism maps p^{i+1} onto p^{j+1}
    return {"sigma_image": g2.describe(s), "tau0_image": g2.describe(t),
            "kernel_size": g1.n // g2.n}


def list_g_surjections(i: int, e: int, j: int, e2: int, p: int,
                       verify: bool = False) -> SurjectionLaw:
    """Existence of a quotient-compatible surjection B(i, e) -> B(j, e2):
    exactly when i > j and e2 = 0, with kernel the module slice of size
    p^(i-j).  With verify=True the answer is checked by exhaustive
    homomorphism search."""
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if not (1 <= i <= p and 1 <= j <= p):
        raise ValueError("module lengths out of range")
    exists = i > j and e2 % p == 0
    kernel = f"A_{j}/A_{i}" if exists else None
    ksize = p ** (i - j) if exists else None
    witness = None
    verified = None
    if verify:
        found = search_g_surjection(GroupBie(p, i, e), GroupBie(p, j, e2))
        verified = (found is not None) == exists
        witness = found
    return SurjectionLaw(exists=exists, kernel=kernel, kernel_size=ksize,
                         verified=verified, witness=witness)
