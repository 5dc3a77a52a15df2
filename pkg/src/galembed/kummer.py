"""The F_p-linear window into J = K*/(K*)^p.

A SupportSpace is a finite sigma-stable subspace of J spanned by the
constants class, the class of the p-th root of the radicand, and full
sigma-orbits of monic irreducible atoms; classes are coordinate vectors over
F_p in this basis.  Because K has unique factorization into atoms, distinct
vectors are distinct classes, so kernel/image questions about powers of
rho = sigma - 1 reduce to exact linear algebra on the sigma matrix.

The space also supports the two invariants of a class: the module length
(least i with rho^i killing it) and the twist residue e (defined through the
norm and an exact p-th root), and the construction of the Galois group of the
corresponding radical tower as an explicit multiplication table on formal
p-th root symbols with exact cofactors in K.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from . import polynomials as pl
from .arena import Arena, FieldElement
from .group_algebra import FpGModule, module_decompose
from .pgroups import TableGroup


class KummerError(ValueError):
    pass


@dataclass(frozen=True)
class SupportSpace:
    arena: Arena = field(repr=False)
    atoms: tuple               # atom polynomials, basis slots 1..dim-1
    sigma_mat: tuple           # dim x dim over F_p, column-convention
    labels: tuple

    @property
    def p(self) -> int:
        return self.arena.p

    @property
    def dim(self) -> int:
        return 1 + len(self.atoms)

    def sigma(self) -> np.ndarray:
        return np.array(self.sigma_mat, dtype=np.int64)

    def rho(self) -> np.ndarray:
        return (self.sigma() - np.eye(self.dim, dtype=np.int64)) % self.p

    def rho_power(self, k: int) -> np.ndarray:
        return linalg.mat_pow(self.rho(), k, self.p)

    def slot_of(self, atom) -> int:
        try:
            return 1 + self.atoms.index(atom)
        except ValueError:
            raise KummerError(f"atom {atom} is outside the support space") from None


@dataclass(frozen=True)
class KummerClass:
    space: SupportSpace = field(repr=False)
    vec: tuple

    def array(self) -> np.ndarray:
        return np.array(self.vec, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __add__(self, other: "KummerClass") -> "KummerClass":
        p = self.space.p
        return KummerClass(self.space, tuple((a + b) % p for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other: "KummerClass") -> "KummerClass":
        p = self.space.p
        return KummerClass(self.space, tuple((a - b) % p for a, b in zip(self.vec, other.vec)))

    def scaled(self, c: int) -> "KummerClass":
        p = self.space.p
        return KummerClass(self.space, tuple((a * c) % p for a in self.vec))


def closure_space(arena: Arena, elements, extra_maps=()) -> SupportSpace:
    """Smallest basis containing the constants class, the radicand-root class,
    and the full sigma-orbits (and orbits under any extra element maps) of the
    atoms of the given elements."""
    atoms = set()
    for x in elements:
        for atom, _ in x.factors:
            atoms.add(atom)
    for atom, _ in arena.a_root.factors:
        atoms.add(atom)
    maps = list(extra_maps)
    frontier = list(atoms)
    while frontier:
        nxt = []
        for atom in frontier:
            images = [arena.atom_sigma(atom)[1]]
            for emap in maps:
                img_elt = emap(arena.element(1, {atom: 1}))
                images.extend(a for a, _ in img_elt.factors)
            for img in images:
                if img not in atoms:
                    atoms.add(img)
                    nxt.append(img)
        frontier = nxt
    ordered = tuple(sorted(atoms, key=lambda a: pl.atom_key(a, arena.ff.q)))
    labels = ("[const]",) + tuple("[" + arena.element(1, {a: 1}).render() + "]" for a in ordered)
    space = SupportSpace(arena=arena, atoms=ordered, sigma_mat=((0,),), labels=labels)
    # column j of sigma = class of sigma(lift of basis j)
    cols = []
    for j in range(1 + len(ordered)):
        lifted = lift(SupportSpace(arena, ordered, ((0,),), labels), _unit_vec(1 + len(ordered), j))
        cols.append(_class_vec(arena, ordered, arena.sigma(lifted)))
    mat = tuple(tuple(int(cols[j][r]) for j in range(len(cols))) for r in range(len(cols)))
    return SupportSpace(arena=arena, atoms=ordered, sigma_mat=mat, labels=labels)


def _unit_vec(dim: int, j: int) -> tuple:
    return tuple(1 if k == j else 0 for k in range(dim))


def _class_vec(arena: Arena, atoms: tuple, x: FieldElement) -> tuple:
    p = arena.p
    vec = [arena.ff.dlog(x.constant) % p] + [0] * len(atoms)
    for atom, e in x.factors:
        if e % p == 0:
            continue
        try:
            slot = 1 + atoms.index(atom)
        except ValueError:
            raise KummerError(f"atom {atom} is outside the support space") from None
        vec[slot] = e % p
    return tuple(vec)


def class_of(space: SupportSpace, x: FieldElement) -> KummerClass:
    return KummerClass(space, _class_vec(space.arena, space.atoms, x))


def lift(space: SupportSpace, vec) -> FieldElement:
    """Canonical representative: generator^v0 times the atoms to their
    exponents in [0, p)."""
    arena = space.arena
    exps = {}
    v = list(vec)
    for j, atom in enumerate(space.atoms):
        if v[1 + j] % arena.p:
            exps[atom] = v[1 + j] % arena.p
    const = arena.ff.pow(arena.gen, v[0] % arena.p) if v[0] % arena.p else 1
    return arena.element(const, exps)


def rho_apply(space: SupportSpace, c: KummerClass, k: int = 1) -> KummerClass:
    vec = (space.rho_power(k) @ c.array()) % space.p
    return KummerClass(space, tuple(int(a) for a in vec))


def length_of(space: SupportSpace, c: KummerClass) -> int:
    rho = space.rho()
    v = c.array()
    i = 0
    while v.any():
        v = (rho @ v) % space.p
        i += 1
        if i > space.p:
            raise AssertionError("rho is not nilpotent on the space")
    return i


def class_profile(space: SupportSpace, c: KummerClass):
    """(length, twist residue); the residue is None outside the kernel of
    rho^(p-1), where it is undefined."""
    l = length_of(space, c)
    if l > space.p - 1:
        return l, None
    e = space.arena.index_of(lift(space, c.vec))
    if e is None:
        raise AssertionError("class in the rho^(p-1) kernel without an index")
    return l, e


def decompose_classes(space: SupportSpace, classes) -> list[tuple[KummerClass, int]]:
    """Cyclic generators and lengths whose modules direct-sum to the module
    generated by the given classes."""
    module = FpGModule(space.p, space.sigma())
    blocks = module_decompose(module, [c.array() for c in classes])
    return [(KummerClass(space, tuple(int(a) for a in vec)), h) for vec, h in blocks]


def identify_galois_group(space: SupportSpace, c: KummerClass) -> tuple[int, str]:
    """(length, twist label) of the Galois group of the radical closure of a
    nonzero class: label "0" or "nonzero" below length p (all nonzero twists
    give isomorphic groups), "n/a" at length p where the twist plays no role."""
    if c.is_zero():
        raise KummerError("the zero class generates no extension")
    l, e = class_profile(space, c)
    if l == space.p:
        return l, "n/a"
    return l, ("0" if e == 0 else "nonzero")


def f_class_matrix(space: SupportSpace) -> np.ndarray:
    """Columns spanning the classes of elements of F inside the space."""
    arena = space.arena
    cols = []
    if arena.variant == "R":
        cols.append(_class_vec(arena, space.atoms, arena.from_constant(arena.gen)))
    else:
        base_gen = arena.ff.embed_from(arena.base_ff, arena.base_ff.generator)
        cols.append(_class_vec(arena, space.atoms, arena.from_constant(base_gen)))
    seen = set()
    for atom in space.atoms:
        if atom in seen:
            continue
        atoms_o, units = arena.sigma_orbit(atom)
        seen.update(atoms_o)
        elt = arena.element(1, {atom: 1})
        if len(atoms_o) == 1:
            if units[0] == 1:
                cols.append(_class_vec(arena, space.atoms, elt))
            # quasi-fixed atoms contribute only p-th powers, the zero class
        else:
            cols.append(_class_vec(arena, space.atoms, arena.norm(elt)))
    return np.array(cols, dtype=np.int64).T


def find_F_representative(space: SupportSpace, c: KummerClass):
    """An element of F whose class equals c, or None (solves over the columns
    of f_class_matrix)."""
    arena = space.arena
    mat = f_class_matrix(space)
    sol = linalg.solve(mat, c.array(), space.p)
    if sol is None:
        return None
    gens: list[FieldElement] = []
    if arena.variant == "R":
        gens.append(arena.from_constant(arena.gen))
    else:
        gens.append(arena.from_constant(arena.ff.embed_from(arena.base_ff, arena.base_ff.generator)))
    seen = set()
    for atom in space.atoms:
        if atom in seen:
            continue
        atoms_o, units = arena.sigma_orbit(atom)
        seen.update(atoms_o)
        elt = arena.element(1, {atom: 1})
        if len(atoms_o) == 1:
            if units[0] == 1:
                gens.append(elt)
        else:
            gens.append(arena.norm(elt))
    out = arena.one()
    for g, coef in zip(gens, sol):
        if coef:
            out = out * (g ** int(coef))
    if class_of(space, out).vec != c.vec:
        raise AssertionError("F-representative reconstruction failed")
    return out


def is_f_class(space: SupportSpace, c: KummerClass) -> bool:
    return linalg.is_consistent(f_class_matrix(space), c.array(), space.p)


# -- explicit Galois groups on formal radicals ----------------------------------


@dataclass
class RadicalGaloisGroup:
    """Gal of the radical closure of a cyclic class, as automorphism normal
    forms (sigma power, action on the root symbols) with an explicit table."""

    table_group: TableGroup
    i: int
    sigma_index: int
    char_indices: tuple
    radicands: tuple
    representative: FieldElement
    elements: tuple


def abstract_galois_group(space: SupportSpace, c: KummerClass,
                          representative: FieldElement | None = None) -> RadicalGaloisGroup:
    """Multiplication table of the Galois group acting on the formal symbols
    root_j = p-th root of beta^(rho^j), beta a representative of the class.

    The distinguished lift of sigma sends root_j to root_j * root_{j+1} (its
    p-th power is sigma of the radicand), and the top symbol to root_{i-1}
    times the exact p-th root of beta^(rho^i) in K.  Kummer characters scale
    the symbols by powers of xi_p.  Compositions track exact cofactors in K,
    folding p-th powers of symbols back into field elements.
    """
    arena = space.arena
    p = arena.p
    if representative is None:
        representative = lift(space, c.vec)
    if class_of(space, representative).vec != c.vec:
        raise KummerError("representative does not lie in the given class")
    i = length_of(space, c)
    if i == 0:
        raise KummerError("the zero class generates no extension")
    chain = [representative]
    for _ in range(i):
        chain.append(arena.sigma(chain[-1]) / chain[-1])
    w = arena.pth_root(chain[i])
    if w is None:
        raise AssertionError("beta^(rho^i) is not a p-th power despite length i")
    radicands = tuple(chain[:i])
    one = arena.one()

    def unit_action(j):
        m = [0] * i
        m[j] = 1
        return (one, tuple(m))

    identity = (0, tuple(unit_action(j) for j in range(i)))

    sig_actions = []
    for j in range(i):
        m = [0] * i
        m[j] = 1
        if j < i - 1:
            m[j + 1] = 1
            sig_actions.append((one, tuple(m)))
        else:
            sig_actions.append((w, tuple(m)))
    sigma_auto = (1, tuple(sig_actions))

    xi_elt = arena.from_constant(arena.xi)
    char_autos = []
    for l in range(i):
        acts = []
        for j in range(i):
            m = [0] * i
            m[j] = 1
            acts.append((xi_elt if j == l else one, tuple(m)))
        char_autos.append((0, tuple(acts)))

    def apply_to_symbol(phi, u: FieldElement, m: tuple):
        k_phi, acts = phi
        out_u = arena.sigma_pow(u, k_phi)
        exps = [0] * i
        for l, ml in enumerate(m):
            if not ml:
                continue
            ul, mm = acts[l]
            if not ul.is_one():
                out_u = out_u * (ul ** ml)
            for tdx, coeff in enumerate(mm):
                exps[tdx] += ml * coeff
        for tdx in range(i):
            fold, rem = divmod(exps[tdx], p)
            if fold:
                out_u = out_u * (radicands[tdx] ** fold)
            exps[tdx] = rem
        return out_u, tuple(exps)

    def compose(phi, psi):
        k = (phi[0] + psi[0]) % p
        acts = tuple(apply_to_symbol(phi, u, m) for (u, m) in psi[1])
        return (k, acts)

    def keyof(auto):
        return (auto[0], tuple((u.key(), m) for (u, m) in auto[1]))

    gens = [sigma_auto] + char_autos
    elems = [identity]
    index = {keyof(identity): 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                ky = keyof(y)
                if ky not in index:
                    index[ky] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(elems)
    if n != p ** (i + 1):
        raise AssertionError(f"radical Galois group has order {n}, expected {p ** (i + 1)}")
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            table[a, b] = index[keyof(compose(elems[a], elems[b]))]
    names = [f"(k={auto[0]})" for auto in elems]
    tg = TableGroup(table, names=names)
    return RadicalGaloisGroup(
        table_group=tg,
        i=i,
        sigma_index=index[keyof(sigma_auto)],
        char_indices=tuple(index[keyof(ch)] for ch in char_autos),
        radicands=radicands,
        representative=representative,
        elements=tuple(elems),
    )
