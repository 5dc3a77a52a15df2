"""Dense univariate polynomials over an explicit finite field, with a fully
deterministic factorization pipeline.

A polynomial is a tuple of field-encoded coefficients, little-endian, with no
trailing zeros; () is the zero polynomial.  Factorization runs squarefree /
distinct-degree / equal-degree stages; the equal-degree split is derandomized
by drawing trial elements from the fixed integer-encoding enumeration of
polynomials, so outputs are bit-identical across runs and platforms.
"""

from __future__ import annotations

from .finitefield import FF

Poly = tuple

X: Poly = (0, 1)


def normalize(coeffs) -> Poly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def deg(f: Poly) -> int:
    return len(f) - 1


def is_zero(f: Poly) -> bool:
    return len(f) == 0


def constant(c: int) -> Poly:
    return (c,) if c else ()


def add(field: FF, f: Poly, g: Poly) -> Poly:
    out = [0] * max(len(f), len(g))
    for k, c in enumerate(f):
        out[k] = c
    for k, c in enumerate(g):
        out[k] = field.add(out[k], c)
    return normalize(out)


def neg(field: FF, f: Poly) -> Poly:
    return tuple(field.neg(c) for c in f)


def sub(field: FF, f: Poly, g: Poly) -> Poly:
    return add(field, f, neg(field, g))


def scal(field: FF, c: int, f: Poly) -> Poly:
    if c == 0:
        return ()
    return normalize([field.mul(c, a) for a in f])


def mul(field: FF, f: Poly, g: Poly) -> Poly:
    if is_zero(f) or is_zero(g):
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for a, ca in enumerate(f):
        if ca:
            for b, cb in enumerate(g):
                if cb:
                    out[a + b] = field.add(out[a + b], field.mul(ca, cb))
    return normalize(out)


def mul_many(field: FF, polys) -> Poly:
    out: Poly = (1,)
    for f in polys:
        out = mul(field, out, f)
    return out


def divmod_(field: FF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv_lead = field.inv(g[-1])
    while len(r) >= len(g) and normalize(r):
        r = list(normalize(r))
        if len(r) < len(g):
            break
        c = field.mul(r[-1], inv_lead)
        shift = len(r) - len(g)
        q[shift] = c
        for k, gc in enumerate(g):
            r[shift + k] = field.sub(r[shift + k], field.mul(c, gc))
    return normalize(q), normalize(r)


def mod(field: FF, f: Poly, g: Poly) -> Poly:
    return divmod_(field, f, g)[1]


def exact_div(field: FF, f: Poly, g: Poly) -> Poly:
    q, r = divmod_(field, f, g)
    if not is_zero(r):
        raise ValueError("division is not exact")
    return q


def monicize(field: FF, f: Poly) -> tuple[int, Poly]:
    """(leading coefficient, monic part)."""
    if is_zero(f):
        raise ValueError("zero polynomial has no monic part")
    lead = f[-1]
    if lead == 1:
        return 1, f
    return lead, scal(field, field.inv(lead), f)


def gcd_monic(field: FF, f: Poly, g: Poly) -> Poly:
    while not is_zero(g):
        f, g = g, mod(field, f, g)
    if is_zero(f):
        return ()
    return monicize(field, f)[1]


def pow_mod(field: FF, f: Poly, e: int, m: Poly) -> Poly:
    out: Poly = (1,)
    base = mod(field, f, m)
    while e:
        if e & 1:
            out = mod(field, mul(field, out, base), m)
        base = mod(field, mul(field, base, base), m)
        e >>= 1
    return out


def eval_at(field: FF, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = field.add(field.mul(acc, x), c)
    return acc


def derivative(field: FF, f: Poly) -> Poly:
    out = []
    for k in range(1, len(f)):
        c = f[k]
        m = k % field.p0
        out.append(field.mul(c, m) if m else 0)
    return normalize(out)


def encode(f: Poly, q: int) -> int:
    """Integer encoding of the coefficient tuple, base q little-endian."""
    m = 0
    for c in reversed(f):
        m = m * q + c
    return m


def decode(m: int, q: int) -> Poly:
    out = []
    while m:
        out.append(m % q)
        m //= q
    return tuple(out)


def atom_key(f: Poly, q: int) -> tuple[int, int]:
    """Deterministic sort key for monic irreducibles: (degree, encoding)."""
    return (deg(f), encode(f, q))


def is_irreducible(field: FF, f: Poly) -> bool:
    d = deg(f)
    if d < 1:
        return False
    _, f = monicize(field, f)
    xq = pow_mod(field, X, field.q ** d, f)
    if not is_zero(sub(field, xq, mod(field, X, f))):
        return False
    dd = d
    primes = []
    t = 2
    while t * t <= dd:
        if dd % t == 0:
            primes.append(t)
            while dd % t == 0:
                dd //= t
        t += 1
    if dd > 1:
        primes.append(dd)
    for r in primes:
        h = pow_mod(field, X, field.q ** (d // r), f)
        if deg(gcd_monic(field, sub(field, h, X), f)) != 0:
            return False
    return True


def _pth_root_poly(field: FF, f: Poly) -> Poly:
    """g with g^p0 = f, for f whose derivative vanishes (a p0-th power)."""
    p0 = field.p0
    out = []
    for k in range(0, len(f), p0):
        out.append(field.pow(f[k], field.q // p0) if f[k] else 0)
    return normalize(out)


def _squarefree_part(field: FF, f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f."""
    _, f = monicize(field, f)
    if deg(f) == 0:
        return (1,)
    d = derivative(field, f)
    if is_zero(d):
        return _squarefree_part(field, _pth_root_poly(field, f))
    g = gcd_monic(field, f, d)
    core = exact_div(field, f, g)
    if deg(g) == 0:
        return core
    # factors killed in f/g (multiplicity divisible by p0) are recovered from g
    rest = _squarefree_part(field, g)
    extra = exact_div(field, rest, gcd_monic(field, rest, core))
    return mul(field, core, extra)


def _equal_degree_split(field: FF, f: Poly, d: int, atoms: list) -> None:
    """Split a squarefree product of degree-d irreducibles; fixed trial order."""
    if deg(f) == d:
        atoms.append(f)
        return
    q = field.q
    exp = (q ** d - 1) // 2
    m = q  # first candidate of degree >= 1 in encoding order
    while True:
        cand = decode(m, q)
        m += 1
        if deg(cand) < 1:
            continue
        u = pow_mod(field, cand, exp, f)
        g = gcd_monic(field, sub(field, u, (1,)), f)
        if 0 < deg(g) < deg(f):
            _equal_degree_split(field, g, d, atoms)
            _equal_degree_split(field, exact_div(field, f, g), d, atoms)
            return
        if m > q ** (2 * d + 2):
            raise AssertionError("equal-degree split exhausted its candidate budget")


def factor(field: FF, f: Poly) -> tuple[int, tuple]:
    """Unit constant and sorted ((monic irreducible, multiplicity), ...) with
    f = unit * product of atoms^multiplicity.  Fully deterministic."""
    if is_zero(f):
        raise ValueError("cannot factor the zero polynomial")
    unit, f = monicize(field, f)
    counts: dict[Poly, int] = {}
    while deg(f) > 0:
        sf = _squarefree_part(field, f)
        # distinct-degree on the squarefree part
        pieces: list[tuple[Poly, int]] = []
        h = mod(field, X, sf)
        rest = sf
        d = 0
        while deg(rest) > 0:
            d += 1
            if 2 * d > deg(rest):
                pieces.append((rest, deg(rest)))
                break
            h = pow_mod(field, h, field.q, rest)
            g = gcd_monic(field, sub(field, h, mod(field, X, rest)), rest)
            if deg(g) > 0:
                pieces.append((g, d))
                rest = exact_div(field, rest, g)
                h = mod(field, h, rest)
        for piece, d in pieces:
            found: list[Poly] = []
            _equal_degree_split(field, piece, d, found)
            for atom in found:
                while True:
                    q_, r_ = divmod_(field, f, atom)
                    if not is_zero(r_):
                        break
                    f = q_
                    counts[atom] = counts.get(atom, 0) + 1
    ordered = tuple(sorted(counts.items(), key=lambda kv: atom_key(kv[0], field.q)))
    return unit, ordered


def roots(field: FF, f: Poly) -> list[int]:
    """Roots in the coefficient field, ascending in encoding order."""
    _, atoms = factor(field, f)
    out = []
    for atom, _mult in atoms:
        if deg(atom) == 1:
            out.append(field.neg(atom[0]))
    return sorted(out)
