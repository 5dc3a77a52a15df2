"""Arithmetic in the group algebra F_p[G] for G = <sigma> cyclic of odd prime
order p, and structure theory of finite F_p[G]-modules.

An algebra element is a length-p coefficient vector over F_p, slot k holding
the coefficient of sigma^k; multiplication is cyclic convolution.  The
operator rho = sigma - 1 is nilpotent of degree p, and the indecomposable
modules are the quotients of the regular module by the ideals rho^i, one for
each length 1 <= i <= p.  Modules are given by the matrix of sigma on a fixed
basis; decomposition into indecomposables is the Jordan normal form of rho,
computed by deterministic kernel-chain pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_p(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


class GroupAlgebraElement:
    """An element of F_p[G], coefficients indexed by powers of sigma."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        _check_p(p)
        folded = [0] * p
        for k, c in enumerate(coeffs):
            folded[k % p] = (folded[k % p] + int(c)) % p
        self.p = p
        self.coeffs = tuple(folded)

    @classmethod
    def zero(cls, p: int) -> "GroupAlgebraElement":
        return cls(p, [])

    @classmethod
    def one(cls, p: int) -> "GroupAlgebraElement":
        return cls(p, [1])

    @classmethod
    def sigma(cls, p: int, k: int = 1) -> "GroupAlgebraElement":
        return cls(p, [0] * (k % p) + [1])

    @classmethod
    def rho(cls, p: int) -> "GroupAlgebraElement":
        """sigma - 1."""
        return cls(p, [-1, 1])

    def _coerce(self, other) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            if other.p != self.p:
                raise ValueError("mixed characteristic")
            return other
        if isinstance(other, int):
            return GroupAlgebraElement(self.p, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GroupAlgebraElement(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        out = [0] * p
        for a, ca in enumerate(self.coeffs):
            if ca:
                for b, cb in enumerate(other.coeffs):
                    if cb:
                        out[(a + b) % p] += ca * cb
        return GroupAlgebraElement(p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in F_p[G]")
        out = GroupAlgebraElement.one(self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupAlgebraElement(self.p, [other])
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}sigma" + (f"^{k}" if k > 1 else ""))
        return " + ".join(terms) if terms else "0"


def ga_normal_form(expr, p: int) -> GroupAlgebraElement:
    """Reduce a formal integer polynomial in sigma to its normal form in F_p[G].

    ``expr`` may be a GroupAlgebraElement, an int, or a sequence of integer
    coefficients (slot k multiplying sigma^k, any length, any signs); sigma^p
    folds to 1 and coefficients reduce mod p.
    """
    _check_p(p)
    if isinstance(expr, GroupAlgebraElement):
        if expr.p != p:
            raise ValueError("mixed characteristic")
        return expr
    if isinstance(expr, int):
        return GroupAlgebraElement(p, [expr])
    return GroupAlgebraElement(p, list(expr))


class FpGModule:
    """A finite F_p[G]-module: the matrix of sigma on a fixed basis.

    Invariants checked at construction: sigma^p = 1 and (sigma - 1)^p = 0.
    """

    def __init__(self, p: int, sigma, labels=None):
        _check_p(p)
        sigma = linalg.asmat(sigma, p)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise ValueError("sigma matrix must be square")
        n = sigma.shape[0]
        if not np.array_equal(linalg.mat_pow(sigma, p, p), np.eye(n, dtype=np.int64)):
            raise ValueError("sigma^p != identity")
        rho = (sigma - np.eye(n, dtype=np.int64)) % p
        if linalg.mat_pow(rho, p, p).any():
            raise ValueError("(sigma - 1)^p != 0")
        self.p = p
        self.dim = n
        self.sigma = sigma
        self.labels = tuple(labels) if labels is not None else None

    def rho(self) -> np.ndarray:
        return (self.sigma - np.eye(self.dim, dtype=np.int64)) % self.p

    def __repr__(self):
        return f"FpGModule(p={self.p}, dim={self.dim})"


def cyclic_quotient(i: int, p: int) -> FpGModule:
    """The indecomposable module of length i, on the basis 1, x, ..., x^{i-1}
    with x the image of sigma - 1 acting by multiplication (x^i = 0)."""
    _check_p(p)
    if not 1 <= i <= p:
        raise ValueError(f"length must satisfy 1 <= i <= p, got {i}")
    sigma = np.eye(i, dtype=np.int64)
    for j in range(i - 1):
        sigma[j + 1, j] = 1
    labels = ["1"] + [f"x^{j}" if j > 1 else "x" for j in range(1, i)]
    return FpGModule(p, sigma, labels)


def module_length(module: FpGModule, v) -> int:
    """Length of the cyclic submodule generated by v: least i with rho^i v = 0."""
    v = linalg.asmat(v, module.p)
    if v.shape != (module.dim,):
        raise ValueError(f"vector of dimension {v.shape} in module of dimension {module.dim}")
    rho = module.rho()
    i = 0
    w = v % module.p
    while w.any():
        w = (rho @ w) % module.p
        i += 1
        if i > module.p:
            raise AssertionError("rho is not nilpotent of degree <= p")
    return i


def module_span(module: FpGModule, generators) -> np.ndarray:
    """Basis (columns) of the F_p[G]-submodule generated by the given vectors."""
    p = module.p
    cols = []
    for g in generators:
        g = linalg.asmat(g, p)
        if g.shape != (module.dim,):
            raise ValueError("generator has wrong dimension")
        w = g % p
        for _ in range(p):
            cols.append(w)
            w = (module.sigma @ w) % p
    if not cols:
        return np.zeros((module.dim, 0), dtype=np.int64)
    return linalg.column_space_basis(np.stack(cols, axis=1), p)


def module_decompose(module: FpGModule, generators) -> list[tuple[np.ndarray, int]]:
    """Split the module generated by the given vectors into cyclic summands.

    Returns (generator, length) pairs: the generators' cyclic modules are
    independent, their direct sum is the generated module, and the lengths are
    the Jordan block sizes of rho.  Deterministic kernel-chain pivoting.
    """
    p = module.p
    basis = module_span(module, generators)
    d = basis.shape[1]
    if d == 0:
        return []
    # restrict rho to the span, in span coordinates
    rho_amb = module.rho()
    nmat = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        img = (rho_amb @ basis[:, j]) % p
        coords = linalg.solve(basis, img, p)
        assert coords is not None, "span is not sigma-stable"
        nmat[:, j] = coords
    # nilpotency index on the span
    s = 0
    power = np.eye(d, dtype=np.int64)
    while power.any():
        power = (power @ nmat) % p
        s += 1
    kernels = [np.zeros((d, 0), dtype=np.int64)]
    for j in range(1, s + 1):
        kernels.append(linalg.nullspace(linalg.mat_pow(nmat, j, p), p))
    chosen: list[tuple[np.ndarray, int]] = []
    for height in range(s, 0, -1):
        blocked = [kernels[height - 1]]
        blocked += [
            np.stack([linalg.mat_pow(nmat, h - height, p) @ w % p], axis=1)
            for (w, h) in chosen if h > height
        ]
        span = np.concatenate(blocked, axis=1) if blocked else np.zeros((d, 0), dtype=np.int64)
        for col in range(kernels[height].shape[1]):
            cand = kernels[height][:, col]
            if not linalg.in_span(span, cand, p):
                chosen.append((cand, height))
                span = np.concatenate([span, cand.reshape(-1, 1)], axis=1)
    assert sum(h for _, h in chosen) == d, "Jordan chains do not fill the span"
    out = []
    for w, h in chosen:
        out.append(((basis @ w) % p, h))
    return out


@dataclass(frozen=True)
class DualityForm:
    """The symmetric pairing B(x, y) = lam(x*y) on the length-i quotient algebra,
    lam reading the coefficient of x^{i-1}; its Gram matrix is anti-diagonal."""

    i: int
    p: int
    gram: tuple

    def lam(self, vec) -> int:
        vec = linalg.asmat(vec, self.p)
        return int(vec[self.i - 1])

    def evaluate(self, x, y) -> int:
        x = linalg.asmat(x, self.p)
        y = linalg.asmat(y, self.p)
        total = 0
        for a in range(self.i):
            b = self.i - 1 - a
            total += int(x[a]) * int(y[b])
        return total % self.p

    def gram_matrix(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)


def duality_form(i: int, p: int) -> DualityForm:
    _check_p(p)
    if not 1 <= i <= p:
        raise ValueError(f"length must satisfy 1 <= i <= p, got {i}")
    gram = np.zeros((i, i), dtype=np.int64)
    for a in range(i):
        gram[a, i - 1 - a] = 1
    return DualityForm(i=i, p=p, gram=tuple(map(tuple, gram.tolist())))
