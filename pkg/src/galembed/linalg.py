"""Dense linear algebra over the prime field F_p.

Matrices are small numpy int64 arrays with entries reduced to {0, ..., p-1}.
Every routine is deterministic: pivots are chosen in fixed row/column order,
so repeated runs produce identical bases, solutions and certificates.
"""

from __future__ import annotations

import numpy as np


def asmat(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list, scanning columns left to right."""
    m = asmat(mat, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for rr in range(r, rows):
            if m[rr, c] % p:
                pr = rr
                break
        if pr < 0:
            continue
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * inv_mod(m[r, c], p)) % p
        for rr in range(rows):
            if rr != r and m[rr, c]:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m % p, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def is_consistent(mat: np.ndarray, vec: np.ndarray, p: int) -> bool:
    """Whether mat @ x = vec has a solution over F_p."""
    aug = np.concatenate([asmat(mat, p), asmat(vec, p).reshape(-1, 1)], axis=1)
    _, piv = rref(aug, p)
    return mat.shape[1] not in piv


def solve(mat: np.ndarray, vec: np.ndarray, p: int):
    """One solution of mat @ x = vec (free variables set to 0), or None."""
    mat = asmat(mat, p)
    vec = asmat(vec, p)
    aug = np.concatenate([mat, vec.reshape(-1, 1)], axis=1)
    red, piv = rref(aug, p)
    n = mat.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, n]
    return x % p


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Matrix whose columns are the canonical basis of ker(mat), one per free column."""
    mat = asmat(mat, p)
    red, piv = rref(mat, p)
    n = mat.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        basis[c, k] = 1
        for r, pc in enumerate(piv):
            basis[pc, k] = (-red[r, c]) % p
    return basis


def lex_least_solution(mat: np.ndarray, vec: np.ndarray, p: int):
    """Lexicographically least x (as a tuple of residues) with mat @ x = vec, or None.

    Greedy: each coordinate in turn is fixed to the least residue that keeps the
    remaining system consistent.
    """
    mat = asmat(mat, p)
    vec = asmat(vec, p)
    n = mat.shape[1]
    if not is_consistent(mat, vec, p):
        return None
    x = np.zeros(n, dtype=np.int64)
    resid = vec.copy()
    for j in range(n):
        rest = mat[:, j + 1:]
        for v in range(p):
            cand = (resid - v * mat[:, j]) % p
            if rest.shape[1] == 0:
                ok = not cand.any()
            else:
                ok = is_consistent(rest, cand, p)
            if ok:
                x[j] = v
                resid = cand
                break
        else:
            raise AssertionError("greedy descent lost consistency")
    return x


def mat_pow(mat: np.ndarray, k: int, p: int) -> np.ndarray:
    """mat**k over F_p (k >= 0)."""
    mat = asmat(mat, p)
    n = mat.shape[0]
    out = np.eye(n, dtype=np.int64)
    for _ in range(k):
        out = (out @ mat) % p
    return out


def in_span(cols: np.ndarray, vec: np.ndarray, p: int) -> bool:
    """Whether vec lies in the column span of cols."""
    if cols.size == 0:
        return not (asmat(vec, p).any())
    return is_consistent(cols, vec, p)


def column_space_basis(cols: np.ndarray, p: int) -> np.ndarray:
    """Subset of the given columns forming a basis of their span, in input order."""
    cols = asmat(cols, p)
    keep: list[int] = []
    cur = np.zeros((cols.shape[0], 0), dtype=np.int64)
    for j in range(cols.shape[1]):
        if not in_span(cur, cols[:, j], p):
            keep.append(j)
            cur = np.concatenate([cur, cols[:, j:j + 1]], axis=1)
    return cols[:, keep]
