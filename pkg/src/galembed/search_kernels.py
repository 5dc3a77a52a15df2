"""Exhaustive-search kernels over group multiplication tables.

These are the hot inner loops of the package: generator-image searches for
isomorphisms and quotient-compatible surjections, and brute-force preimage
enumeration over all p^dim class vectors.  Each kernel is written once as a
plain array-loop function; when numba is available the same function is
compiled with @njit.  The environment flag GALEMBED_JIT selects the path
(default: compiled when numba imports; "0"/"false"/"off" forces the pure
Python/numpy fallback).  Both paths iterate in the same order and return
identical results.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba present in the dev environment
    HAVE_NUMBA = False


def jit_enabled() -> bool:
    if not HAVE_NUMBA:
        return False
    return os.environ.get("GALEMBED_JIT", "1").lower() not in ("0", "false", "off")


def _iso_pair_search(table, inv, idn, p, i, e):
    """First (s, t) generating the table group and satisfying the defining
    relations of the order-p^{i+1} extension with lift relation s^p = w^e on
    the top chain element; (-1, -1) if none."""
    n = table.shape[0]
    w = np.empty(i, np.int64)
    seen = np.empty(n, np.uint8)
    stack = np.empty(n, np.int64)
    for s in range(n):
        # s^p once per s
        sp = s
        for _ in range(p - 1):
            sp = table[sp, s]
        for t in range(n):
            # chain w[0] = t, w[j+1] = [s, w[j]]
            w[0] = t
            ok = True
            for j in range(i - 1):
                a = table[s, w[j]]
                b = table[inv[s], inv[w[j]]]
                w[j + 1] = table[a, b]
            # exponent p on the chain
            for j in range(i):
                x = w[j]
                acc = x
                for _ in range(p - 1):
                    acc = table[acc, x]
                if acc != idn:
                    ok = False
                    break
            if not ok:
                continue
            # chain elements commute pairwise
            for a in range(i):
                if not ok:
                    break
                for b in range(a + 1, i):
                    if table[w[a], w[b]] != table[w[b], w[a]]:
                        ok = False
                        break
            if not ok:
                continue
            # top of the chain is central for s
            if table[s, w[i - 1]] != table[w[i - 1], s]:
                continue
            # lift relation s^p = w[i-1]^e
            acc = idn
            for _ in range(e):
                acc = table[acc, w[i - 1]]
            if sp != acc:
                continue
            # closure of <s, t> must be everything
            for k in range(n):
                seen[k] = 0
            seen[idn] = 1
            stack[0] = idn
            top = 1
            count = 1
            while top > 0:
                top -= 1
                x = stack[top]
                y = table[x, s]
                if not seen[y]:
                    seen[y] = 1
                    stack[top] = y
                    top += 1
                    count += 1
                y = table[x, t]
                if not seen[y]:
                    seen[y] = 1
                    stack[top] = y
                    top += 1
                    count += 1
            if count == n:
                return s, t
    return -1, -1


def _gsurj_pair_search(table, inv, idn, kvals, p, i, e):
    """Like _iso_pair_search but for quotient-compatible surjections: the image
    of the distinguished lift must sit over sigma (kvals == 1) and the image of
    the module generator over the identity coset (kvals == 0)."""
    n = table.shape[0]
    w = np.empty(i, np.int64)
    seen = np.empty(n, np.uint8)
    stack = np.empty(n, np.int64)
    for s in range(n):
        if kvals[s] != 1:
            continue
        sp = s
        for _ in range(p - 1):
            sp = table[sp, s]
        for t in range(n):
            if kvals[t] != 0:
                continue
            w[0] = t
            ok = True
            for j in range(i - 1):
                a = table[s, w[j]]
                b = table[inv[s], inv[w[j]]]
                w[j + 1] = table[a, b]
            for j in range(i):
                x = w[j]
                acc = x
                for _ in range(p - 1):
                    acc = table[acc, x]
                if acc != idn:
                    ok = False
                    break
            if not ok:
                continue
            for a in range(i):
                if not ok:
                    break
                for b in range(a + 1, i):
                    if table[w[a], w[b]] != table[w[b], w[a]]:
                        ok = False
                        break
            if not ok:
                continue
            if table[s, w[i - 1]] != table[w[i - 1], s]:
                continue
            acc = idn
            for _ in range(e):
                acc = table[acc, w[i - 1]]
            if sp != acc:
                continue
            for k in range(n):
                seen[k] = 0
            seen[idn] = 1
            stack[0] = idn
            top = 1
            count = 1
            while top > 0:
                top -= 1
                x = stack[top]
                y = table[x, s]
                if not seen[y]:
                    seen[y] = 1
                    stack[top] = y
                    top += 1
                    count += 1
                y = table[x, t]
                if not seen[y]:
                    seen[y] = 1
                    stack[top] = y
                    top += 1
                    count += 1
            if count == n:
                return s, t
    return -1, -1


def _preimage_search(rmat, target, p):
    """First mixed-radix index m whose base-p digit vector x solves rmat x =
    target, scanning m = 0, 1, ...; -1 if no vector of F_p^dim works."""
    d = rmat.shape[0]
    total = 1
    for _ in range(d):
        total *= p
    x = np.zeros(d, np.int64)
    for m in range(total):
        mm = m
        for j in range(d):
            x[j] = mm % p
            mm //= p
        good = True
        for r in range(d):
            acc = 0
            for c in range(d):
                acc += rmat[r, c] * x[c]
            if acc % p != target[r]:
                good = False
                break
        if good:
            return m
    return -1


if HAVE_NUMBA:
    _iso_pair_search_jit = njit(cache=True)(_iso_pair_search)
    _gsurj_pair_search_jit = njit(cache=True)(_gsurj_pair_search)
    _preimage_search_jit = njit(cache=True)(_preimage_search)


def _prep_table(table) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(table, dtype=np.int64))


def iso_pair_search(table, inv, idn, p, i, e) -> tuple[int, int]:
    table = _prep_table(table)
    inv = _prep_table(inv)
    fn = _iso_pair_search_jit if jit_enabled() else _iso_pair_search
    s, t = fn(table, inv, int(idn), int(p), int(i), int(e))
    return int(s), int(t)


def gsurj_pair_search(table, inv, idn, kvals, p, i, e) -> tuple[int, int]:
    table = _prep_table(table)
    inv = _prep_table(inv)
    kvals = _prep_table(kvals)
    fn = _gsurj_pair_search_jit if jit_enabled() else _gsurj_pair_search
    s, t = fn(table, inv, int(idn), kvals, int(p), int(i), int(e))
    return int(s), int(t)


def preimage_search(rmat, target, p) -> int:
    rmat = _prep_table(rmat)
    target = _prep_table(np.asarray(target) % p)
    fn = _preimage_search_jit if jit_enabled() else _preimage_search
    return int(fn(rmat, target, int(p)))
