"""Slow, definition-level reference computations used to freeze expected values.

Nothing here imports the search or canonical-form code of the package.
"""
from __future__ import annotations

import itertools

import numpy as np


def labelled_orders(n: int):
    """Partial orders on 0..n-1 contained in the natural order, with 0 bottom and n-1 top."""
    if n == 1:
        yield np.ones((1, 1), dtype=bool)
        return
    free = [(i, j) for i in range(1, n - 1) for j in range(i + 1, n - 1)]
    for bits in itertools.product((False, True), repeat=len(free)):
        L = np.eye(n, dtype=bool)
        L[0, :] = True
        L[:, n - 1] = True
        for (i, j), b in zip(free, bits):
            L[i, j] = b
        # transitive?
        if np.array_equal(L, (L.astype(int) @ L.astype(int)) > 0):
            yield L


def lattice_ops(L: np.ndarray):
    n = len(L)
    M = np.zeros((n, n), dtype=int)
    J = np.zeros((n, n), dtype=int)
    for a in range(n):
        for b in range(n):
            lows = [c for c in range(n) if L[c, a] and L[c, b]]
            glb = [c for c in lows if all(L[d, c] for d in lows)]
            ups = [c for c in range(n) if L[a, c] and L[b, c]]
            lub = [c for c in ups if all(L[c, d] for d in ups)]
            if len(glb) != 1 or len(lub) != 1:
                return None
            M[a, b], J[a, b] = glb[0], lub[0]
    return M, J


def distributive(M, J) -> bool:
    n = len(M)
    r = range(n)
    return all(M[a, J[b, c]] == J[M[a, b], M[a, c]] for a in r for b in r for c in r)


def order_involutions(L: np.ndarray):
    n = len(L)
    for p in itertools.permutations(range(n)):
        if any(p[p[a]] != a for a in range(n)):
            continue
        P = np.array(p)
        if np.array_equal(L, L[np.ix_(P, P)].T):
            yield p


def dmm_tables(L, M, J, neg, e):
    """All fusion tables making (L, neg, e) a De Morgan monoid, by direct search."""
    n = len(L)
    if n == 1:
        return [np.zeros((1, 1), dtype=int)]
    if e == 0:
        return []
    neg = np.array(neg)
    r = np.arange(n)
    X, Y, Z = r[:, None, None], r[None, :, None], r[None, None, :]
    bot = 0
    free = [(a, b) for a in range(n) for b in range(a, n) if e not in (a, b) and bot not in (a, b)]
    out = []
    for vals in itertools.product(range(n), repeat=len(free)):
        T = np.zeros((n, n), dtype=int)
        T[e, :] = r
        T[:, e] = r
        T[bot, :] = bot
        T[:, bot] = bot
        for (a, b), v in zip(free, vals):
            T[a, b] = T[b, a] = v
        # preserving binary joins and the bottom makes fusion residuated on a finite lattice
        if not np.array_equal(T[X, J[Y, Z]], J[T[X, Y], T[X, Z]]):
            continue
        if not np.array_equal(T[T[X, Y], Z], T[X, T[Y, Z]]):
            continue
        if not L[r, T[r, r]].all():
            continue
        # x*y <= z  iff  ~z * y <= ~x
        if not np.array_equal(L[T[X, Y], Z], L[T[neg[Z], Y], neg[X]]):
            continue
        out.append(T)
    return out


def canonical_key(M, T, neg, e) -> tuple:
    """Lexicographically least relabelling (brute force over all permutations)."""
    n = len(M)
    best = None
    for p in itertools.permutations(range(n)):
        P = np.array(p)
        inv = np.argsort(P)
        key = (
            int(P[e]),
            tuple(P[np.array(neg)[inv]].tolist()),
            tuple(P[M[np.ix_(inv, inv)]].ravel().tolist()),
            tuple(P[T[np.ix_(inv, inv)]].ravel().tolist()),
        )
        if best is None or key < best:
            best = key
    return best


def all_dmms(max_n: int) -> dict[int, set]:
    """Isomorphism classes of De Morgan monoids by size, as canonical keys."""
    found: dict[int, set] = {}
    for n in range(1, max_n + 1):
        found[n] = set()
        for L in labelled_orders(n):
            ops = lattice_ops(L)
            if ops is None or not distributive(*ops):
                continue
            M, J = ops
            for neg in order_involutions(L):
                for e in range(n):
                    for T in dmm_tables(L, M, J, neg, e):
                        found[n].add(canonical_key(M, T, neg, e))
    return found
