"""Canonical labelling of small finite structures by colour refinement.

A structure is a carrier ``0..n-1`` with binary operation tables, binary
relations, unary maps and distinguished constants.  Colours are refined until
stable; ties are broken by individualising each element of the first
non-singleton cell in turn, and the least encoding over all leaves wins.
Colours only depend on isomorphism-invariant data, so the result is the same
for isomorphic inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Structure:
    n: int
    ops: tuple = ()        # binary tables whose entries are elements
    rels: tuple = ()       # binary tables of booleans
    unary: tuple = ()      # maps whose entries are elements
    consts: tuple = ()     # distinguished elements


def _rank(sigs: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(st: Structure, colors: list[int]) -> list[int]:
    n = st.n
    while True:
        sigs = []
        for x in range(n):
            parts = [colors[x], tuple(colors[u[x]] for u in st.unary)]
            for T in st.ops:
                Tx = T[x]
                parts.append(tuple(sorted((colors[y], colors[Tx[y]], colors[T[y][x]]) for y in range(n))))
            for R in st.rels:
                Rx = R[x]
                parts.append(tuple(sorted((colors[y], Rx[y], R[y][x]) for y in range(n))))
            sigs.append(tuple(parts))
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _encode(st: Structure, perm: list[int]) -> tuple:
    """Tables of the relabelled structure, ``perm[old] = new``."""
    n = st.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    out = [n]
    out += [perm[c] for c in st.consts]
    for u in st.unary:
        out += [perm[u[inv[i]]] for i in range(n)]
    for T in st.ops:
        for i in range(n):
            Ti = T[inv[i]]
            out += [perm[Ti[inv[j]]] for j in range(n)]
    for R in st.rels:
        for i in range(n):
            Ri = R[inv[i]]
            out += [1 if Ri[inv[j]] else 0 for j in range(n)]
    return tuple(out)


def canonical_labeling(st: Structure) -> tuple[list[int], tuple]:
    """Return ``(perm, code)`` where ``perm[old] = new`` and ``code`` is the encoding."""
    n = st.n
    init = [tuple(int(x == c) for c in st.consts) for x in range(n)]
    colors = _refine(st, _rank(init))
    best: list = [None, None]

    def search(colors):
        if len(set(colors)) == n:
            code = _encode(st, colors)
            if best[1] is None or code < best[1]:
                best[0], best[1] = list(colors), code
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] != target:
                continue
            split = [(c, 0 if x == v else 1) for x, c in enumerate(colors)]
            search(_refine(st, _rank(split)))

    search(colors)
    return best[0], best[1]


def to_bytes(code: tuple) -> bytes:
    return b"".join(int(v).to_bytes(2, "big") for v in code)
