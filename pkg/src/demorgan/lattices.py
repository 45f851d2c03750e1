"""Finite distributive lattices up to isomorphism, and their involutions.

A finite distributive lattice is the lattice of down-sets of its poset of
join-irreducibles.  Posets are grown one maximal element at a time; the down-set
lattice of ``P + x`` has ``|O(P)| + |{D in O(P) : D >= lower(x)}|`` elements, so
growth can be cut off at the size bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .canonical import Structure, canonical_labeling


@dataclass(frozen=True)
class Lattice:
    leq: tuple[tuple[bool, ...], ...]

    @property
    def n(self) -> int:
        return len(self.leq)

    @cached_property
    def meet(self) -> tuple[tuple[int, ...], ...]:
        return self._bound(lower=True)

    @cached_property
    def join(self) -> tuple[tuple[int, ...], ...]:
        return self._bound(lower=False)

    def _bound(self, lower: bool):
        n, L = self.n, self.leq
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                if lower:
                    cands = [c for c in range(n) if L[c][a] and L[c][b]]
                    best = [c for c in cands if all(L[d][c] for d in cands)]
                else:
                    cands = [c for c in range(n) if L[a][c] and L[b][c]]
                    best = [c for c in cands if all(L[c][d] for d in cands)]
                row.append(best[0])
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def bottom(self) -> int:
        return next(a for a in range(self.n) if all(self.leq[a]))

    @cached_property
    def top(self) -> int:
        return next(a for a in range(self.n) if all(self.leq[b][a] for b in range(self.n)))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        n, L = self.n, self.leq
        out = []
        for a in range(n):
            below = [b for b in range(n) if b != a and L[b][a]]
            out.append(tuple(b for b in below if not any(c != b and L[b][c] for c in below)))
        return tuple(out)

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.n) if len(self.lower_covers[a]) == 1)

    @property
    def is_chain(self) -> bool:
        return all(self.leq[a][b] or self.leq[b][a] for a in range(self.n) for b in range(self.n))


def _downsets(k: int, lower: tuple[int, ...]) -> list[int]:
    """Down-sets of a poset on ``0..k-1`` given strict lower sets as bitmasks."""
    out = []
    for mask in range(1 << k):
        if all(not (mask >> i) & 1 or (lower[i] & ~mask) == 0 for i in range(k)):
            out.append(mask)
    return out


def _lattice_of(k: int, lower: tuple[int, ...]) -> Lattice:
    ds = sorted(_downsets(k, lower), key=lambda m: (bin(m).count("1"), m))
    leq = tuple(tuple((a & ~b) == 0 for b in ds) for a in ds)
    return Lattice(leq)


def _code(lat: Lattice) -> tuple:
    return canonical_labeling(Structure(lat.n, rels=(lat.leq,)))[1]


@lru_cache(maxsize=None)
def distributive_lattices(max_size: int) -> tuple[Lattice, ...]:
    """All distributive lattices with at most ``max_size`` elements, one per isomorphism type."""
    results: dict[tuple, Lattice] = {}
    level = {(): ()}  # canonical code -> strict lower sets
    first = _lattice_of(0, ())
    results[_code(first)] = first
    k = 0
    while level:
        nxt: dict[tuple, tuple] = {}
        for lower in level.values():
            ds = _downsets(k, lower)
            for D in ds:
                size = len(ds) + sum(1 for E in ds if (D & ~E) == 0)
                if size > max_size:
                    continue
                new_lower = lower + (D,)
                lat = _lattice_of(k + 1, new_lower)
                code = _code(lat)
                if code not in results:
                    results[code] = lat
                    nxt[code] = new_lower
        level = nxt
        k += 1
    return tuple(sorted(results.values(), key=lambda L: (L.n, _code(L))))


def involutions(lat: Lattice) -> list[tuple[int, ...]]:
    """Order-reversing bijections of period two."""
    n, L = lat.n, lat.leq
    sigma = [-1] * n
    out = []

    def rec(a):
        if a == n:
            out.append(tuple(sigma))
            return
        if sigma[a] != -1:
            rec(a + 1)
            return
        for b in range(n):
            if sigma[b] != -1:
                continue
            sigma[a], sigma[b] = b, a
            if all(
                L[a][c] == L[sigma[c]][b] and L[c][a] == L[b][sigma[c]]
                and L[b][c] == L[sigma[c]][a] and L[c][b] == L[a][sigma[c]]
                for c in range(n) if sigma[c] != -1
            ):
                rec(a + 1)
            sigma[a] = -1
            sigma[b] = -1

    rec(0)
    return out
