"""Exhaustive search for finite De Morgan monoids.

Pipeline: distributive lattice -> involution -> identity element -> fusion.
Fusion distributes over joins and the bottom is absorbing, so it is fixed by
its values on pairs of join-irreducibles.  Those values are found by
backtracking, pruned by laws every square-increasing involutive algebra obeys:

* ``j*k`` lies above ``j ^ k``;
* ``j*k <= f`` exactly when ``k <= ~j``;
* below e, fusion is meet;
* fusion is monotone.

Each complete candidate is checked in full before it is accepted.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .algebra import FiniteAlgebra, axiom_violations
from .canonical import Structure, canonical_labeling
from .errors import BudgetExceeded, Inconsistent
from .lattices import Lattice, distributive_lattices, involutions

MAX_SIZE = 7
MAX_PINNED_SIZE = 10


def fusion_completions(
    lat: Lattice,
    neg: Sequence[int],
    e: int,
    pinned: dict[tuple[int, int], int] | None = None,
) -> list[tuple[tuple[int, ...], ...]]:
    """Every fusion table making ``(lat, neg, e)`` a De Morgan monoid."""
    n, L, M, J = lat.n, lat.leq, lat.meet, lat.join
    bot = lat.bottom
    f = neg[e]
    pinned = dict(pinned or {})
    for (a, b), v in list(pinned.items()):
        if pinned.setdefault((b, a), v) != v:
            return []
    JI = lat.join_irreducibles
    below = [[j for j in JI if L[j][x]] for x in range(n)]
    pos = {j: i for i, j in enumerate(JI)}

    pairs = [(j, k) for i, j in enumerate(JI) for k in JI[i:]]
    domains: dict[tuple[int, int], list[int]] = {}
    for j, k in pairs:
        if (j, k) in pinned:
            cand = [pinned[(j, k)]]
        elif j == e:
            cand = [k]
        elif k == e:
            cand = [j]
        elif L[j][e] and L[k][e]:
            cand = [M[j][k]]
        else:
            cand = list(range(n))
        lo = M[j][k]
        if j == k:
            lo = j
        cand = [z for z in cand if L[lo][z] and L[z][f] == L[k][neg[j]]]
        if not cand:
            return []
        domains[(j, k)] = cand

    # monotonicity links: g(j',k) <= g(j,k) whenever j' < j
    lower_ji = {j: [i for i in JI if i != j and L[i][j]] for j in JI}
    order = sorted(pairs, key=lambda p: (len(domains[p]) > 1, max(pos[p[0]], pos[p[1]]), p))
    g: dict[tuple[int, int], int] = {}

    def key(a, b):
        return (a, b) if pos[a] <= pos[b] else (b, a)

    def monotone_ok(j, k, v):
        for jj in lower_ji[j]:
            w = g.get(key(jj, k))
            if w is not None and not L[w][v]:
                return False
        for kk in lower_ji[k]:
            w = g.get(key(j, kk))
            if w is not None and not L[w][v]:
                return False
        for jj in JI:
            if jj != j and L[j][jj]:
                w = g.get(key(jj, k))
                if w is not None and not L[v][w]:
                    return False
            if jj != k and L[k][jj]:
                w = g.get(key(j, jj))
                if w is not None and not L[v][w]:
                    return False
        return True

    results = []

    def full_table():
        T = [[bot] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                v = reduce(lambda a, b: J[a][b], (g[key(j, k)] for j in below[x] for k in below[y]), bot)
                T[x][y] = T[y][x] = v
        return T

    def accept(T):
        if any(T[e][x] != x for x in range(n)):
            return False
        for (a, b), v in pinned.items():
            if T[a][b] != v:
                return False
        for x in range(n):
            Tx = T[x]
            for y in range(n):
                Txy = Tx[y]
                Ty = T[y]
                for z in range(n):
                    if T[Txy][z] != Tx[Ty[z]]:
                        return False
        # involution-fusion law
        for x in range(n):
            for y in range(n):
                Txy = T[x][y]
                for z in range(n):
                    if L[Txy][z] != L[T[neg[z]][y]][neg[x]]:
                        return False
        return True

    def rec(i):
        if i == len(order):
            T = full_table()
            if accept(T):
                results.append(tuple(map(tuple, T)))
            return
        j, k = order[i]
        for v in domains[(j, k)]:
            if monotone_ok(j, k, v):
                g[(j, k)] = v
                rec(i + 1)
                del g[(j, k)]

    rec(0)
    return results


# ---------------------------------------------------------------------------
# constraint bundles

@dataclass
class ConstraintBundle:
    min_size: int = 1
    max_size: int = 5
    simple: bool = False
    si: bool = False
    fsi: bool = False
    totally_ordered: bool = False
    anti_idempotent: bool = False
    e_below_f: bool | None = None       # None: no constraint
    contains: FiniteAlgebra | None = None
    sole_proper: FiniteAlgebra | None = None
    zero_generated: bool = False
    extra: Sequence = field(default_factory=tuple)   # callables FiniteAlgebra -> bool

    def describe(self) -> dict:
        return {
            "min_size": self.min_size,
            "max_size": self.max_size,
            "simple": self.simple,
            "si": self.si,
            "fsi": self.fsi,
            "totally_ordered": self.totally_ordered,
            "anti_idempotent": self.anti_idempotent,
            "e_below_f": self.e_below_f,
            "contains": self.contains.name if self.contains is not None else None,
            "sole_proper": self.sole_proper.name if self.sole_proper is not None else None,
            "zero_generated": self.zero_generated,
        }


def _e_prefilter(lat: Lattice, neg, e: int, b: ConstraintBundle) -> bool:
    L, n = lat.leq, lat.n
    f = neg[e]
    below = [a for a in range(n) if a != e and L[a][e]]
    if n > 1 and e == lat.bottom:
        return False
    if b.simple and len(below) != 1:
        return False
    if b.si and not any(all(L[c][a] for c in below) for a in below):
        return False
    if (b.fsi or b.si or b.simple) and len(lat.lower_covers[e]) != 1:
        return False
    if b.e_below_f is True and not L[e][f]:
        return False
    if b.e_below_f is False and L[e][f]:
        return False
    return True


def _post_filter(alg: FiniteAlgebra, b: ConstraintBundle) -> bool:
    from .classify import classify
    from .morphisms import find_embeddings, is_zero_generated, sole_proper_subalgebra

    if b.anti_idempotent:
        f = alg.neg[alg.e]
        one = alg.fusion[f][f]
        if not all(alg.leq(a, one) for a in range(alg.size)):
            return False
    if b.simple or b.si or b.fsi:
        rep = classify(alg)
        if (b.simple and not rep.is_simple) or (b.si and not rep.is_si) or (b.fsi and not rep.is_fsi):
            return False
    if b.contains is not None and not find_embeddings(b.contains, alg, limit=1):
        return False
    if b.sole_proper is not None and not sole_proper_subalgebra(alg, b.sole_proper):
        return False
    if b.zero_generated and not is_zero_generated(alg):
        return False
    return all(fn(alg) for fn in b.extra)


def _triples(b: ConstraintBundle, sizes: Iterable[int]):
    """Non-isomorphic (lattice, involution, e) triples passing the cheap filters."""
    lats = distributive_lattices(max(sizes))
    out = []
    for lat in lats:
        if lat.n not in sizes:
            continue
        if b.totally_ordered and not lat.is_chain:
            continue
        seen = set()
        for sigma in involutions(lat):
            for e in range(lat.n):
                if not _e_prefilter(lat, sigma, e, b):
                    continue
                code = canonical_labeling(Structure(lat.n, rels=(lat.leq,), unary=(sigma,), consts=(e,)))[1]
                if code in seen:
                    continue
                seen.add(code)
                out.append((lat, sigma, e))
    return out


def _algebra(lat: Lattice, sigma, e, T, name="") -> FiniteAlgebra:
    return FiniteAlgebra(lat.meet, lat.join, T, e, sigma, name=name)


def _solve(task):
    lat, sigma, e, pinned, bundle = task
    out = []
    for T in fusion_completions(lat, sigma, e, pinned):
        alg = _algebra(lat, sigma, e, T)
        if axiom_violations(alg, "dmm"):
            raise AssertionError("search produced a table that is not a De Morgan monoid")
        if _post_filter(alg, bundle):
            out.append(alg)
    return out


def canonical_dedupe(algs: Iterable[FiniteAlgebra]) -> list[FiniteAlgebra]:
    """One canonical copy per isomorphism type, sorted by canonical form."""
    from .morphisms import canonical_copy, canonical_form

    by_code: dict[bytes, FiniteAlgebra] = {}
    for a in algs:
        by_code.setdefault(canonical_form(a), a)
    return [canonical_copy(by_code[c]) for c in sorted(by_code)]


def _run(tasks, jobs: int, seed: int | None):
    if seed is not None:
        random.Random(seed).shuffle(tasks)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_solve, tasks))
    else:
        chunks = [_solve(t) for t in tasks]
    return canonical_dedupe(a for c in chunks for a in c)


@dataclass
class EnumerationResult:
    algebras: list[FiniteAlgebra]
    bundle: ConstraintBundle
    seconds: float

    def manifest(self) -> dict:
        from collections import Counter
        sizes = Counter(a.size for a in self.algebras)
        return {
            "bundle": self.bundle.describe(),
            "count": len(self.algebras),
            "by_size": {str(k): sizes[k] for k in sorted(sizes)},
        }


def enumerate_dmm(bundle: ConstraintBundle, jobs: int = 1, seed: int | None = None) -> EnumerationResult:
    """All De Morgan monoids meeting the bundle, one per isomorphism type, canonically ordered."""
    if bundle.max_size > MAX_SIZE:
        raise BudgetExceeded(f"unpinned enumeration is limited to size {MAX_SIZE}")
    t0 = time.perf_counter()
    sizes = range(max(1, bundle.min_size), bundle.max_size + 1)
    tasks = [(lat, s, e, None, bundle) for lat, s, e in _triples(bundle, sizes)]
    algs = _run(tasks, jobs, seed)
    return EnumerationResult(algs, bundle, time.perf_counter() - t0)


def _base_embeddings(base: FiniteAlgebra, lat: Lattice, sigma, e: int):
    """Injective maps of the base into the lattice respecting meet, join, ~ and e."""
    n = base.size
    img = [-1] * n
    img[base.e] = e
    used = {e}
    out = []

    def rec(a):
        if a == n:
            ok = all(
                lat.meet[img[x]][img[y]] == img[base.meet[x][y]] and lat.join[img[x]][img[y]] == img[base.join[x][y]]
                for x in range(n) for y in range(n)
            ) and all(sigma[img[x]] == img[base.neg[x]] for x in range(n))
            if ok:
                out.append(tuple(img))
            return
        if img[a] != -1:
            rec(a + 1)
            return
        for v in range(lat.n):
            if v in used:
                continue
            img[a] = v
            used.add(v)
            rec(a + 1)
            used.discard(v)
            img[a] = -1

    rec(0)
    return out


def enumerate_extensions(
    base: FiniteAlgebra, bundle: ConstraintBundle, jobs: int = 1, seed: int | None = None
) -> EnumerationResult:
    """Like :func:`enumerate_dmm`, with ``base`` pinned as a subalgebra on fixed elements."""
    if bundle.max_size > MAX_PINNED_SIZE:
        raise BudgetExceeded(f"pinned enumeration is limited to size {MAX_PINNED_SIZE}")
    t0 = time.perf_counter()
    sizes = range(max(base.size, bundle.min_size), bundle.max_size + 1)
    tasks = []
    for lat, sigma, e in _triples(bundle, sizes):
        for img in _base_embeddings(base, lat, sigma, e):
            pinned = {(img[x], img[y]): img[base.fusion[x][y]] for x in range(base.size) for y in range(base.size)}
            tasks.append((lat, sigma, e, pinned, bundle))
    algs = _run(tasks, jobs, seed)
    return EnumerationResult(algs, bundle, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# completing partial tables

@dataclass
class PartialAlgebra:
    """Lattice, involution and e are fixed; fusion may have ``None`` entries."""
    leq: Sequence[Sequence[bool]]
    neg: Sequence[int]
    e: int
    fusion: dict[tuple[int, int], int]
    names: Sequence[str] | None = None
    name: str = ""


def complete_partial(p: PartialAlgebra) -> list[FiniteAlgebra]:
    """All De Morgan monoid completions of the partial fusion, up to isomorphism."""
    from .algebra import transitive_closure

    leq = transitive_closure(p.leq)
    lat = Lattice(tuple(tuple(bool(v) for v in r) for r in leq.tolist()))
    try:
        M, J = lat.meet, lat.join
    except IndexError:
        raise Inconsistent("the order is not a lattice") from None
    r = range(lat.n)
    if any(M[a][J[b][c]] != J[M[a][b]][M[a][c]] for a in r for b in r for c in r):
        raise Inconsistent("the lattice is not distributive")
    tables = fusion_completions(lat, list(p.neg), p.e, dict(p.fusion))
    if not tables:
        raise Inconsistent("no square-increasing involutive residuated completion exists")
    algs = [FiniteAlgebra(lat.meet, lat.join, T, p.e, list(p.neg), names=p.names, name=p.name) for T in tables]
    from .morphisms import canonical_form
    seen: dict[bytes, FiniteAlgebra] = {}
    for a in algs:
        seen.setdefault(canonical_form(a), a)
    return list(seen.values())
