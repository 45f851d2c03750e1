"""Building new algebras: products, subalgebras, quotients, skew reflections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .algebra import FiniteAlgebra, axiom_violations, lattice_from_order, transitive_closure, validate
from .errors import (
    AxiomViolation, IllDefinedOperation, NotCrystalline, SignatureMismatch, SpecViolation,
)


# ---------------------------------------------------------------------------
# filters and congruences

@dataclass(frozen=True)
class DeductiveFilter:
    members: frozenset
    generator: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members


def principal_filter(alg: FiniteAlgebra, b: int) -> DeductiveFilter:
    return DeductiveFilter(frozenset(alg.up_set(b)), b)


def is_deductive_filter(alg: FiniteAlgebra, G: DeductiveFilter | Iterable[int]) -> bool:
    """Up-set containing e, closed under meet and fusion."""
    S = set(G.members if isinstance(G, DeductiveFilter) else G)
    if alg.e not in S:
        return False
    for a in S:
        if any(alg.leq(a, b) and b not in S for b in range(alg.size)):
            return False
        if any(alg.meet[a][b] not in S or alg.fusion[a][b] not in S for b in S):
            return False
    return True


def _sort_filters(fs: list[DeductiveFilter]) -> list[DeductiveFilter]:
    return sorted(fs, key=lambda G: (len(G), sorted(G.members)))


def deductive_filters(alg: FiniteAlgebra, method: str = "auto") -> list[DeductiveFilter]:
    """All deductive filters, sorted by size and then by members.

    In a finite lattice every lattice filter is principal.  For
    square-increasing algebras the deductive filters are exactly ``[b)`` with
    ``b <= e``; the general path tests every principal up-set directly.
    """
    sq = all(alg.leq(a, alg.fusion[a][a]) for a in range(alg.size))
    if method == "auto":
        method = "square_increasing" if sq else "general"
    if method == "square_increasing":
        if not sq:
            raise ValueError("the down-set method needs a square-increasing algebra")
        fs = [principal_filter(alg, b) for b in alg.down_set(alg.e)]
    elif method == "general":
        fs = [G for G in (principal_filter(alg, b) for b in range(alg.size)) if is_deductive_filter(alg, G)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return _sort_filters(fs)


def lower_bound_count(alg: FiniteAlgebra) -> int:
    """Size of the down-set of e (the number of deductive filters when square-increasing)."""
    return len(alg.down_set(alg.e))


@dataclass(frozen=True)
class Congruence:
    """A partition given by block labels, normalised in order of first appearance."""
    blocks: tuple[int, ...]

    @staticmethod
    def from_labels(labels: Sequence[int]) -> "Congruence":
        seen: dict[int, int] = {}
        return Congruence(tuple(seen.setdefault(v, len(seen)) for v in labels))

    @property
    def count(self) -> int:
        return max(self.blocks) + 1 if self.blocks else 0

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for x, b in enumerate(self.blocks):
            out[b].append(x)
        return out

    def refines(self, other: "Congruence") -> bool:
        return all(other.related(a, b) for cls in self.classes() for a in cls for b in cls)


def congruence_of_filter(alg: FiniteAlgebra, G: DeductiveFilter) -> Congruence:
    A, M = alg.arrow, alg.meet
    rep: list[int] = []
    labels = []
    for a in range(alg.size):
        for i, r in enumerate(rep):
            if M[A[a][r]][A[r][a]] in G.members:
                labels.append(i)
                break
        else:
            rep.append(a)
            labels.append(len(rep) - 1)
    return Congruence.from_labels(labels)


def filter_of_congruence(alg: FiniteAlgebra, theta: Congruence) -> DeductiveFilter:
    e = alg.e
    members = frozenset(a for a in range(alg.size) if theta.related(alg.meet[a][e], e))
    gen = alg.meet_all(members)
    return DeductiveFilter(members, gen)


def _operations(alg: FiniteAlgebra):
    ops = [alg.meet, alg.join, alg.fusion, alg.arrow]
    return ops, alg.neg


def generated_congruence(alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing the pairs, by closing a union-find under the operations."""
    parent = list(range(alg.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    binary, neg = _operations(alg)
    pending = list(pairs)
    while pending:
        u, v = pending.pop()
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        parent[max(ru, rv)] = min(ru, rv)
        for T in binary:
            for c in range(alg.size):
                pending.append((T[u][c], T[v][c]))
                pending.append((T[c][u], T[c][v]))
        if neg is not None:
            pending.append((neg[u], neg[v]))
    return Congruence.from_labels([find(x) for x in range(alg.size)])


def principal_congruence(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    return generated_congruence(alg, [(a, b)])


def _join_congruences(c1: Congruence, c2: Congruence, alg: FiniteAlgebra) -> Congruence:
    pairs = [(cls[0], y) for th in (c1, c2) for cls in th.classes() for y in cls[1:]]
    return generated_congruence(alg, pairs)


def congruences(alg: FiniteAlgebra) -> list[Congruence]:
    """All congruences, by closing principal congruences under joins."""
    n = alg.size
    principal = {principal_congruence(alg, a, b) for a in range(n) for b in range(a + 1, n)}
    identity = Congruence(tuple(range(n)))
    found = {identity} | principal
    frontier = list(found)
    while frontier:
        nxt = []
        for th in frontier:
            for p in principal:
                j = _join_congruences(th, p, alg)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda th: (-th.count, th.blocks))


def quotient_by_congruence(alg: FiniteAlgebra, theta: Congruence, name: str = "") -> FiniteAlgebra:
    classes = theta.classes()
    reps = [c[0] for c in classes]
    blk = theta.blocks

    def table(T):
        out = []
        for i, ci in enumerate(classes):
            row = []
            for j, cj in enumerate(classes):
                v = blk[T[reps[i]][reps[j]]]
                for a in ci:
                    for b in cj:
                        if blk[T[a][b]] != v:
                            raise IllDefinedOperation(f"operation not compatible at ({a}, {b})")
                row.append(v)
            out.append(row)
        return out

    neg = None
    if alg.neg is not None:
        neg = []
        for c in classes:
            vals = {blk[alg.neg[a]] for a in c}
            if len(vals) != 1:
                raise IllDefinedOperation(f"negation not compatible on block {c}")
            neg.append(vals.pop())
    arrow = table(alg.arrow)
    names = [alg.label(r) for r in reps]
    return FiniteAlgebra(
        table(alg.meet), table(alg.join), table(alg.fusion), blk[alg.e], neg,
        names=names, name=name or (f"{alg.name}/theta" if alg.name else ""),
        arrow_supplied=None if alg.neg is not None else arrow,
        provenance={"quotient_of": alg.name, "blocks": list(blk)},
    )


def quotient(alg: FiniteAlgebra, G: DeductiveFilter) -> FiniteAlgebra:
    if not is_deductive_filter(alg, G):
        raise ValueError("not a deductive filter")
    q = quotient_by_congruence(alg, congruence_of_filter(alg, G))
    gen = alg.label(G.generator)
    return FiniteAlgebra(
        q.meet, q.join, q.fusion, q.e, q.neg, names=q.names,
        name=f"{alg.name}/[{gen})" if alg.name else "",
        arrow_supplied=q.arrow_supplied,
        provenance={"quotient_of": alg.name, "filter_generator": gen, "blocks": q.provenance["blocks"]},
    )


# ---------------------------------------------------------------------------
# products and subalgebras

def direct_product(factors: Sequence[FiniteAlgebra], name: str = "") -> FiniteAlgebra:
    if not factors:
        raise ValueError("empty product")
    invol = {a.neg is not None for a in factors}
    if len(invol) != 1:
        raise SignatureMismatch("cannot multiply algebras with and without an involution")
    coords = list(itertools.product(*(range(a.size) for a in factors)))
    index = {c: i for i, c in enumerate(coords)}

    def table(get):
        return [[index[tuple(get(a)[u][v] for a, u, v in zip(factors, cu, cv))] for cv in coords] for cu in coords]

    neg = None
    if invol == {True}:
        neg = [index[tuple(a.neg[u] for a, u in zip(factors, c))] for c in coords]
    arrow = None if neg is not None else table(lambda a: a.arrow)
    names = ["(" + ",".join(a.label(u) for a, u in zip(factors, c)) + ")" for c in coords]
    fnames = [a.name for a in factors]
    return FiniteAlgebra(
        table(lambda a: a.meet), table(lambda a: a.join), table(lambda a: a.fusion),
        index[tuple(a.e for a in factors)], neg, names=names,
        name=name or "x".join(fnames), arrow_supplied=arrow,
        provenance={"factors": fnames, "coordinates": [list(c) for c in coords]},
    )


class Subalgebra(NamedTuple):
    carrier: tuple[int, ...]   # carrier[i] is the element of the parent that i stands for
    algebra: FiniteAlgebra


def closure(alg: FiniteAlgebra, seed: Iterable[int]) -> list[int]:
    """Sorted carrier of the subalgebra generated by ``seed`` (e is always included)."""
    binary = [alg.meet, alg.join, alg.fusion, alg.arrow]
    members: list[int] = []
    inside = [False] * alg.size
    todo = [alg.e, *seed]
    while todo:
        a = todo.pop()
        if inside[a]:
            continue
        inside[a] = True
        members.append(a)
        if alg.neg is not None and not inside[alg.neg[a]]:
            todo.append(alg.neg[a])
        for b in members:
            for T in binary:
                for v in (T[a][b], T[b][a]):
                    if not inside[v]:
                        todo.append(v)
    return sorted(members)


def induced_subalgebra(alg: FiniteAlgebra, carrier: Sequence[int], name: str = "") -> Subalgebra:
    carrier = tuple(sorted(carrier))
    pos = {a: i for i, a in enumerate(carrier)}
    try:
        def table(T):
            return [[pos[T[a][b]] for b in carrier] for a in carrier]

        neg = [pos[alg.neg[a]] for a in carrier] if alg.neg is not None else None
        sub = FiniteAlgebra(
            table(alg.meet), table(alg.join), table(alg.fusion), pos[alg.e], neg,
            names=[alg.label(a) for a in carrier], name=name,
            arrow_supplied=None if neg is not None else table(alg.arrow),
            provenance={"subalgebra_of": alg.name, "carrier": list(carrier)},
        )
    except KeyError as exc:
        raise ValueError(f"carrier is not closed under the operations ({exc})") from None
    return Subalgebra(carrier, sub)


def subalgebra_generated(alg: FiniteAlgebra, seed: Iterable[int] = ()) -> Subalgebra:
    seed = list(seed)
    label = ",".join(alg.label(a) for a in seed)
    return induced_subalgebra(alg, closure(alg, seed), name=f"Sg({label})")


def rl_subreduct(alg: FiniteAlgebra, carrier: Sequence[int], name: str = "") -> Subalgebra:
    """Subset closed under meet, join, fusion, residual and containing e, seen as an RL."""
    carrier = tuple(sorted(carrier))
    S = set(carrier)
    for a in carrier:
        for b in carrier:
            for T in (alg.meet, alg.join, alg.fusion, alg.arrow):
                if T[a][b] not in S:
                    raise ValueError(f"carrier not closed at ({a}, {b})")
    if alg.e not in S:
        raise ValueError("carrier must contain e")
    pos = {a: i for i, a in enumerate(carrier)}

    def table(T):
        return [[pos[T[a][b]] for b in carrier] for a in carrier]

    sub = FiniteAlgebra(
        table(alg.meet), table(alg.join), table(alg.fusion), pos[alg.e], None,
        names=[alg.label(a) for a in carrier], name=name, arrow_supplied=table(alg.arrow),
    )
    return Subalgebra(carrier, sub)


# ---------------------------------------------------------------------------
# skew reflections

@dataclass(frozen=True)
class SkewOrderSpec:
    """A lattice order on ``B + B' + {0, 1}``.

    Layout: ``B`` occupies ``0..k-1``, the primed copy ``k..2k-1``, then
    ``0 = 2k`` and ``1 = 2k+1``.  ``order[i][j]`` means ``i <= j``.
    """
    b_size: int
    order: tuple[tuple[bool, ...], ...]
    carrier: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        k = self.b_size
        rows = tuple(tuple(bool(v) for v in r) for r in self.order)
        if len(rows) != 2 * k + 2 or any(len(r) != 2 * k + 2 for r in rows):
            raise SpecViolation("shape", (len(rows),))
        object.__setattr__(self, "order", rows)

    def to_dict(self) -> dict:
        return {"b_size": self.b_size, "order": [[int(v) for v in r] for r in self.order]}

    @classmethod
    def from_dict(cls, d: dict) -> "SkewOrderSpec":
        return cls(int(d["b_size"]), tuple(tuple(bool(v) for v in r) for r in d["order"]))


def _prime(k: int, b: int) -> int:
    return k + b


def skew_order_from_downset(B: FiniteAlgebra, D: Iterable[int]) -> SkewOrderSpec:
    """The order with ``b <= c'`` exactly when ``b*c`` lies in the down-set ``D``.

    ``D`` plays the role of the elements ``b`` with ``e <= b'``.
    """
    D = set(D)
    k = B.size
    n = 2 * k + 2
    R = np.zeros((n, n), dtype=bool)
    for b in range(k):
        for c in range(k):
            R[b, c] = B.leq(b, c)
            R[k + b, k + c] = B.leq(c, b)
            R[b, k + c] = B.fusion[b][c] in D
    R[2 * k, :] = True
    R[:, 2 * k + 1] = True
    R = transitive_closure(R)
    return SkewOrderSpec(k, tuple(map(tuple, R.tolist())))


def reflection_order(B: FiniteAlgebra) -> SkewOrderSpec:
    return skew_order_from_downset(B, range(B.size))


def skew_order_violations(B: FiniteAlgebra, spec: SkewOrderSpec) -> list[tuple[str, tuple]]:
    """Failed clauses of the skew-order conditions, each with a witness."""
    k = B.size
    if spec.b_size != k:
        return [("size", (spec.b_size, k))]
    R = np.array(spec.order, dtype=bool)
    n = 2 * k + 2
    out = []
    try:
        lattice_from_order(R)
    except Exception as exc:  # noqa: BLE001
        out.append(("(i) lattice", (str(exc),)))
    for b in range(k):
        for c in range(k):
            if R[b, c] != B.leq(b, c):
                out.append(("(i) restricts to B", (b, c)))
            if R[k + b, k + c] != B.leq(c, b):
                out.append(("(ii) primes reverse", (b, c)))
            if R[b, k + c] != R[B.e, k + B.fusion[b][c]]:
                out.append(("(iii) b <= c' iff e <= (bc)'", (b, c)))
            if R[k + b, c]:
                out.append(("(iv) b' not below c", (b, c)))
    for a in range(n):
        if not R[2 * k, a] or not R[a, 2 * k + 1]:
            out.append(("(v) 0 and 1 are the bounds", (a,)))
    return out


def skew_reflection(B: FiniteAlgebra, spec: SkewOrderSpec, name: str = "") -> FiniteAlgebra:
    bad = axiom_violations(B, "rl")
    if bad:
        raise AxiomViolation(bad)
    if not all(B.leq(b, B.fusion[b][b]) for b in range(B.size)):
        raise AxiomViolation([v for v in axiom_violations(B, "dunn") if v.law == "square-increasing"])
    bad = skew_order_violations(B, spec)
    if bad:
        raise SpecViolation(*bad[0])
    k = B.size
    zero, one = 2 * k, 2 * k + 1
    n = 2 * k + 2
    meet, join = lattice_from_order(spec.order)
    A = B.arrow
    fusion = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u == zero or v == zero:
                w = zero
            elif u == one or v == one:
                w = one
            elif u < k and v < k:
                w = B.fusion[u][v]
            elif u < k:
                w = k + A[u][v - k]
            elif v < k:
                w = k + A[v][u - k]
            else:
                w = one
            fusion[u][v] = w
    neg = [k + b for b in range(k)] + list(range(k)) + [one, zero]
    bn = [B.label(b) for b in range(k)]
    names = bn + [s + "'" for s in bn] + ["0", "1"]
    alg = FiniteAlgebra(meet, join, fusion, B.e, neg, names=names, name=name,
                        provenance={"skew_reflection_of": B.name})
    return validate(alg, "irl")


def reflection(B: FiniteAlgebra, name: str = "") -> FiniteAlgebra:
    return skew_reflection(B, reflection_order(B), name=name or (f"R({B.name})" if B.name else ""))


def congruence_reflect(B: FiniteAlgebra, theta: Congruence) -> Congruence:
    """The congruence of the reflection of B induced by a congruence of B."""
    c = theta.count
    labels = list(theta.blocks) + [c + t for t in theta.blocks] + [2 * c, 2 * c + 1]
    return Congruence.from_labels(labels)


def rigorous_extension(alg: FiniteAlgebra, name: str = "") -> FiniteAlgebra:
    """Adjoin a new bottom and top, the top absorbing everything but the bottom."""
    n = alg.size
    bot, top = n, n + 1
    m = n + 2
    R = np.zeros((m, m), dtype=bool)
    R[:n, :n] = alg.np_leq
    R[bot, :] = True
    R[:, top] = True
    meet, join = lattice_from_order(R)
    fusion = [[0] * m for _ in range(m)]
    for u in range(m):
        for v in range(m):
            if bot in (u, v):
                fusion[u][v] = bot
            elif top in (u, v):
                fusion[u][v] = top
            else:
                fusion[u][v] = alg.fusion[u][v]
    if alg.neg is None:
        raise SignatureMismatch("the rigorous extension is built for involutive algebras")
    neg = list(alg.neg) + [top, bot]
    names = [alg.label(a) for a in range(n)] + ["bot", "top"]
    out = FiniteAlgebra(meet, join, fusion, alg.e, neg, names=names,
                        name=name or (f"{alg.name}#" if alg.name else ""),
                        provenance={"rigorous_extension_of": alg.name})
    return validate(out, "irl")


def decompose_crystalline(alg: FiniteAlgebra) -> tuple[FiniteAlgebra, SkewOrderSpec]:
    """Split a rigorously compact algebra with a map onto C4 into ``(B, order)``.

    ``B`` is the preimage of e, ``B'`` its negation (the preimage of f).
    ``spec.carrier`` records which element of ``alg`` each slot came from.
    """
    from .catalog import build
    from .classify import classify
    from .morphisms import find_homomorphisms

    rep = classify(alg)
    if not rep.is_irl or not rep.is_rigorously_compact:
        raise NotCrystalline("decomposition needs a rigorously compact involutive algebra")
    C4 = build("C4")
    homs = find_homomorphisms(alg, C4)
    if len(homs) != 1:
        raise NotCrystalline(f"expected exactly one homomorphism onto C4, found {len(homs)}")
    h = homs[0].map
    cf = C4.index("e")
    Bset = [a for a in range(alg.size) if h[a] == cf]
    sub = rl_subreduct(alg, Bset, name=f"{alg.name}_base" if alg.name else "")
    B = sub.algebra
    k = B.size
    carrier = tuple(Bset) + tuple(alg.neg[b] for b in Bset) + (alg.bottom, alg.top)
    R = alg.np_leq[np.ix_(carrier, carrier)]
    spec = SkewOrderSpec(k, tuple(map(tuple, R.tolist())), carrier=carrier)
    return B, spec
