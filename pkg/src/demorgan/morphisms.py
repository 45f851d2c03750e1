"""Homomorphisms, embeddings, isomorphism and retractions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import FiniteAlgebra
from .canonical import Structure, canonical_labeling, to_bytes
from .constructions import Subalgebra, closure, induced_subalgebra, subalgebra_generated
from .errors import SignatureMismatch


@dataclass(frozen=True)
class Morphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.size))

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def kernel_blocks(self) -> tuple[int, ...]:
        from .constructions import Congruence
        return Congruence.from_labels(self.map).blocks

    def verify(self) -> bool:
        return is_homomorphism(self.source, self.target, self.map)

    def then(self, other: "Morphism") -> "Morphism":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise ValueError("morphisms do not compose")
        return Morphism(self.source, other.target, tuple(other.map[v] for v in self.map))

    def to_dict(self) -> dict:
        return {"source": self.source.name, "target": self.target.name, "map": list(self.map)}


def _signature(A: FiniteAlgebra, B: FiniteAlgebra):
    if (A.neg is None) != (B.neg is None):
        raise SignatureMismatch("one algebra has an involution and the other does not")


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> bool:
    _signature(A, B)
    if len(h) != A.size or h[A.e] != B.e:
        return False
    for TA, TB in ((A.meet, B.meet), (A.join, B.join), (A.fusion, B.fusion), (A.arrow, B.arrow)):
        for a in range(A.size):
            for b in range(A.size):
                if h[TA[a][b]] != TB[h[a]][h[b]]:
                    return False
    if A.neg is not None:
        return all(h[A.neg[a]] == B.neg[h[a]] for a in range(A.size))
    return True


class _Propagator:
    """Extends a partial map along the operations, detecting clashes."""

    def __init__(self, A: FiniteAlgebra, B: FiniteAlgebra, injective: bool):
        self.A, self.B = A, B
        self.injective = injective
        self.binary = [(A.meet, B.meet), (A.join, B.join), (A.fusion, B.fusion), (A.arrow, B.arrow)]

    def extend(self, h: list[int], used: list[int], known: list[int], new: list[tuple[int, int]]):
        """Assign the pairs in ``new`` and close; returns the assigned elements or None on clash."""
        A, B = self.A, self.B
        assigned: list[int] = []
        todo = list(new)
        ok = True
        while todo and ok:
            a, b = todo.pop()
            if h[a] != -1:
                if h[a] != b:
                    ok = False
                continue
            if self.injective and used[b]:
                ok = False
                break
            h[a] = b
            used[b] += 1
            assigned.append(a)
            known.append(a)
            if A.neg is not None:
                todo.append((A.neg[a], B.neg[b]))
            for c in known:
                hc = h[c]
                for TA, TB in self.binary:
                    todo.append((TA[a][c], TB[b][hc]))
                    todo.append((TA[c][a], TB[hc][b]))
        if not ok:
            self.undo(h, used, known, assigned)
            return None
        return assigned

    def undo(self, h, used, known, assigned):
        for a in assigned:
            used[h[a]] -= 1
            h[a] = -1
        if assigned:
            del known[-len(assigned):]


def generating_sequence(A: FiniteAlgebra, start: Sequence[int] = ()) -> list[int]:
    """Greedy generators of A over the subalgebra generated by ``start``."""
    have = set(closure(A, start))
    gens: list[int] = []
    while len(have) < A.size:
        missing = [a for a in range(A.size) if a not in have]
        if A.size <= 64:
            best = max(missing, key=lambda a: (len(closure(A, list(have) + [a])), -a))
        else:
            best = missing[0]
        gens.append(best)
        have = set(closure(A, list(have) + [best]))
    return gens


def find_homomorphisms(
    A: FiniteAlgebra,
    B: FiniteAlgebra,
    *,
    fixed: dict[int, int] | None = None,
    injective: bool = False,
    surjective: bool = False,
    limit: int | None = None,
) -> list[Morphism]:
    """All homomorphisms A -> B extending ``fixed``, in lexicographic order of their maps."""
    _signature(A, B)
    fixed = dict(fixed or {})
    prop = _Propagator(A, B, injective)
    h = [-1] * A.size
    used = [0] * B.size  # preimage counts
    known: list[int] = []
    if prop.extend(h, used, known, [(A.e, B.e)] + list(fixed.items())) is None:
        return []
    gens = generating_sequence(A, list(fixed))
    found: list[Morphism] = []

    def rec(i):
        if limit is not None and len(found) >= limit:
            return
        while i < len(gens) and h[gens[i]] != -1:
            i += 1
        if i == len(gens):
            if -1 in h:
                raise AssertionError("generators did not cover the algebra")
            if surjective and not all(used):
                return
            found.append(Morphism(A, B, tuple(h)))
            return
        g = gens[i]
        for b in range(B.size):
            if injective and used[b]:
                continue
            snapshot = len(known)
            got = prop.extend(h, used, known, [(g, b)])
            if got is None:
                continue
            rec(i + 1)
            prop.undo(h, used, known, got)
            assert len(known) == snapshot

    rec(0)
    found.sort(key=lambda m: m.map)
    return found


def find_embeddings(A: FiniteAlgebra, B: FiniteAlgebra, limit: int | None = None) -> list[Morphism]:
    if A.size > B.size:
        return []
    return find_homomorphisms(A, B, injective=True, limit=limit)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Morphism | None:
    if A.size != B.size:
        return None
    hits = find_homomorphisms(A, B, injective=True, limit=1)
    return hits[0] if hits else None


# ---------------------------------------------------------------------------
# canonical forms

def _structure(A: FiniteAlgebra) -> Structure:
    unary = (A.neg,) if A.neg is not None else ()
    return Structure(A.size, ops=(A.meet, A.join, A.fusion), unary=unary, consts=(A.e,))


@lru_cache(maxsize=4096)
def _canon(A: FiniteAlgebra) -> tuple[tuple[int, ...], bytes]:
    perm, code = canonical_labeling(_structure(A))
    tag = b"I" if A.neg is not None else b"R"
    return tuple(perm), tag + to_bytes(code)


def canonical_form(A: FiniteAlgebra) -> bytes:
    """Byte encoding shared exactly by isomorphic algebras."""
    return _canon(A)[1]


def canonical_permutation(A: FiniteAlgebra) -> tuple[int, ...]:
    return _canon(A)[0]


def relabel(A: FiniteAlgebra, perm: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    """The isomorphic copy in which element ``a`` is renamed ``perm[a]``."""
    n = A.size
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old

    def table(T):
        return [[perm[T[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]

    neg = [perm[A.neg[inv[i]]] for i in range(n)] if A.neg is not None else None
    names = [A.label(inv[i]) for i in range(n)] if A.names else None
    arrow = table(A.arrow_supplied) if A.arrow_supplied is not None else None
    return FiniteAlgebra(table(A.meet), table(A.join), table(A.fusion), perm[A.e], neg,
                         names=names, name=A.name if name is None else name, arrow_supplied=arrow)


def canonical_copy(A: FiniteAlgebra) -> FiniteAlgebra:
    return relabel(A, canonical_permutation(A))


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    if A.size != B.size or (A.neg is None) != (B.neg is None):
        return False
    return canonical_form(A) == canonical_form(B)


def is_isomorphic_bruteforce(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    """Exhaustive check over all bijections fixing e (small sizes only)."""
    if A.size != B.size or (A.neg is None) != (B.neg is None):
        return False
    n = A.size
    if n > 9:
        raise ValueError("brute-force isomorphism is limited to 9 elements")
    rest_a = [a for a in range(n) if a != A.e]
    rest_b = [b for b in range(n) if b != B.e]
    for img in itertools.permutations(rest_b):
        h = [0] * n
        h[A.e] = B.e
        for a, b in zip(rest_a, img):
            h[a] = b
        if is_homomorphism(A, B, h):
            return True
    return False


# ---------------------------------------------------------------------------
# zero-generated parts, crystalline maps and retracts

def zero_generated_core(A: FiniteAlgebra) -> Subalgebra:
    return subalgebra_generated(A, ())


def is_zero_generated(A: FiniteAlgebra) -> bool:
    return len(closure(A, ())) == A.size


def homomorphisms_to_c4(A: FiniteAlgebra) -> list[Morphism]:
    from .catalog import build
    return find_homomorphisms(A, build("C4"))


def is_crystalline(A: FiniteAlgebra) -> bool:
    if A.neg is None:
        return False
    from .catalog import build
    return bool(find_homomorphisms(A, build("C4"), limit=1))


def is_retract(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[Morphism, Morphism] | None:
    """Find ``g: A -> B`` and ``h: B -> A`` with ``h`` after ``g`` the identity."""
    _signature(A, B)
    for g in find_embeddings(A, B):
        fixed = {g.map[a]: a for a in range(A.size)}
        hs = find_homomorphisms(B, A, fixed=fixed, limit=1)
        if hs:
            return g, hs[0]
    return None


def proper_subalgebras(A: FiniteAlgebra) -> list[Subalgebra]:
    """Every proper subalgebra, each listed once by carrier."""
    seen: set[tuple[int, ...]] = set()
    out: list[Subalgebra] = []
    base = tuple(closure(A, ()))
    frontier = [base]
    seen.add(base)
    while frontier:
        nxt = []
        for carrier in frontier:
            for a in range(A.size):
                if a in carrier:
                    continue
                c = tuple(closure(A, carrier + (a,)))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    for c in sorted(seen, key=lambda c: (len(c), c)):
        if len(c) < A.size:
            out.append(induced_subalgebra(A, c))
    return out


def sole_proper_subalgebra(A: FiniteAlgebra, X: FiniteAlgebra) -> bool:
    """X (up to isomorphism) is the only proper subalgebra of A."""
    subs = proper_subalgebras(A)
    return len(subs) == 1 and is_isomorphic(subs[0].algebra, X)
