"""Finite commutative residuated lattices, with or without an involution.

An algebra is stored as integer tables over the carrier ``0..n-1``.  The
lattice order is read off the meet table, and the residual ``->`` is always
derived: as ``~(x * ~y)`` when an involution is present, otherwise as the
largest ``y`` with ``x * y <= z``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, MalformedTable, NotInvolutive

Table = tuple[tuple[int, ...], ...]

CLASSES = ("lattice", "rl", "irl", "dunn", "dmm", "sugihara")


def _table(raw, n: int, what: str) -> Table:
    if not isinstance(raw, (list, tuple)) or len(raw) != n:
        raise MalformedTable(f"{what}: expected {n} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedTable(f"{what}: row {i} is ragged")
        rows.append(tuple(_entry(v, n, f"{what}[{i}]") for v in row))
    return tuple(rows)


def _entry(v, n: int, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise MalformedTable(f"{what}: non-integer entry {v!r}")
    if not 0 <= v < n:
        raise MalformedTable(f"{what}: entry {v} out of range")
    return int(v)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    meet: Table
    join: Table
    fusion: Table
    e: int
    neg: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = None
    name: str = ""
    arrow_supplied: Table | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.meet, (list, tuple)) or len(self.meet) == 0:
            raise MalformedTable("meet: empty or not a table")
        n = len(self.meet)
        object.__setattr__(self, "meet", _table(self.meet, n, "meet"))
        object.__setattr__(self, "join", _table(self.join, n, "join"))
        object.__setattr__(self, "fusion", _table(self.fusion, n, "fusion"))
        object.__setattr__(self, "e", _entry(self.e, n, "e"))
        if self.neg is not None:
            if not isinstance(self.neg, (list, tuple)) or len(self.neg) != n:
                raise MalformedTable("neg: wrong length")
            object.__setattr__(self, "neg", tuple(_entry(v, n, "neg") for v in self.neg))
        if self.arrow_supplied is not None:
            object.__setattr__(self, "arrow_supplied", _table(self.arrow_supplied, n, "arrow"))
        if self.names is not None:
            if len(self.names) != n:
                raise MalformedTable("names: wrong length")
            object.__setattr__(self, "names", tuple(str(s) for s in self.names))

    # identity ignores names and provenance
    @property
    def key(self) -> tuple:
        return (self.meet, self.join, self.fusion, self.e, self.neg)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        kind = "IRL" if self.neg is not None else "RL"
        return f"<FiniteAlgebra {self.name or '?'} {kind} n={self.size}>"

    @property
    def size(self) -> int:
        return len(self.meet)

    @property
    def has_neg(self) -> bool:
        return self.neg is not None

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def index(self, label: str) -> int:
        if self.names and label in self.names:
            return self.names.index(label)
        return int(label)

    # numpy views used by the vectorised checks
    @cached_property
    def np_meet(self) -> np.ndarray:
        return np.array(self.meet, dtype=np.intp)

    @cached_property
    def np_join(self) -> np.ndarray:
        return np.array(self.join, dtype=np.intp)

    @cached_property
    def np_fusion(self) -> np.ndarray:
        return np.array(self.fusion, dtype=np.intp)

    @cached_property
    def np_neg(self) -> np.ndarray:
        if self.neg is None:
            raise NotInvolutive("algebra has no involution")
        return np.array(self.neg, dtype=np.intp)

    @cached_property
    def np_leq(self) -> np.ndarray:
        M = self.np_meet
        return M == np.arange(self.size)[:, None]

    @cached_property
    def np_arrow(self) -> np.ndarray:
        return np.array(self.arrow, dtype=np.intp)

    @cached_property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(v) for v in row) for row in self.np_leq)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.meet[a][b] == a

    @cached_property
    def arrow(self) -> Table:
        """Residual table; entries are -1 where no residual exists."""
        n = self.size
        if self.neg is not None:
            F, N = self.fusion, self.neg
            return tuple(tuple(N[F[x][N[y]]] for y in range(n)) for x in range(n))
        L, F, J = self.np_leq, self.np_fusion, self.join
        rows = []
        for x in range(n):
            row = []
            for z in range(n):
                ys = np.nonzero(L[F[x], z])[0]
                row.append(reduce(lambda a, b: J[a][b], ys.tolist()) if len(ys) else -1)
            rows.append(tuple(row))
        return tuple(rows)

    def mul(self, *xs: int) -> int:
        return reduce(lambda a, b: self.fusion[a][b], xs, self.e)

    def power(self, x: int, k: int) -> int:
        out = self.e
        for _ in range(k):
            out = self.fusion[out][x]
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        if not xs:
            if self.top is None:
                raise ValueError("empty meet in an algebra without top")
            return self.top
        return reduce(lambda a, b: self.meet[a][b], xs)

    def join_all(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        if not xs:
            if self.bottom is None:
                raise ValueError("empty join in an algebra without bottom")
            return self.bottom
        return reduce(lambda a, b: self.join[a][b], xs)

    # order utilities
    @cached_property
    def bottom(self) -> int | None:
        hits = np.nonzero(self.np_leq.all(axis=1))[0]
        return int(hits[0]) if len(hits) == 1 else None

    @cached_property
    def top(self) -> int | None:
        hits = np.nonzero(self.np_leq.all(axis=0))[0]
        return int(hits[0]) if len(hits) == 1 else None

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    def down_set(self, a: int) -> list[int]:
        return [x for x in range(self.size) if self.leq(x, a)]

    def up_set(self, a: int) -> list[int]:
        return [x for x in range(self.size) if self.leq(a, x)]

    def interval(self, a: int, b: int) -> list[int]:
        return [x for x in range(self.size) if self.leq(a, x) and self.leq(x, b)]

    @cached_property
    def _covers(self) -> tuple[tuple[int, ...], ...]:
        L = self.np_leq
        strict = L & ~np.eye(self.size, dtype=bool)
        # b covers a iff a < b with nothing strictly in between
        between = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
        cov = strict & ~between
        return tuple(tuple(int(b) for b in np.nonzero(cov[a])[0]) for a in range(self.size))

    def upper_covers(self, a: int) -> tuple[int, ...]:
        return self._covers[a]

    def lower_covers(self, a: int) -> tuple[int, ...]:
        return tuple(b for b in range(self.size) if a in self._covers[b])

    def hasse_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in self._covers[a]]

    def atoms(self) -> list[int]:
        b = self.bottom
        return [] if b is None else list(self.upper_covers(b))

    def coatoms(self) -> list[int]:
        t = self.top
        return [] if t is None else list(self.lower_covers(t))

    def is_join_irreducible(self, a: int) -> bool:
        """``a = x v y`` forces ``a = x`` or ``a = y`` (and ``a`` is not the bottom)."""
        if a == self.bottom:
            return False
        return len(self.lower_covers(a)) == 1

    # serialisation
    def to_dict(self) -> dict:
        out = {
            "size": self.size,
            "meet": [list(r) for r in self.meet],
            "join": [list(r) for r in self.join],
            "fusion": [list(r) for r in self.fusion],
            "neg": list(self.neg) if self.neg is not None else None,
            "e": self.e,
            "names": list(self.names) if self.names else None,
        }
        if self.name:
            out["name"] = self.name
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteAlgebra":
        try:
            size = d["size"]
            alg = cls(
                meet=d["meet"],
                join=d["join"],
                fusion=d["fusion"],
                e=d["e"],
                neg=d.get("neg"),
                names=d.get("names"),
                name=d.get("name", ""),
                provenance=d.get("provenance") or {},
            )
        except KeyError as exc:
            raise MalformedTable(f"missing field {exc}") from None
        except TypeError as exc:
            raise MalformedTable(str(exc)) from None
        if alg.size != size:
            raise MalformedTable("size does not match the tables")
        return alg

    def with_name(self, name: str, names: Sequence[str] | None = None) -> "FiniteAlgebra":
        return FiniteAlgebra(
            self.meet, self.join, self.fusion, self.e, self.neg,
            names=names if names is not None else self.names,
            name=name, arrow_supplied=self.arrow_supplied, provenance=self.provenance,
        )


def rl_reduct(alg: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Forget the involution, keeping the residual as a supplied table."""
    return FiniteAlgebra(
        alg.meet, alg.join, alg.fusion, alg.e, None, names=alg.names,
        name=name if name is not None else (alg.name + "_plus" if alg.name else ""),
        arrow_supplied=alg.arrow,
    )


# ---------------------------------------------------------------------------
# lattices from orders

def transitive_closure(leq: Sequence[Sequence[bool]]) -> np.ndarray:
    R = np.array(leq, dtype=bool) | np.eye(len(leq), dtype=bool)
    while True:
        R2 = R | ((R.astype(np.int32) @ R.astype(np.int32)) > 0)
        if (R2 == R).all():
            return R
        R = R2


def order_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> np.ndarray:
    R = np.zeros((n, n), dtype=bool)
    for a, b in covers:
        R[a, b] = True
    return transitive_closure(R)


def lattice_from_order(leq) -> tuple[Table, Table]:
    """Meet and join tables of a partial order; raises if it is not a lattice."""
    L = np.array(leq, dtype=bool)
    n = len(L)
    if not (L.diagonal().all() and not (L & L.T & ~np.eye(n, dtype=bool)).any()):
        raise MalformedTable("relation is not antisymmetric and reflexive")
    if not (L[:, :, None] & L[None, :, :] <= L[:, None, :]).all():
        raise MalformedTable("relation is not transitive")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lows = np.nonzero(L[:, a] & L[:, b])[0]
            ups = np.nonzero(L[a] & L[b])[0]
            glb = [x for x in lows if L[lows, x].all()]
            lub = [x for x in ups if L[x, ups].all()]
            if len(glb) != 1 or len(lub) != 1:
                raise MalformedTable(f"elements {a} and {b} lack a meet or join")
            meet[a][b] = meet[b][a] = int(glb[0])
            join[a][b] = join[b][a] = int(lub[0])
    return tuple(map(tuple, meet)), tuple(map(tuple, join))


def chain_order(n: int) -> np.ndarray:
    return np.triu(np.ones((n, n), dtype=bool))


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} at {self.witness}"


def _first(mask: np.ndarray) -> tuple | None:
    """Coordinates of the first False entry of a boolean array."""
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def lattice_violations(alg: FiniteAlgebra) -> list[Violation]:
    M, J = alg.np_meet, alg.np_join
    n = alg.size
    idx = np.arange(n)
    out = []
    checks = [
        ("meet-idempotent", M[idx, idx] == idx),
        ("join-idempotent", J[idx, idx] == idx),
        ("meet-commutative", M == M.T),
        ("join-commutative", J == J.T),
        ("meet-associative", M[M, :] == M[:, M]),
        ("join-associative", J[J, :] == J[:, J]),
        ("absorption-meet", M[idx[:, None], J] == idx[:, None]),
        ("absorption-join", J[idx[:, None], M] == idx[:, None]),
    ]
    for law, mask in checks:
        w = _first(mask)
        if w is not None:
            out.append(Violation(law, w))
    return out


def forbidden_sublattice(alg: FiniteAlgebra, modular_only: bool = False) -> tuple[str, tuple] | None:
    """Find a pentagon (or, unless ``modular_only``, a diamond) sublattice.

    Returns ``(kind, (bottom, a, b, c, top))``; for the pentagon ``a < c``
    and ``b`` is the side element.
    """
    M, J, L = alg.np_meet, alg.np_join, alg.np_leq
    n = alg.size
    strict = L & ~np.eye(n, dtype=bool)
    # pentagon: a < c, a^b = c^b, avb = cvb
    for a, c in zip(*np.nonzero(strict)):
        ok = (M[a] == M[c]) & (J[a] == J[c])
        for b in np.nonzero(ok)[0]:
            if not (L[b, a] or L[a, b] or L[b, c] or L[c, b]):
                return "N5", (int(M[a, b]), int(a), int(b), int(c), int(J[a, b]))
    if modular_only:
        return None
    for a in range(n):
        for b in range(a + 1, n):
            if L[a, b] or L[b, a]:
                continue
            lo, hi = M[a, b], J[a, b]
            cs = np.nonzero((M[a] == lo) & (J[a] == hi) & (M[b] == lo) & (J[b] == hi))[0]
            for c in cs:
                if c > b and not (L[a, c] or L[c, a] or L[b, c] or L[c, b]):
                    return "M3", (int(lo), int(a), int(b), int(c), int(hi))
    return None


def _monoid_violations(alg: FiniteAlgebra) -> list[Violation]:
    F = alg.np_fusion
    n = alg.size
    out = []
    if (w := _first(F == F.T)) is not None:
        out.append(Violation("fusion-commutative", w))
    if (w := _first(F[F, :] == F[:, F])) is not None:
        out.append(Violation("fusion-associative", w))
    if (w := _first(F[alg.e] == np.arange(n))) is not None:
        out.append(Violation("identity", (alg.e,) + w))
    return out


def _residuation_violations(alg: FiniteAlgebra) -> list[Violation]:
    A = np.array(alg.arrow, dtype=np.intp)
    if (A < 0).any():
        x, z = (int(v) for v in np.argwhere(A < 0)[0])
        return [Violation("residual-exists", (x, z))]
    out = []
    if alg.arrow_supplied is not None:
        S = np.array(alg.arrow_supplied, dtype=np.intp)
        if (w := _first(S == A)) is not None:
            out.append(Violation("arrow-matches-residual", w))
    L, F = alg.np_leq, alg.np_fusion
    # x*y <= z  iff  y <= x->z, indexed [x, y, z]
    lhs = L[F[:, :, None], np.arange(alg.size)[None, None, :]]
    rhs = L[np.arange(alg.size)[None, :, None], A[:, None, :]]
    if (w := _first(lhs == rhs)) is not None:
        out.append(Violation("residuation", w))
    return out


def _involution_violations(alg: FiniteAlgebra) -> list[Violation]:
    if alg.neg is None:
        return [Violation("involution-present", ())]
    N, L, F = alg.np_neg, alg.np_leq, alg.np_fusion
    n = alg.size
    out = []
    if (w := _first(N[N] == np.arange(n))) is not None:
        out.append(Violation("double-negation", w))
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    # x*y <= z  iff  ~z*y <= ~x
    lhs = L[F[x, y], z]
    rhs = L[F[N[z], y], N[x]]
    if (w := _first(lhs == rhs)) is not None:
        out.append(Violation("involution-fusion", w))
    return out


def _square_increasing_violations(alg: FiniteAlgebra) -> list[Violation]:
    F, L = alg.np_fusion, alg.np_leq
    idx = np.arange(alg.size)
    w = _first(L[idx, F[idx, idx]])
    return [] if w is None else [Violation("square-increasing", w)]


def _distributive_violations(alg: FiniteAlgebra) -> list[Violation]:
    hit = forbidden_sublattice(alg)
    return [] if hit is None else [Violation(f"distributive ({hit[0]} sublattice)", hit[1])]


def axiom_violations(alg: FiniteAlgebra, cls: str = "dmm") -> list[Violation]:
    """Every failed axiom of the class, each with a witness tuple."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    out = lattice_violations(alg)
    if cls == "lattice":
        return out
    lattice_ok = not out
    out += _monoid_violations(alg)
    if cls in ("irl", "dmm", "sugihara"):
        out += _involution_violations(alg)
    if lattice_ok and not any(v.law == "involution-present" for v in out):
        out += _residuation_violations(alg)
    if cls in ("dunn", "dmm", "sugihara"):
        if lattice_ok:
            out += _distributive_violations(alg)
        out += _square_increasing_violations(alg)
    if cls == "sugihara":
        F = alg.np_fusion
        idx = np.arange(alg.size)
        if (w := _first(F[idx, idx] == idx)) is not None:
            out.append(Violation("idempotent", w))
    return out


def validate(raw, cls: str = "dmm") -> FiniteAlgebra:
    """Parse (if needed) and check an algebra against a class; raises on failure."""
    if isinstance(raw, FiniteAlgebra):
        alg = raw
    elif isinstance(raw, dict):
        alg = FiniteAlgebra.from_dict(raw)
    elif isinstance(raw, str):
        try:
            alg = FiniteAlgebra.from_dict(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise MalformedTable(f"invalid JSON: {exc}") from None
    else:
        raise MalformedTable(f"cannot read an algebra from {type(raw).__name__}")
    bad = axiom_violations(alg, cls)
    if bad:
        raise AxiomViolation(bad)
    return alg


def is_member(alg: FiniteAlgebra, cls: str) -> bool:
    return not axiom_violations(alg, cls)


@dataclass(frozen=True)
class DerivedConstants:
    f: int
    one: int
    zero: int
    bottom: int | None
    top: int | None


def derive(alg: FiniteAlgebra) -> DerivedConstants:
    """``f = ~e``, ``1 = f*f``, ``0 = ~1`` and the bounds when they exist."""
    if alg.neg is None:
        raise NotInvolutive("f, 1 and 0 need an involution")
    f = alg.neg[alg.e]
    one = alg.fusion[f][f]
    return DerivedConstants(f=f, one=one, zero=alg.neg[one], bottom=alg.bottom, top=alg.top)
