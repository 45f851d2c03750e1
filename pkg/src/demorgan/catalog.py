"""Named algebras and parametric families.

Small algebras are entered as tables.  The six-element and smaller simple
extensions of C4 and D4 are given only by their Hasse diagram and a handful
of products; the remaining fusion entries are recovered by
:func:`complete_partial`, which must find exactly one completion.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable

from .algebra import FiniteAlgebra, chain_order, lattice_from_order, order_from_covers, rl_reduct, validate
from .constructions import SkewOrderSpec, reflection, rigorous_extension, skew_reflection
from .enumeration import PartialAlgebra, complete_partial
from .errors import UnknownName


def _algebra(leq, fusion, e, neg=None, names=None, name="", arrow=None) -> FiniteAlgebra:
    meet, join = lattice_from_order(leq)
    return FiniteAlgebra(meet, join, fusion, e, neg, names=names, name=name, arrow_supplied=arrow)


def _sym(n: int, e: int, bottom: int | None, entries: dict[tuple[int, int], int]) -> list[list[int]]:
    """Symmetric fusion table from a few entries, e neutral and the bottom absorbing."""
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[e][x] = T[x][e] = x
        if bottom is not None:
            T[bottom][x] = T[x][bottom] = bottom
    for (a, b), v in entries.items():
        T[a][b] = T[b][a] = v
    if any(v < 0 for row in T for v in row):
        raise ValueError("fusion table left incomplete")
    return T


# ---------------------------------------------------------------------------
# families

def build_sugihara(n: int) -> FiniteAlgebra:
    """The Sugihara chain on n elements."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n // 2
    vals = list(range(-m, 0)) + ([0] if n % 2 else []) + list(range(1, m + 1))
    e = vals.index(0 if n % 2 else 1)
    pos = {v: i for i, v in enumerate(vals)}

    def mul(a, b):
        if abs(a) != abs(b):
            return a if abs(a) > abs(b) else b
        return min(a, b)

    fusion = [[pos[mul(a, b)] for b in vals] for a in vals]
    neg = [pos[-v] for v in vals]
    return _algebra(chain_order(n), fusion, e, neg, names=[str(v) for v in vals], name=f"S_{n}")


def build_Ap(p: int) -> FiniteAlgebra:
    """Chain 0 < 1 < 2 < 4 < ... < 2^(p+1) with truncated multiplication."""
    if p < 1:
        raise ValueError("p must be positive")
    vals = [0] + [2 ** i for i in range(p + 2)]
    top = 2 ** (p + 1)
    pos = {v: i for i, v in enumerate(vals)}
    fusion = [[pos[min(a * b, top)] for b in vals] for a in vals]
    neg = [pos[top]] + [pos[2 ** (p - i)] for i in range(p + 1)] + [pos[0]]
    return _algebra(chain_order(len(vals)), fusion, 1, neg, names=[str(v) for v in vals], name=f"A_{p}")


def build_Bp(p: int) -> FiniteAlgebra:
    """Ladder ``2 x (p+1)``: powers 2^m on one rail, their negations on the other."""
    if p < 1:
        raise ValueError("p must be positive")
    # elements as (kind, exponent): ("z", 0) is the bottom, ("p", m) is 2^m, ("n", k) is ~(2^k)
    elems = [("z", 0)] + [("p", m) for m in range(p + 1)] + [("n", k) for k in range(p)]
    pos = {x: i for i, x in enumerate(elems)}

    def coord(x):
        kind, v = x
        if kind == "z":
            return (0, 0)
        if kind == "p":
            return (1, v)
        return (0, p - v)

    def mul(x, y):
        if x[0] == "z" or y[0] == "z":
            return ("z", 0)
        if x[0] == "p" and y[0] == "p":
            return ("p", min(x[1] + y[1], p))
        if x[0] == "n" and y[0] == "p":
            x, y = y, x
        if x[0] == "p":
            m, l = x[1], y[1]
            return ("n", l - m) if l >= m else ("p", p)
        k, l = x[1], y[1]
        return ("n", k + l - p) if k + l >= p else ("p", p)

    def negate(x):
        kind, v = x
        if kind == "z":
            return ("p", p)
        if kind == "p":
            return ("n", v) if v < p else ("z", 0)
        return ("p", v)

    leq = [[all(a <= b for a, b in zip(coord(x), coord(y))) for y in elems] for x in elems]
    fusion = [[pos[mul(x, y)] for y in elems] for x in elems]
    neg = [pos[negate(x)] for x in elems]
    names = ["0" if k == "z" else (f"{2 ** v}" if k == "p" else f"~{2 ** v}") for k, v in elems]
    return _algebra(leq, fusion, pos[("p", 0)], neg, names=names, name=f"B_{p}")


# ---------------------------------------------------------------------------
# small named algebras

def _two():
    # f < e, fusion is meet
    return _algebra(chain_order(2), [[0, 0], [0, 1]], 1, [1, 0], names=["f", "e"], name="two")


def _S3():
    return _algebra(chain_order(3), [[0, 0, 0], [0, 1, 2], [0, 2, 2]], 1, [2, 1, 0],
                    names=["bot", "e", "top"], name="S3")


def _C4():
    # 0 < e < f < 1
    T = _sym(4, 1, 0, {(2, 2): 3, (2, 3): 3, (3, 3): 3})
    return _algebra(chain_order(4), T, 1, [3, 2, 1, 0], names=["0", "e", "f", "1"], name="C4")


def _D4():
    leq = order_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    T = _sym(4, 1, 0, {(2, 2): 3, (2, 3): 3, (3, 3): 3})
    return _algebra(leq, T, 1, [3, 2, 1, 0], names=["0", "e", "f", "1"], name="D4")


def _T5():
    # bot, e, a, u, top with a the meet of top' and top, u = e v a = f ^ top
    B, E, A, U, T = range(5)
    leq = order_from_covers(5, [(B, E), (B, A), (E, U), (A, U), (U, T)])
    fusion = _sym(5, E, B, {
        (A, A): A, (A, U): A, (A, T): A,
        (U, U): U, (U, T): T,
        (T, T): T,
    })
    arrow = [
        [T, T, T, T, T],
        [B, E, A, U, T],
        [B, B, T, T, T],
        [B, B, A, U, T],
        [B, B, A, A, T],
    ]
    return _algebra(leq, fusion, E, names=["bot", "e", "a", "u", "top"], name="T5", arrow=arrow)


def _T6():
    # bot, e, a, u, c, top with a = top' ^ top, u = e v a, c = f ^ top
    B, E, A, U, C, T = range(6)
    leq = order_from_covers(6, [(B, E), (B, A), (E, U), (A, U), (U, C), (C, T)])
    fusion = _sym(6, E, B, {
        (A, A): A, (A, U): A, (A, C): A, (A, T): A,
        (U, U): U, (U, C): C, (U, T): T,
        (C, C): T, (C, T): T,
        (T, T): T,
    })
    arrow = [
        [T, T, T, T, T, T],
        [B, E, A, U, C, T],
        [B, B, T, T, T, T],
        [B, B, A, U, C, T],
        [B, B, A, A, U, T],
        [B, B, A, A, A, T],
    ]
    return _algebra(leq, fusion, E, names=["bot", "e", "a", "u", "c", "top"], name="T6", arrow=arrow)


def _spec_from_covers(k: int, covers) -> SkewOrderSpec:
    R = order_from_covers(2 * k + 2, covers)
    return SkewOrderSpec(k, tuple(map(tuple, R.tolist())))


def case_order(case: str) -> SkewOrderSpec:
    """Hand-entered Hasse diagrams of the four skew orders used for G3..G6.

    Slots follow the skew layout: ``B`` first, then the primed copy in the
    same order, then 0 and 1.
    """
    if case == "I":
        # B: bot < e < top
        bot, e, top, bot_, f, top_, z, o = range(8)
        covers = [(z, bot), (bot, e), (e, top), (bot, top_), (top_, f), (f, bot_), (e, f), (top, bot_), (bot_, o)]
        return _spec_from_covers(3, covers)
    if case == "II":
        # B: bot < e < c < top with c = f ^ top
        bot, e, c, top, bot_, f, c_, top_, z, o = range(10)
        covers = [(z, bot), (bot, e), (e, c), (c, top), (top_, c_), (c_, f), (f, bot_),
                  (bot, top_), (e, c_), (c, f), (top, bot_), (bot_, o)]
        return _spec_from_covers(4, covers)
    if case == "III":
        bot, e, a, u, top = range(5)
        bot_, f, a_, u_, top_, z, o = range(5, 12)
        covers = [(z, bot), (bot, e), (bot, a), (e, u), (a, u), (u, top),
                  (top_, u_), (u_, f), (u_, a_), (f, bot_), (a_, bot_),
                  (a, top_), (u, u_), (top, a_), (bot_, o)]
        return _spec_from_covers(5, covers)
    if case == "IV":
        bot, e, a, u, c, top = range(6)
        bot_, f, a_, u_, c_, top_, z, o = range(6, 14)
        covers = [(z, bot), (bot, e), (bot, a), (e, u), (a, u), (u, c), (c, top),
                  (top_, c_), (c_, u_), (u_, f), (u_, a_), (f, bot_), (a_, bot_),
                  (a, top_), (u, c_), (c, u_), (top, a_), (bot_, o)]
        return _spec_from_covers(6, covers)
    raise UnknownName(f"unknown case {case!r}")


# diagram-given extensions of C4 and D4: (covers, neg, e, known products, names)
def _partial(n, covers, neg, e, known, names, name) -> FiniteAlgebra:
    leq = order_from_covers(n, covers)
    top = n - 1
    f = neg[e]
    fusion = {(f, f): top}
    for x in range(n):
        fusion[(e, x)] = x
        fusion[(0, x)] = 0
    fusion.update(known)
    done = complete_partial(PartialAlgebra(leq, neg, e, fusion, names=names, name=name))
    if len(done) != 1:
        raise AssertionError(f"{name}: expected a unique completion, found {len(done)}")
    return done[0]


def _ext_C4(i: int) -> FiniteAlgebra:
    name = f"ext_C4_{i}"
    if i == 1:
        # 0 < e < a < f < 1, a = ~a
        z, e, a, f, o = range(5)
        return _partial(5, [(z, e), (e, a), (a, f), (f, o)], [o, f, a, e, z], e,
                        {(a, a): a, (f, a): o}, ["0", "e", "a", "f", "1"], name)
    if i in (2, 3):
        z, e, a, na, f, o = range(6)
        known = {(a, a): a, (a, na): na, (f, a): o, (na, na): o} if i == 2 else \
                {(a, a): f, (a, na): f, (f, a): o, (na, na): o}
        return _partial(6, [(z, e), (e, a), (a, na), (na, f), (f, o)], [o, f, na, a, e, z], e,
                        known, ["0", "e", "a", "~a", "f", "1"], name)
    if i == 4:
        z, e, a, na, f, o = range(6)
        return _partial(6, [(z, e), (e, a), (e, na), (a, f), (na, f), (f, o)], [o, f, na, a, e, z], e,
                        {(a, a): o, (na, na): o, (a, na): f}, ["0", "e", "a", "~a", "f", "1"], name)
    if i in (5, 6):
        # ladder: 0 < e < a on one rail, ~a < f < 1 on the other
        z, e, a, na, f, o = range(6)
        covers = [(z, e), (e, a), (na, f), (f, o), (z, na), (e, f), (a, o)]
        known = {(a, a): a, (a, na): na, (na, na): o, (f, a): o} if i == 5 else \
                {(a, a): o, (a, na): f, (na, na): o, (f, a): o}
        return _partial(6, covers, [o, f, na, a, e, z], e, known, ["0", "e", "a", "~a", "f", "1"], name)
    raise UnknownName(name)


def _ext_D4(i: int) -> FiniteAlgebra:
    name = f"ext_D4_{i}"
    # ladder: e < a < 1 on one rail, 0 < ~a < f on the other
    z, e, a, na, f, o = range(6)
    covers = [(e, a), (a, o), (z, na), (na, f), (z, e), (na, a), (f, o)]
    if i == 1:
        known = {(a, a): a, (na, na): na, (a, na): na, (f, na): o}
    elif i == 2:
        known = {(a, a): o, (na, na): f, (a, na): f, (f, na): o}
    else:
        raise UnknownName(name)
    return _partial(6, covers, [o, f, na, a, e, z], e, known, ["0", "e", "a", "~a", "f", "1"], name)


def _named(name: str) -> FiniteAlgebra:
    simple = {"two": _two, "S3": _S3, "C4": _C4, "D4": _D4, "T5": _T5, "T6": _T6}
    if name in simple:
        return simple[name]()
    if name in ("two_plus", "S3_plus", "C4_plus"):
        return rl_reduct(build(name[:-5]), name=name)
    if name == "C4_sharp":
        return rigorous_extension(build("C4"), name="C4_sharp")
    if name == "G1":
        return reflection(build("two_plus"), name="G1")
    if name == "G2":
        return reflection(build("S3_plus"), name="G2")
    bases = {"G3": ("S3_plus", "I"), "G4": ("C4_plus", "II"), "G5": ("T5", "III"), "G6": ("T6", "IV")}
    if name in bases:
        b, case = bases[name]
        return skew_reflection(build(b), case_order(case), name=name)
    if m := re.fullmatch(r"ext_C4_([1-6])", name):
        return _ext_C4(int(m.group(1)))
    if m := re.fullmatch(r"ext_D4_([12])", name):
        return _ext_D4(int(m.group(1)))
    if m := re.fullmatch(r"S_(\d+)", name):
        return build_sugihara(int(m.group(1)))
    if m := re.fullmatch(r"A_(\d+)", name):
        return build_Ap(int(m.group(1)))
    if m := re.fullmatch(r"B_(\d+)", name):
        return build_Bp(int(m.group(1)))
    raise UnknownName(f"no catalog entry named {name!r}")


NAMES = (
    "two", "S3", "C4", "D4", "two_plus", "S3_plus", "C4_plus", "C4_sharp", "T5", "T6",
    "G1", "G2", "G3", "G4", "G5", "G6",
    "ext_C4_1", "ext_C4_2", "ext_C4_3", "ext_C4_4", "ext_C4_5", "ext_C4_6",
    "ext_D4_1", "ext_D4_2",
)

FAMILIES = ("S_<n>", "A_<p>", "B_<p>")

DUNN = {"two_plus", "S3_plus", "C4_plus", "T5", "T6"}


def documented_class(name: str) -> str:
    return "dunn" if name in DUNN else "dmm"


@lru_cache(maxsize=None)
def build(name: str) -> FiniteAlgebra:
    """Build and validate a catalog algebra (names as in :data:`NAMES`, or a family member)."""
    alg = _named(name)
    if alg.name != name:
        alg = alg.with_name(name)
    return validate(alg, documented_class(name))


def catalog() -> dict[str, Callable[[], FiniteAlgebra]]:
    return {n: (lambda n=n: build(n)) for n in NAMES}
