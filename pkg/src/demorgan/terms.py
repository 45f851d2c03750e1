"""Terms, (quasi-)equations and a registry of standard laws.

Terms are built with Python operators::

    x, y = Var("x"), Var("y")
    x * y        # fusion
    x & y        # meet
    x | y        # join
    x >> y       # residual (x -> y)
    ~x           # involution
    x ** 3       # fusion power, x**0 == e

Python gives ``>>`` higher precedence than ``&`` and ``|``, so parenthesise.
Evaluation is vectorised with numpy over all assignments of the variables.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra
from .errors import UndefinedConnective


class Term:
    def __mul__(self, other):
        return Op("*", (self, other))

    def __and__(self, other):
        return Op("&", (self, other))

    def __or__(self, other):
        return Op("|", (self, other))

    def __rshift__(self, other):
        return Op("->", (self, other))

    def __invert__(self):
        return Op("~", (self,))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out: Term = E
        for _ in range(k):
            out = self if out is E else Op("*", (out, self))
        return out

    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        self._collect(seen)
        return tuple(seen)

    def _collect(self, seen):
        pass


@dataclass(frozen=True)
class Var(Term):
    name: str

    def _collect(self, seen):
        seen.setdefault(self.name, None)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Term):
    name: str  # e, f, 1, 0, bot, top

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Op(Term):
    op: str
    args: tuple

    def _collect(self, seen):
        for a in self.args:
            a._collect(seen)

    def __str__(self):
        if self.op == "~":
            return f"~{self.args[0]}"
        return f"({self.args[0]} {self.op} {self.args[1]})"


E, F_, ONE, ZERO, BOT, TOP = (Const(s) for s in ("e", "f", "1", "0", "bot", "top"))


def iff(a: Term, b: Term) -> Term:
    return (a >> b) & (b >> a)


# ---------------------------------------------------------------------------
# evaluation

def _const(alg: FiniteAlgebra, name: str) -> int:
    if name == "e":
        return alg.e
    if name in ("f", "1", "0"):
        if alg.neg is None:
            raise UndefinedConnective(f"constant {name} needs an involution")
        f = alg.neg[alg.e]
        one = alg.fusion[f][f]
        return {"f": f, "1": one, "0": alg.neg[one]}[name]
    if name in ("bot", "top"):
        v = alg.bottom if name == "bot" else alg.top
        if v is None:
            raise UndefinedConnective(f"constant {name} needs a bounded algebra")
        return v
    raise UndefinedConnective(f"unknown constant {name}")


def _eval_np(alg: FiniteAlgebra, t: Term, grid: dict[str, np.ndarray]):
    if isinstance(t, Var):
        return grid[t.name]
    if isinstance(t, Const):
        return np.intp(_const(alg, t.name))
    a = [_eval_np(alg, s, grid) for s in t.args]
    if t.op == "*":
        return alg.np_fusion[a[0], a[1]]
    if t.op == "&":
        return alg.np_meet[a[0], a[1]]
    if t.op == "|":
        return alg.np_join[a[0], a[1]]
    if t.op == "->":
        return alg.np_arrow[a[0], a[1]]
    if t.op == "~":
        if alg.neg is None:
            raise UndefinedConnective("~ needs an involution")
        return alg.np_neg[a[0]]
    raise UndefinedConnective(f"unknown operation {t.op}")


def evaluate(alg: FiniteAlgebra, t: Term, env: dict[str, int] | None = None) -> int:
    env = env or {}
    grid = {k: np.intp(v) for k, v in env.items()}
    return int(_eval_np(alg, t, grid))


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True)
class Atom:
    lhs: Term
    rel: str  # "=" or "<="
    rhs: Term

    def variables(self):
        return tuple(dict.fromkeys(self.lhs.variables() + self.rhs.variables()))

    def __str__(self):
        return f"{self.lhs} {self.rel} {self.rhs}"


@dataclass(frozen=True)
class Implies:
    premises: tuple[Atom, ...]
    conclusions: tuple[Atom, ...]

    def variables(self):
        vs = ()
        for a in self.premises + self.conclusions:
            vs += a.variables()
        return tuple(dict.fromkeys(vs))


@dataclass(frozen=True)
class Iff:
    left: tuple[Atom, ...]
    right: tuple[Atom, ...]

    def variables(self):
        vs = ()
        for a in self.left + self.right:
            vs += a.variables()
        return tuple(dict.fromkeys(vs))


Formula = Union[Atom, Implies, Iff]


def eq(a: Term, b: Term) -> Atom:
    return Atom(a, "=", b)


def le(a: Term, b: Term) -> Atom:
    return Atom(a, "<=", b)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: dict[str, int] | None = None

    def __bool__(self):
        return self.holds


def _grid(n: int, names: Sequence[str]) -> dict[str, np.ndarray]:
    k = len(names)
    out = {}
    for i, v in enumerate(names):
        shape = [1] * k
        shape[i] = n
        out[v] = np.arange(n, dtype=np.intp).reshape(shape)
    return out


def _truth(alg: FiniteAlgebra, atom: Atom, grid, shape) -> np.ndarray:
    a = _eval_np(alg, atom.lhs, grid)
    b = _eval_np(alg, atom.rhs, grid)
    res = (a == b) if atom.rel == "=" else alg.np_leq[a, b]
    return np.broadcast_to(res, shape)


def _conj(alg, atoms, grid, shape):
    out = np.ones(shape, dtype=bool)
    for a in atoms:
        out = out & _truth(alg, a, grid, shape)
    return out


def check_formula(alg: FiniteAlgebra, formula: Formula) -> Verdict:
    names = formula.variables()
    shape = (alg.size,) * len(names)
    grid = _grid(alg.size, names)
    if isinstance(formula, Atom):
        ok = _truth(alg, formula, grid, shape)
    elif isinstance(formula, Implies):
        ok = ~_conj(alg, formula.premises, grid, shape) | _conj(alg, formula.conclusions, grid, shape)
    else:
        ok = _conj(alg, formula.left, grid, shape) == _conj(alg, formula.right, grid, shape)
    bad = np.argwhere(~np.asarray(ok))
    if len(bad) == 0:
        return Verdict(True)
    return Verdict(False, {v: int(i) for v, i in zip(names, bad[0])})


def check_equation(alg: FiniteAlgebra, lhs: Term, rhs: Term, relation: str = "=") -> Verdict:
    return check_formula(alg, Atom(lhs, relation, rhs))


def check_quasi_equation(alg: FiniteAlgebra, premises: Sequence[Atom], conclusion: Atom) -> Verdict:
    return check_formula(alg, Implies(tuple(premises), (conclusion,)))


def holds_at(alg: FiniteAlgebra, formula: Formula, env: dict[str, int]) -> bool:
    """Truth of a formula at a single assignment (used to re-check witnesses)."""
    grid = {k: np.intp(v) for k, v in env.items()}

    def val(atom):
        return bool(_truth(alg, atom, grid, ()))

    if isinstance(formula, Atom):
        return val(formula)
    if isinstance(formula, Implies):
        return not all(map(val, formula.premises)) or all(map(val, formula.conclusions))
    return all(map(val, formula.left)) == all(map(val, formula.right))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(<->|->|<=|>=|[()*&|~^=]|[A-Za-z_][A-Za-z_0-9']*|\d+)")
_UNICODE = {"·": "*", "∧": "&", "∨": "|", "¬": "~", "→": "->", "↔": "<->", "≤": "<=", "⩽": "<="}
_CONSTS = {"e", "f", "0", "1", "bot", "top"}


def _tokens(s: str) -> list[str]:
    for k, v in _UNICODE.items():
        s = s.replace(k, v)
    out, pos = [], 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse {s[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    # loosest to tightest: -> <->, |, &, *, ^, ~
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise ValueError(f"expected {tok or 'token'}, got {t!r}")
        self.i += 1
        return t

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return left >> self.imp()
        if self.peek() == "<->":
            self.take()
            return iff(left, self.imp())
        return left

    def disj(self):
        t = self.conj()
        while self.peek() == "|":
            self.take()
            t = t | self.conj()
        return t

    def conj(self):
        t = self.prod()
        while self.peek() == "&":
            self.take()
            t = t & self.prod()
        return t

    def prod(self):
        t = self.power()
        while self.peek() == "*":
            self.take()
            t = t * self.power()
        return t

    def power(self):
        t = self.unary()
        while self.peek() == "^":
            self.take()
            t = t ** int(self.take())
        return t

    def unary(self):
        if self.peek() == "~":
            self.take()
            return ~self.unary()
        if self.peek() == "(":
            self.take()
            t = self.imp()
            self.take(")")
            return t
        tok = self.take()
        if tok in _CONSTS:
            return Const(tok)
        if tok[0].isdigit():
            raise ValueError(f"unknown numeral {tok}")
        return Var(tok)


def parse_term(s: str) -> Term:
    p = _Parser(_tokens(s))
    t = p.imp()
    if p.peek() is not None:
        raise ValueError(f"trailing input at {p.peek()!r}")
    return t


def parse_atom(s: str) -> Atom:
    toks = _tokens(s)
    for rel in ("<=", ">=", "="):
        if rel in toks:
            k = toks.index(rel)
            lhs = _Parser(toks[:k]).imp()
            rhs = _Parser(toks[k + 1:]).imp()
            return Atom(rhs, "<=", lhs) if rel == ">=" else Atom(lhs, rel, rhs)
    raise ValueError("an atom needs =, <= or >=")


# ---------------------------------------------------------------------------
# law registry

x, y, z = Var("x"), Var("y"), Var("z")


def q(t: Term) -> Term:
    return ONE >> (~t) ** 2


@dataclass(frozen=True)
class Law:
    name: str
    formulas: tuple
    needs: frozenset = frozenset()  # subset of {"neg", "square_increasing", "bounded"}

    def check(self, alg: FiniteAlgebra) -> Verdict:
        for fm in self.formulas:
            v = check_formula(alg, fm)
            if not v:
                return v
        return Verdict(True)


def _law(name, *formulas, needs=()):
    return Law(name, tuple(formulas), frozenset(needs))


RL_LAWS = (
    _law("residuation", Iff((le(x * y, z),), (le(y, x >> z),))),
    _law("modus-ponens", le(x * (x >> y), y), le(x, (x >> y) >> y)),
    _law("exchange", Iff((le(x, y >> z),), (le(y, x >> z),))),
    _law("fusion-over-join", eq(x * (y | z), (x * y) | (x * z))),
    _law("arrow-over-meet", eq(x >> (y & z), (x >> y) & (x >> z))),
    _law("join-antecedent", eq((x | y) >> z, (x >> z) & (y >> z))),
    _law("monotonicity", Implies((le(x, y),), (le(x * z, y * z), le(z >> x, z >> y), le(y >> z, x >> z)))),
    _law("order-via-identity", Iff((le(x, y),), (le(E, x >> y),))),
    _law("equality-via-identity", Iff((eq(x, y),), (le(E, iff(x, y)),))),
    _law("identity-arrow", le(E, x >> x), eq(E >> x, x)),
    _law("involution-fusion", Iff((le(x * y, z),), (le(~z * y, ~x),)), needs=("neg",)),
    _law("negation-as-residual", eq(~x, x >> F_), le(x * ~x, F_), needs=("neg",)),
    _law("contraposition", eq(x >> y, ~y >> ~x), eq(x * y, ~(x >> ~y)), needs=("neg",)),
    _law(
        "idempotence-criteria",
        Iff((le(E, x), eq(x, x * x)), (eq(x * ~x, ~x),)),
        Iff((eq(x * ~x, ~x),), (eq(x, x >> x),)),
        needs=("neg",),
    ),
    _law(
        "bounds",
        eq(x * BOT, BOT), eq(TOP >> BOT, BOT), eq(BOT >> x, TOP), eq(x >> TOP, TOP), eq(TOP * TOP, TOP),
        needs=("bounded",),
    ),
)

SQUARE_INCREASING_LAWS = (
    _law("meet-below-fusion", le(x & y, x * y), needs=("square_increasing",)),
    _law("negative-fusion-is-meet", Implies((le(x, E), le(y, E)), (eq(x * y, x & y),)), needs=("square_increasing",)),
    _law("contraction", le(x >> (x >> y), x >> y), needs=("square_increasing",)),
    _law("excluded-middle", le(E, x | ~x), needs=("square_increasing", "neg")),
    _law("cube-is-square-above-f", Implies((le(F_, x),), (eq(x ** 3, x ** 2),)), needs=("square_increasing", "neg")),
)

STANDARD_LAWS = RL_LAWS + SQUARE_INCREASING_LAWS

U_LAWS = (
    _law("square-or-negation-square", eq((x ** 2) | ((~x) ** 2), ONE), needs=("neg",)),
    _law("top-residual-splits-join", le(ONE >> (x | y), (ONE >> x) | (ONE >> y)), needs=("neg",)),
    _law(
        "q-law",
        le(ONE * x * y * q(x) * q(y), q(x * y) & q(x | y) & q(x >> y) & (ONE * (x >> y))),
        needs=("neg",),
    ),
)

M_LAWS = (
    _law("identity-below-f", le(E, F_), needs=("neg",)),
    _law("anti-idempotent", le(x, ONE), needs=("neg",)),
    _law("crystal-bound", eq(((F_ >> x) | (x >> E)) >> ZERO, ZERO), needs=("neg",)),
)

SEMILINEAR = _law("semilinear", le(E, (x >> y) | (y >> x)))


def applicable_laws(alg: FiniteAlgebra, square_increasing: bool) -> list[Law]:
    have = set()
    if alg.neg is not None:
        have.add("neg")
    if square_increasing:
        have.add("square_increasing")
    if alg.bottom is not None and alg.top is not None:
        have.add("bounded")
    return [law for law in STANDARD_LAWS if law.needs <= have]


def law_by_name(name: str) -> Law:
    for law in STANDARD_LAWS + U_LAWS + M_LAWS + (SEMILINEAR,):
        if law.name == name:
            return law
    raise KeyError(name)


def all_assignments(n: int, k: int):
    return itertools.product(range(n), repeat=k)
