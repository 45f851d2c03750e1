"""Named consistency checks over the catalog, grouped by topic.

Each check lists the operations it exercises so that a full run can be shown
to touch every public operation at least once.
"""
from __future__ import annotations

import io
import itertools
import json
import tempfile
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .algebra import FiniteAlgebra, derive, validate
from .catalog import NAMES, build, build_Ap, build_Bp, build_sugihara, case_order, documented_class
from .classify import classify
from .constructions import (
    congruence_of_filter, congruence_reflect, congruences, decompose_crystalline, deductive_filters,
    direct_product, filter_of_congruence, induced_subalgebra, lower_bound_count, quotient,
    quotient_by_congruence, reflection, rigorous_extension, skew_order_violations, skew_reflection,
    subalgebra_generated,
)
from .enumeration import (
    ConstraintBundle, PartialAlgebra, canonical_dedupe, complete_partial, enumerate_dmm, enumerate_extensions,
)
from .morphisms import (
    find_embeddings, find_homomorphisms, is_crystalline, is_isomorphic, is_retract, proper_subalgebras,
    zero_generated_core,
)
from .terms import applicable_laws, check_equation, parse_term

OPS = frozenset({
    "validate", "derive", "check_equation", "classify", "leq",
    "direct_product", "subalgebra_generated", "deductive_filters", "congruence_of_filter",
    "filter_of_congruence", "quotient", "skew_reflection", "reflection", "congruence_reflect",
    "rigorous_extension", "decompose_crystalline",
    "find_homomorphisms", "is_crystalline", "find_embeddings", "is_isomorphic", "is_retract",
    "zero_generated_core",
    "build", "complete_partial", "build_sugihara", "build_Ap", "build_Bp",
    "enumerate", "enumerate_extensions", "canonical_dedupe",
    "cmd_validate", "cmd_verify", "cmd_construct", "cmd_homs", "cmd_enumerate", "cmd_export",
})

GROUPS = ("catalog", "laws", "minimal", "filters", "crystalline", "counting", "skew",
          "covers", "retracts", "c4-extensions", "d4-extensions", "cli")


@dataclass(frozen=True)
class Check:
    name: str
    group: str
    claim: str
    ops: frozenset
    fn: Callable[[], str]   # returns a detail string, raises AssertionError on failure


@dataclass
class Result:
    check: Check
    ok: bool
    detail: str
    seconds: float


_CHECKS: list[Check] = []


def check(name: str, group: str, claim: str, ops: tuple[str, ...]):
    unknown = set(ops) - OPS
    if unknown:
        raise ValueError(f"{name}: unknown ops {sorted(unknown)}")

    def deco(fn):
        _CHECKS.append(Check(name, group, claim, frozenset(ops), fn))
        return fn
    return deco


def checks(groups=None) -> list[Check]:
    if not groups or "all" in groups:
        return list(_CHECKS)
    bad = set(groups) - set(GROUPS)
    if bad:
        raise KeyError(f"unknown groups: {sorted(bad)}")
    return [c for c in _CHECKS if c.group in groups]


def run(groups=None) -> list[Result]:
    out = []
    for c in checks(groups):
        t0 = time.perf_counter()
        try:
            detail, ok = c.fn(), True
        except AssertionError as exc:
            detail, ok = f"failed: {exc}", False
        out.append(Result(c, ok, detail, time.perf_counter() - t0))
    return out


def format_table(results: list[Result], timings: bool = False) -> str:
    w = max([len(r.check.name) for r in results] + [5])
    g = max([len(r.check.group) for r in results] + [5])
    lines = [f"{'check':<{w}}  {'group':<{g}}  status  detail"]
    for r in results:
        t = f" ({r.seconds:.2f}s)" if timings else ""
        lines.append(f"{r.check.name:<{w}}  {r.check.group:<{g}}  {'PASS' if r.ok else 'FAIL':<6}  {r.detail}{t}")
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"


def covered_ops(cs: list[Check] | None = None) -> frozenset:
    cs = _CHECKS if cs is None else cs
    return frozenset().union(*(c.ops for c in cs))


# ---------------------------------------------------------------------------
# helpers

def _C4() -> FiniteAlgebra:
    return build("C4")


def _bot_below_e(A: FiniteAlgebra) -> int:
    below = [a for a in A.down_set(A.e) if a != A.e]
    tops = [a for a in below if all(A.leq(b, a) for b in below)]
    assert len(tops) == 1, f"{A.name}: no largest element strictly below e"
    return tops[0]


def _designated(A: FiniteAlgebra) -> dict[str, int]:
    """bot, e, a'^top, e v (a'^top), f^top, top for a skew reflection over S3+."""
    bot = _bot_below_e(A)
    top = A.arrow[bot][bot]
    f = A.neg[A.e]
    a_ = A.neg[top]
    at = A.meet[a_][top]
    return {"bot": bot, "e": A.e, "at": at, "ea": A.join[A.e][at], "ft": A.meet[f][top], "top": top}


_ORDER = ("bot", "e", "at", "ea", "ft", "top")
# row -> column -> expected value; missing cells are not fixed by the general tables
FUSION_TABLE = {
    "bot": {c: "bot" for c in _ORDER},
    "e": {c: c for c in _ORDER},
    "at": {"at": "at", "ea": "at", "ft": "at", "top": "at"},
    "ea": {"ea": "ea", "ft": "ft", "top": "top"},
    "ft": {"top": "top"},
    "top": {"top": "top"},
}
ARROW_TABLE = {
    "bot": {c: "top" for c in _ORDER},
    "e": {c: c for c in _ORDER},
    "at": {"at": "top", "ea": "top", "ft": "top", "top": "top"},
    "ea": {"bot": "bot", "at": "at", "ea": "ea", "ft": "ft", "top": "top"},
    "ft": {"bot": "bot", "at": "at", "ft": "ea", "top": "top"},
    "top": {"bot": "bot", "e": "bot", "at": "at", "ea": "at", "ft": "at", "top": "top"},
}
# (case, operation, x, y, expected)
CASE_VALUES = [
    *[(c, "->", "ft", "e", "bot") for c in ("II", "III", "IV")],
    *[(c, "*", "ft", "ft", "top") for c in ("II", "IV")],
    *[(c, "->", x, y, "bot") for c in ("III", "IV") for x, y in (("at", "e"), ("at", "bot"), ("ea", "e"))],
    ("IV", "->", "ft", "ea", "at"),
]
CASES = {"G3": "I", "G4": "II", "G5": "III", "G6": "IV"}
SKEW_BASES = {"G3": "S3_plus", "G4": "C4_plus", "G5": "T5", "G6": "T6"}


def case_table_mismatches(A: FiniteAlgebra, case: str) -> list[tuple]:
    d = _designated(A)
    bad = []
    # fusion is commutative, so the upper triangle fixes the whole table
    for op, table, T in (("*", FUSION_TABLE, A.fusion), ("->", ARROW_TABLE, A.arrow)):
        for x, row in table.items():
            for y, want in row.items():
                if T[d[x]][d[y]] != d[want]:
                    bad.append((op, x, y, want))
                if op == "*" and T[d[y]][d[x]] != d[want]:
                    bad.append((op, y, x, want))
    for c, op, x, y, want in CASE_VALUES:
        if c != case:
            continue
        T = A.fusion if op == "*" else A.arrow
        if T[d[x]][d[y]] != d[want]:
            bad.append((op, x, y, want))
    return bad


def fiber_product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """The subalgebra of A x B on pairs with the same image in C4."""
    hA = find_homomorphisms(A, _C4())
    hB = find_homomorphisms(B, _C4())
    assert len(hA) == 1 and len(hB) == 1
    P = direct_product([A, B])
    carrier = [i * B.size + j for i in range(A.size) for j in range(B.size) if hA[0].map[i] == hB[0].map[j]]
    return induced_subalgebra(P, carrier, name=f"{A.name}x_C4{B.name}").algebra


def _simple_sole(X: FiniteAlgebra, max_size: int, min_size: int = 1) -> list[FiniteAlgebra]:
    b = ConstraintBundle(min_size=min_size, max_size=max_size, simple=True, contains=X, sole_proper=X)
    return enumerate_dmm(b).algebras


def _run_cli(argv: list[str]) -> tuple[int, str]:
    from .cli import main
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


# ---------------------------------------------------------------------------
# catalog

@check("catalog-validates", "catalog", "every named algebra validates in its documented class",
       ("build", "validate", "derive", "leq"))
def _():
    for name in NAMES:
        A = build(name)
        validate(A, documented_class(name))
        if A.neg is not None:
            c = derive(A)
            assert A.neg[c.one] == c.zero and A.fusion[A.neg[A.e]][c.f] == c.one, name
    return f"{len(NAMES)} algebras"


@check("families-validate", "catalog", "S_n, A_p and B_p members validate as De Morgan monoids",
       ("build_sugihara", "build_Ap", "build_Bp", "validate"))
def _():
    algs = [build_sugihara(n) for n in range(2, 9)] + [build_Ap(p) for p in range(2, 8)]
    algs += [build_Bp(p) for p in (2, 3, 5)]
    for A in algs:
        validate(A, "dmm")
    for n in range(2, 9):
        validate(build_sugihara(n), "sugihara")
    return f"{len(algs)} family members"


# ---------------------------------------------------------------------------
# laws

@check("standard-laws", "laws", "the derived laws hold on every catalog algebra",
       ("check_equation", "classify"))
def _():
    count = 0
    for name in NAMES:
        A = build(name)
        for law in applicable_laws(A, classify(A).is_square_increasing):
            v = law.check(A)
            assert v, f"{name}: {law.name} fails at {v.witness}"
            count += 1
    return f"{count} law instances"


@check("t5-t6-dunn", "laws", "T5 and T6 are Dunn monoids and T5 is idempotent",
       ("validate", "check_equation"))
def _():
    T5, T6 = build("T5"), build("T6")
    validate(T5, "dunn")
    validate(T6, "dunn")
    x = parse_term("x")
    assert check_equation(T5, x * x, x), "T5 is not idempotent"
    assert not check_equation(T6, x * x, x), "T6 is unexpectedly idempotent"
    return "ok"


# ---------------------------------------------------------------------------
# minimal varieties

@check("simple-zero-generated", "minimal",
       "the simple 0-generated De Morgan monoids up to size 7 are 2, C4 and D4",
       ("enumerate", "zero_generated_core", "is_isomorphic", "classify"))
def _():
    found = enumerate_dmm(ConstraintBundle(max_size=7, simple=True, zero_generated=True)).algebras
    want = [build("two"), build("C4"), build("D4")]
    assert len(found) == 3 and all(any(is_isomorphic(a, w) for a in found) for w in want), \
        f"found sizes {[a.size for a in found]}"
    for w in want:
        assert classify(w).is_simple
        assert zero_generated_core(w).algebra.size == w.size
    S3 = build("S3")
    assert classify(S3).is_simple
    return f"S3 is simple; its 0-generated subalgebra has {zero_generated_core(S3).algebra.size} element(s)"


# ---------------------------------------------------------------------------
# filters and congruences

@check("filter-congruence-duality", "filters",
       "filter and congruence maps are mutually inverse and quotients are well defined",
       ("deductive_filters", "congruence_of_filter", "filter_of_congruence", "quotient"))
def _():
    total = 0
    for name in NAMES:
        A = build(name)
        fs = deductive_filters(A)
        thetas = [congruence_of_filter(A, G) for G in fs]
        for G, th in zip(fs, thetas):
            assert filter_of_congruence(A, th).members == G.members, name
            Q = quotient(A, G)
            assert Q.size == th.count
            validate(Q, documented_class(name))
        if A.size <= 14:
            assert sorted(t.blocks for t in thetas) == sorted(t.blocks for t in congruences(A)), name
        total += len(fs)
    return f"{total} filters"


@check("sugihara-onto-S3", "filters", "each of S_4..S_8 maps onto S_3",
       ("find_homomorphisms", "build_sugihara"))
def _():
    S3 = build_sugihara(3)
    for n in range(4, 9):
        assert find_homomorphisms(build_sugihara(n), S3, surjective=True, limit=1), f"S_{n}"
    return "5 surjections"


# ---------------------------------------------------------------------------
# crystalline algebras

@check("crystalline-round-trip", "crystalline",
       "decomposing an SI crystalline catalog member and reflecting back gives an isomorphic copy",
       ("decompose_crystalline", "skew_reflection", "is_isomorphic", "is_crystalline", "classify"))
def _():
    done = []
    for name in NAMES:
        A = build(name)
        if A.neg is None:
            continue
        rep = classify(A)
        if not (rep.in_U and rep.is_si and is_crystalline(A)):
            continue
        B, spec = decompose_crystalline(A)
        assert is_isomorphic(skew_reflection(B, spec), A), name
        done.append(name)
    assert "G6" in done and "C4" in done
    return ", ".join(done)


@check("unique-hom-to-C4", "crystalline",
       "rigorously compact crystalline catalog algebras have one hom to C4 with singleton end fibres",
       ("find_homomorphisms", "is_crystalline", "classify", "derive"))
def _():
    C4 = _C4()
    c = derive(C4)
    seen = []
    for name in NAMES:
        A = build(name)
        if A.neg is None or not classify(A).is_rigorously_compact or not is_crystalline(A):
            continue
        hs = find_homomorphisms(A, C4)
        assert len(hs) == 1, f"{name}: {len(hs)} homs"
        assert hs[0].map.count(c.zero) == 1 and hs[0].map.count(c.one) == 1, name
        seen.append(name)
    return f"{len(seen)} algebras"


@check("reflection-basics", "crystalline",
       "R(trivial) is C4, R(2+) is G1, and congruences reflect through quotients",
       ("reflection", "congruence_reflect", "is_isomorphic", "subalgebra_generated"))
def _():
    triv = subalgebra_generated(build("two_plus"), ()).algebra
    assert triv.size == 1
    assert is_isomorphic(reflection(triv), _C4())
    assert is_isomorphic(reflection(build("two_plus")), build("G1"))
    B = build("T6")
    RB = reflection(B)
    for th in congruences(B):
        lifted = congruence_reflect(B, th)
        assert is_isomorphic(quotient_by_congruence(RB, lifted), reflection(quotient_by_congruence(B, th)))
    return "ok"


# ---------------------------------------------------------------------------
# counting

@check("lower-bound-counting", "counting",
       "products multiply and skew reflections add one to |(e]|, giving 2*2*(2^4+1) = 68",
       ("direct_product", "reflection", "skew_reflection"))
def _():
    for a, b in itertools.combinations_with_replacement(["two", "C4", "D4", "S3", "G1"], 2):
        A, B = build(a), build(b)
        assert lower_bound_count(direct_product([A, B])) == lower_bound_count(A) * lower_bound_count(B)
    for g, base in SKEW_BASES.items():
        assert lower_bound_count(build(g)) == lower_bound_count(build(base)) + 1, g
    p4 = direct_product([build("two_plus")] * 4)
    R = reflection(p4)
    assert lower_bound_count(R) == 17
    big = direct_product([build("two"), build("D4"), R])
    n = lower_bound_count(big)
    assert n == 68, n
    return f"|(e]| = {n} on {big.size} elements"


# ---------------------------------------------------------------------------
# skew reflections over S3+

@check("case-orders", "skew", "the four hand-entered orders are valid skew orders on their bases",
       ("skew_reflection",))
def _():
    for g, case in CASES.items():
        B = build(SKEW_BASES[g])
        bad = skew_order_violations(B, case_order(case))
        assert not bad, f"{g}: {bad[:3]}"
    return "4 orders"


@check("case-tables", "skew",
       "fusion and residuation on the designated elements of G3..G6 match the expected tables",
       ("build",))
def _():
    for g, case in CASES.items():
        bad = case_table_mismatches(build(g), case)
        assert not bad, f"{g}: {bad[:4]}"
    return "G3..G6 match cell for cell"


# ---------------------------------------------------------------------------
# covers of V(C4)

@check("six-covers", "covers",
       "G1..G6 are SI members of M with 3 filters, sole proper subalgebra C4 and quotient C4",
       ("classify", "deductive_filters", "quotient", "is_isomorphic", "find_embeddings"))
def _():
    C4 = _C4()
    for g in ("G1", "G2", "G3", "G4", "G5", "G6"):
        A = build(g)
        rep = classify(A)
        assert rep.is_si and rep.in_M, g
        fs = deductive_filters(A)
        assert len(fs) == 3, g
        subs = proper_subalgebras(A)
        assert len(subs) == 1 and is_isomorphic(subs[0].algebra, C4), g
        assert find_embeddings(C4, A, limit=1)
        qs = [quotient(A, G) for G in fs]
        mid = [Q for Q in qs if 1 < Q.size < A.size]
        assert len(mid) == 1 and is_isomorphic(mid[0], C4), g
    return "6 algebras"


# ---------------------------------------------------------------------------
# retracts

@check("c4-retracts", "retracts",
       "C4 is a retract of every nontrivial catalog member of M and of sampled products over G1..G6, C4",
       ("is_retract", "direct_product", "classify"))
def _():
    C4 = _C4()
    n = 0
    for name in NAMES:
        A = build(name)
        if A.neg is None or A.size < 2 or not classify(A).in_M:
            continue
        assert is_retract(C4, A) is not None, name
        n += 1
    pool = ["C4", "G1", "G2", "G3", "G4", "G5", "G6"]
    for a, b in [("G1", "G2"), ("C4", "G3"), ("G4", "G5"), ("G6", "G1"), ("G3", "G3")]:
        A, B = build(a), build(b)
        P = direct_product([A, B])
        assert is_retract(C4, P) is not None, (a, b)
        F = fiber_product(A, B)
        validate(F, "dmm")
        assert is_retract(C4, F) is not None, (a, b)
        n += 2
    assert set(pool) <= set(NAMES)
    return f"{n} retractions"


# ---------------------------------------------------------------------------
# simple extensions of C4

@check("c4-extensions", "c4-extensions",
       "there are exactly 8 simple DMMs of size <= 6 with sole proper subalgebra C4, and none of size 7",
       ("enumerate", "canonical_dedupe", "is_isomorphic", "complete_partial", "build_Ap"))
def _():
    C4 = _C4()
    small = _simple_sole(C4, 6)
    assert len(small) == 8, len(small)
    named = [build(f"ext_C4_{i}") for i in range(1, 7)] + [build_Ap(2), build_Ap(3)]
    assert len(canonical_dedupe(named)) == 8
    assert all(any(is_isomorphic(a, b) for b in named) for a in small)
    seven = _simple_sole(C4, 7, min_size=7)
    assert not seven, len(seven)
    return "8 of size <= 6, 0 of size 7"


@check("A_p-family", "c4-extensions",
       "A_p is a simple chain of size p+3 with sole proper subalgebra C4 for p = 2, 3, 5, 7; A_4 is not",
       ("build_Ap", "classify"))
def _():
    C4 = _C4()
    for p in (2, 3, 5, 7):
        A = build_Ap(p)
        rep = classify(A)
        assert rep.is_simple and rep.is_totally_ordered and A.size == p + 3, p
        subs = proper_subalgebras(A)
        assert len(subs) == 1 and is_isomorphic(subs[0].algebra, C4), p
    sizes = [s.algebra.size for s in proper_subalgebras(build_Ap(4))]
    assert 5 in sizes, sizes
    return f"A_4 proper subalgebra sizes {sizes}"


@check("even-sizes", "c4-extensions",
       "simple chains up to size 8 whose only proper subalgebra is C4 have sizes 5, 6 or 8",
       ("enumerate_extensions",))
def _():
    C4 = _C4()
    b = ConstraintBundle(min_size=5, max_size=8, simple=True, totally_ordered=True, sole_proper=C4)
    res = enumerate_extensions(C4, b)
    sizes = sorted({a.size for a in res.algebras})
    assert set(sizes) <= {5, 6, 8}, sizes
    return f"sizes {sizes}"


@check("partial-completion", "c4-extensions", "a partial table with one known product completes uniquely",
       ("complete_partial",))
def _():
    A = build("ext_C4_1")
    known = {(A.e, x): x for x in range(A.size)}
    f = A.neg[A.e]
    known[(f, f)] = A.fusion[f][f]
    p = PartialAlgebra(A.np_leq.tolist(), list(A.neg), A.e, known)
    done = complete_partial(p)
    assert any(is_isomorphic(d, A) for d in done)
    return f"{len(done)} completion(s)"


# ---------------------------------------------------------------------------
# simple extensions of D4

@check("d4-extensions", "d4-extensions",
       "exactly 2 simple DMMs of size 6 have D4 as sole proper subalgebra",
       ("enumerate", "is_isomorphic"))
def _():
    D4 = build("D4")
    found = _simple_sole(D4, 6, min_size=6)
    assert len(found) == 2, len(found)
    for i in (1, 2):
        assert any(is_isomorphic(a, build(f"ext_D4_{i}")) for a in found)
    return "2 algebras"


@check("B_p-family", "d4-extensions",
       "B_p is simple, rigorously compact, with sole proper subalgebra D4; B_2 is ext_D4_2",
       ("build_Bp", "classify", "rigorous_extension", "is_isomorphic"))
def _():
    D4 = build("D4")
    for p in (2, 3, 5):
        B = build_Bp(p)
        rep = classify(B)
        assert rep.is_simple and rep.is_rigorously_compact, p
        subs = proper_subalgebras(B)
        assert len(subs) == 1 and is_isomorphic(subs[0].algebra, D4), p
    assert is_isomorphic(build_Bp(2), build("ext_D4_2"))
    sharp = rigorous_extension(_C4())
    assert classify(sharp).is_rigorously_compact and is_isomorphic(sharp, build("C4_sharp"))
    return "ok"


# ---------------------------------------------------------------------------
# command line

@check("cli-round-trip", "cli", "the command line reproduces core results with stable output",
       ("cmd_validate", "cmd_construct", "cmd_homs", "cmd_enumerate", "cmd_export", "cmd_verify"))
def _():
    with tempfile.TemporaryDirectory() as tmp:
        order = Path(tmp, "case1.json")
        order.write_text(json.dumps(case_order("I").to_dict()))
        code, out = _run_cli(["construct", "skew-reflect", "--base", "S3_plus", "--order", str(order)])
        assert code == 0
        G3 = FiniteAlgebra.from_dict(json.loads(out))
        assert is_isomorphic(G3, build("G3"))
        path = Path(tmp, "g3.json")
        path.write_text(out)
        assert _run_cli(["validate", str(path), "--class", "dmm"])[0] == 0
        assert _run_cli(["validate", "C4_plus", "--class", "dmm"])[0] == 1
        code, out = _run_cli(["homs", "--from", "G1", "--to", "C4"])
        assert code == 0 and out.startswith("1 homomorphism")
        code, out = _run_cli(["export", "--name", "D4", "--dot"])
        assert code == 0 and out.count("[label=") == 4
        outs = []
        for run_dir in ("a", "b"):
            d = Path(tmp, run_dir)
            code, _ = _run_cli(["enumerate", "--simple", "--contains", "C4", "--sole-proper", "C4",
                                "--max-size", "6", "--out", str(d), "--seed", "3"])
            assert code == 0
            outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
        assert outs[0] == outs[1] and len(outs[0]) == 9
        code, out = _run_cli(["verify", "--group", "catalog"])
        assert code == 0
    return "ok"
