"""Structural classification of a finite algebra.

Every flag that comes out False carries a witness that can be re-checked
against the tables with :func:`recheck_witness`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, axiom_violations, forbidden_sublattice
from .terms import M_LAWS, SEMILINEAR, U_LAWS, holds_at, law_by_name

FLAGS = (
    "is_lattice", "is_distributive", "is_modular", "is_rl", "is_irl",
    "is_square_increasing", "is_dmm", "is_dunn", "is_sugihara", "is_odd",
    "is_anti_idempotent", "is_bounded", "is_rigorously_compact",
    "is_totally_ordered", "is_semilinear", "is_fsi", "is_si", "is_simple",
    "in_U", "in_M",
)


@dataclass
class ClassificationReport:
    flags: dict[str, bool]
    witnesses: dict[str, tuple] = field(default_factory=dict)

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def to_dict(self) -> dict:
        return {
            "flags": dict(self.flags),
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(a) for a in v]
    if isinstance(v, dict):
        return {k: _jsonable(a) for k, a in v.items()}
    return v


def _law_witness(law, verdict):
    return (law.name, dict(verdict.witness))


def classify(alg: FiniteAlgebra) -> ClassificationReport:
    from .constructions import deductive_filters  # local: avoids an import cycle

    fl: dict[str, bool] = {}
    wit: dict[str, tuple] = {}
    n = alg.size
    L, F = alg.np_leq, alg.np_fusion
    idx = np.arange(n)

    def first_violation(cls):
        bad = axiom_violations(alg, cls)
        return (bad[0].law, bad[0].witness) if bad else None

    def put(flag, bad):
        fl[flag] = bad is None
        if bad is not None:
            wit[flag] = bad

    put("is_lattice", first_violation("lattice"))
    lattice = fl["is_lattice"]
    hit = forbidden_sublattice(alg) if lattice else None
    if not lattice:
        put("is_distributive", wit["is_lattice"])
        put("is_modular", wit["is_lattice"])
    else:
        put("is_distributive", hit)
        put("is_modular", hit if hit is not None and hit[0] == "N5" else None)
    put("is_rl", first_violation("rl"))
    put("is_irl", first_violation("irl"))
    sq_bad = np.nonzero(~L[idx, F[idx, idx]])[0]
    put("is_square_increasing", ("square-increasing", (int(sq_bad[0]),)) if len(sq_bad) else None)
    put("is_dmm", first_violation("dmm"))
    put("is_dunn", first_violation("dunn"))
    put("is_sugihara", first_violation("sugihara"))

    rl = fl["is_rl"]
    sq = fl["is_square_increasing"]
    has_neg = alg.neg is not None

    if has_neg:
        f = alg.neg[alg.e]
        put("is_odd", None if f == alg.e else ("f-equals-e", (alg.e, f)))
        one = alg.fusion[f][f]
        above = np.nonzero(~L[:, one])[0]
        if not sq:
            put("is_anti_idempotent", wit["is_square_increasing"])
        else:
            put("is_anti_idempotent", ("below-f-squared", (int(above[0]),)) if len(above) else None)
    else:
        put("is_odd", ("involution-present", ()))
        put("is_anti_idempotent", ("involution-present", ()))

    bounded = alg.bottom is not None and alg.top is not None
    if bounded:
        put("is_bounded", None)
    else:
        mins = [a for a in range(n) if not any(alg.lt(b, a) for b in range(n))]
        maxs = [a for a in range(n) if not any(alg.lt(a, b) for b in range(n))]
        pair = tuple(mins[:2]) if len(mins) > 1 else tuple(maxs[:2])
        put("is_bounded", ("two-extremal-elements", pair))
    if bounded:
        top, bot = alg.top, alg.bottom
        bad = [a for a in range(n) if a != bot and alg.fusion[top][a] != top]
        put("is_rigorously_compact", ("top-absorbs", (bad[0],)) if bad else None)
    else:
        put("is_rigorously_compact", wit["is_bounded"])

    inc = np.argwhere(~(L | L.T))
    put("is_totally_ordered", ("incomparable", tuple(int(v) for v in inc[0])) if len(inc) else None)

    if rl:
        v = SEMILINEAR.check(alg)
        put("is_semilinear", None if v else _law_witness(SEMILINEAR, v))
    else:
        put("is_semilinear", wit["is_rl"])

    # irreducibility
    if not rl:
        for flag in ("is_fsi", "is_si", "is_simple"):
            put(flag, wit["is_rl"])
    elif alg.is_trivial:
        for flag in ("is_fsi", "is_si", "is_simple"):
            put(flag, ("trivial", ()))
    else:
        e = alg.e
        below = [a for a in range(n) if alg.lt(a, e)]
        split = next(((a, b) for a in below for b in below if a <= b and alg.join[a][b] == e), None)
        put("is_fsi", None if split is None else ("e-join-reducible", split))
        filters = deductive_filters(alg)
        # filters are ordered by inclusion reversed against congruences;
        # [e) is the least filter, atoms are the minimal ones strictly above it
        base = next(G for G in filters if len(G.members) == len(alg.up_set(e)))
        above = [G for G in filters if G.members > base.members]
        minimal = [G for G in above if not any(H.members < G.members for H in above)]
        if len(minimal) == 1:
            put("is_si", None)
        else:
            put("is_si", ("monolith", tuple(G.generator for G in minimal[:2])))
        proper = [G for G in filters if G is not base and len(G.members) < n]
        put("is_simple", None if not proper else ("proper-filter", (proper[0].generator,)))

    if fl["is_dmm"]:
        for flag, laws in (("in_U", U_LAWS), ("in_M", M_LAWS)):
            bad = None
            for law in laws:
                v = law.check(alg)
                if not v:
                    bad = _law_witness(law, v)
                    break
            put(flag, bad)
    else:
        put("in_U", wit["is_dmm"])
        put("in_M", wit["is_dmm"])
    return ClassificationReport(fl, wit)


def si_by_order(alg: FiniteAlgebra) -> bool:
    """SI test valid for square-increasing algebras: a largest element below e."""
    below = [a for a in range(alg.size) if alg.lt(a, alg.e)]
    return bool(below) and any(all(alg.leq(b, a) for b in below) for a in below)


def simple_by_order(alg: FiniteAlgebra) -> bool:
    return sum(1 for a in range(alg.size) if alg.lt(a, alg.e)) == 1


def recheck_witness(alg: FiniteAlgebra, flag: str, witness: tuple) -> bool:
    """True when the witness really refutes ``flag`` on the tables of ``alg``."""
    tag, data = witness
    n = alg.size
    if tag in ("N5", "M3"):
        lo, a, b, c, hi = data
        M, J = alg.meet, alg.join
        if tag == "N5":
            return (alg.lt(a, c) and M[a][b] == lo == M[c][b] and J[a][b] == hi == J[c][b]
                    and not alg.leq(a, b) and not alg.leq(b, c) and not alg.leq(b, a) and not alg.leq(c, b))
        pairs = ((a, b), (a, c), (b, c))
        return all(M[u][v] == lo and J[u][v] == hi and u != v for u, v in pairs)
    if tag == "square-increasing":
        (a,) = data
        return not alg.leq(a, alg.fusion[a][a])
    if tag == "f-equals-e":
        return alg.neg is not None and alg.neg[alg.e] != alg.e
    if tag == "below-f-squared":
        (a,) = data
        f = alg.neg[alg.e]
        return not alg.leq(a, alg.fusion[f][f])
    if tag == "involution-present":
        return alg.neg is None
    if tag == "two-extremal-elements":
        a, b = data
        return a != b and not alg.leq(a, b) and not alg.leq(b, a)
    if tag == "top-absorbs":
        (a,) = data
        return a != alg.bottom and alg.fusion[alg.top][a] != alg.top
    if tag == "incomparable":
        a, b = data
        return not alg.leq(a, b) and not alg.leq(b, a)
    if tag == "trivial":
        return n == 1
    if tag == "e-join-reducible":
        a, b = data
        return alg.lt(a, alg.e) and alg.lt(b, alg.e) and alg.join[a][b] == alg.e
    from .constructions import is_deductive_filter, principal_filter

    if tag == "monolith":
        e = alg.e

        def minimal_above_e(a):
            if not (alg.lt(a, e) and is_deductive_filter(alg, principal_filter(alg, a))):
                return False
            return not any(alg.lt(a, c) and alg.lt(c, e) and is_deductive_filter(alg, principal_filter(alg, c))
                           for c in range(n))

        a, b = data
        return a != b and minimal_above_e(a) and minimal_above_e(b)
    if tag == "proper-filter":
        (b,) = data
        G = principal_filter(alg, b)
        return is_deductive_filter(alg, G) and alg.lt(b, alg.e) and len(G) < n
    if isinstance(data, dict):
        try:
            law = law_by_name(tag)
        except KeyError:
            law = None
        if law is not None:
            return any(not holds_at(alg, fm, data) for fm in law.formulas
                       if set(fm.variables()) <= set(data))
    # axiom witnesses from the validators: re-run the named check
    bad = {(v.law, v.witness) for cls in ("lattice", "rl", "irl", "dunn", "dmm", "sugihara")
           for v in axiom_violations(alg, cls)}
    return (tag, data) in bad
