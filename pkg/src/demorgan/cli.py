"""Command-line interface.

Exit codes: 0 success, 1 a check or validation failed, 2 usage or I/O error.
Algebra arguments are catalog names (``C4``, ``G3``, ``S_5`` ...) or paths to
algebra JSON files.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from .algebra import CLASSES, FiniteAlgebra, axiom_violations
from .classify import classify
from .constructions import (
    SkewOrderSpec, decompose_crystalline, deductive_filters, direct_product, principal_filter,
    is_deductive_filter, quotient, reflection, rigorous_extension, skew_reflection,
)
from .enumeration import ConstraintBundle, enumerate_dmm, enumerate_extensions
from .errors import DemorganError, UnknownName
from .morphisms import find_embeddings, find_homomorphisms, is_retract
from .serialize import dumps, load_algebra, to_dot

MEMBERSHIP = {"U": "in_U", "M": "in_M"}


class UsageError(Exception):
    pass


def load(arg: str) -> FiniteAlgebra:
    p = Path(arg)
    if p.suffix == ".json" or p.exists():
        if not p.exists():
            raise UsageError(f"no such file: {arg}")
        return load_algebra(p)
    try:
        return cat.build(arg)
    except UnknownName:
        raise UsageError(f"{arg!r} is neither a file nor a catalog name") from None


def element(alg: FiniteAlgebra, label: str) -> int:
    try:
        a = alg.index(label)
    except ValueError:
        raise UsageError(f"{label!r} is not an element of {alg.name or 'the algebra'}") from None
    if not 0 <= a < alg.size:
        raise UsageError(f"element index {a} out of range")
    return a


def emit_algebra(alg: FiniteAlgebra, args) -> None:
    text = to_dot(alg) if getattr(args, "dot", False) else dumps(alg.to_dict())
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args) -> int:
    alg = load(args.algebra)
    cls = args.cls
    if cls in MEMBERSHIP:
        rep = classify(alg)
        flag = MEMBERSHIP[cls]
        ok = rep.flags[flag] and rep.is_dmm
        report = {"algebra": alg.name, "class": cls, "ok": ok,
                  "violations": [] if ok else [rep.to_dict()["witnesses"].get(flag, rep.to_dict()["witnesses"].get("is_dmm"))]}
    else:
        bad = axiom_violations(alg, cls)
        ok = not bad
        report = {"algebra": alg.name, "class": cls, "ok": ok,
                  "violations": [{"law": v.law, "witness": list(v.witness)} for v in bad]}
    if args.json:
        sys.stdout.write(dumps(report))
    elif ok:
        print(f"ok: {alg.name or args.algebra} is a member of {cls}")
    else:
        print(f"fail: {alg.name or args.algebra} is not a member of {cls}")
        for v in report["violations"]:
            print(f"  {json.dumps(v)}")
    return 0 if ok else 1


def cmd_classify(args) -> int:
    alg = load(args.algebra)
    rep = classify(alg)
    if args.json:
        sys.stdout.write(dumps({"algebra": alg.name, "size": alg.size, **rep.to_dict()}))
        return 0
    print(f"{alg.name or args.algebra}: {alg.size} elements")
    for k, v in rep.flags.items():
        w = rep.witnesses.get(k)
        print(f"  {k:<22} {'yes' if v else 'no'}" + (f"  witness {json.dumps(rep.to_dict()['witnesses'][k])}" if w else ""))
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "skew-reflect":
        B = load(args.base)
        try:
            spec = SkewOrderSpec.from_dict(json.loads(Path(args.order).read_text()))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise UsageError(f"cannot read order {args.order}: {exc}") from None
        alg = skew_reflection(B, spec, name=args.name or f"S({B.name})")
    elif kind == "reflect":
        B = load(args.base)
        alg = reflection(B, name=args.name or f"R({B.name})")
    elif kind == "product":
        alg = direct_product([load(a) for a in args.factors], name=args.name or "")
    elif kind == "rigorous-ext":
        B = load(args.base)
        alg = rigorous_extension(B, name=args.name or f"{B.name}#")
    elif kind == "decompose":
        A = load(args.base)
        B, spec = decompose_crystalline(A)
        if args.order_out:
            Path(args.order_out).write_text(dumps(spec.to_dict()))
        alg = B
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(kind)
    emit_algebra(alg, args)
    return 0


def cmd_quotient(args) -> int:
    alg = load(args.algebra)
    b = element(alg, args.filter)
    G = principal_filter(alg, b)
    if not is_deductive_filter(alg, G):
        print(f"[{args.filter}) is not a deductive filter", file=sys.stderr)
        return 1
    emit_algebra(quotient(alg, G), args)
    return 0


def cmd_filters(args) -> int:
    alg = load(args.algebra)
    fs = deductive_filters(alg)
    rows = [{"generator": alg.label(G.generator), "members": [alg.label(a) for a in sorted(G.members)]} for G in fs]
    if args.json:
        sys.stdout.write(dumps(rows))
    else:
        print(f"{len(fs)} deductive filter{'s' if len(fs) != 1 else ''}")
        for r in rows:
            print(f"  [{r['generator']}) = {{{', '.join(r['members'])}}}")
    return 0


def _print_maps(maps, A, B, what, as_json):
    if as_json:
        sys.stdout.write(dumps([{A.label(a): B.label(m.map[a]) for a in range(A.size)} for m in maps]))
        return
    print(f"{len(maps)} {what}{'s' if len(maps) != 1 else ''}")
    for m in maps:
        print("  " + " ".join(f"{A.label(a)}->{B.label(m.map[a])}" for a in range(A.size)))


def cmd_homs(args) -> int:
    A, B = load(args.src), load(args.dst)
    maps = find_homomorphisms(A, B, injective=args.injective, surjective=args.surjective, limit=args.limit)
    _print_maps(maps, A, B, "homomorphism", args.json)
    return 0


def cmd_embed(args) -> int:
    A, B = load(args.src), load(args.dst)
    maps = find_embeddings(A, B, limit=args.limit)
    _print_maps(maps, A, B, "embedding", args.json)
    return 0 if maps else 1


def cmd_retract(args) -> int:
    A, B = load(args.src), load(args.dst)
    hit = is_retract(A, B)
    if hit is None:
        print(f"{A.name} is not a retract of {B.name}")
        return 1
    g, h = hit
    if args.json:
        sys.stdout.write(dumps({"g": list(g.map), "h": list(h.map)}))
    else:
        print(f"{A.name} is a retract of {B.name}")
        print("  g: " + " ".join(f"{A.label(a)}->{B.label(g.map[a])}" for a in range(A.size)))
        print("  h: " + " ".join(f"{B.label(b)}->{A.label(h.map[b])}" for b in range(B.size)))
    return 0


def cmd_enumerate(args) -> int:
    if args.cls != "dmm":
        raise UsageError("only --class dmm is supported")
    bundle = ConstraintBundle(
        min_size=args.min_size, max_size=args.max_size, simple=args.simple, si=args.si, fsi=args.fsi,
        totally_ordered=args.totally_ordered, anti_idempotent=args.anti_idempotent,
        e_below_f=True if args.e_below_f else None,
        contains=load(args.contains) if args.contains else None,
        sole_proper=load(args.sole_proper) if args.sole_proper else None,
        zero_generated=args.zero_generated,
    )
    if args.base:
        res = enumerate_extensions(load(args.base), bundle, jobs=args.jobs, seed=args.seed)
    else:
        res = enumerate_dmm(bundle, jobs=args.jobs, seed=args.seed)
    manifest = res.manifest()
    if args.base:
        manifest["base"] = args.base
    width = max(3, len(str(len(res.algebras))))
    files = []
    for i, alg in enumerate(res.algebras, 1):
        named = alg.with_name(f"dmm_{alg.size}_{i:0{width}d}")
        files.append((f"{named.name}.json", named))
    manifest["files"] = [f for f, _ in files]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for fname, alg in files:
            (out / fname).write_text(dumps(alg.to_dict()))
        (out / "manifest.json").write_text(dumps(manifest))
        print(f"{len(files)} algebras written to {out}")
    else:
        sys.stdout.write(dumps(manifest))
    print(f"enumeration took {res.seconds:.2f}s", file=sys.stderr)
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in cat.NAMES:
            A = cat.build(name)
            print(f"{name:<10} {A.size:>3}  {cat.documented_class(name)}")
        print("families: " + ", ".join(cat.FAMILIES))
        return 0
    if not args.name:
        raise UsageError("catalog show needs a name")
    alg = load(args.name)
    emit_algebra(alg, args)
    return 0


def cmd_export(args) -> int:
    name = args.name or args.algebra
    if not name:
        raise UsageError("export needs an algebra")
    emit_algebra(load(name), args)
    return 0


def cmd_verify(args) -> int:
    from . import verify
    try:
        results = verify.run(args.group or None)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(verify.format_table(results, timings=args.timings))
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="demorgan", description="Finite De Morgan and Dunn monoid workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an algebra against a class")
    s.add_argument("algebra")
    s.add_argument("--class", dest="cls", default="dmm", choices=list(CLASSES) + list(MEMBERSHIP))
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("classify", help="structural flags with witnesses")
    s.add_argument("algebra")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("construct", help="build a new algebra")
    csub = s.add_subparsers(dest="kind", required=True)
    for kind, needs in (("skew-reflect", "order"), ("reflect", None), ("rigorous-ext", None), ("decompose", None)):
        c = csub.add_parser(kind)
        c.add_argument("--base", required=True)
        if needs:
            c.add_argument("--order", required=True, help="SkewOrderSpec JSON file")
        if kind == "decompose":
            c.add_argument("--order-out", help="write the recovered order here")
        _out_flags(c, rename=True)
    c = csub.add_parser("product")
    c.add_argument("factors", nargs="+")
    _out_flags(c, rename=True)
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("quotient", help="quotient by the filter generated by an element below e")
    s.add_argument("algebra")
    s.add_argument("--filter", required=True, help="generator of the filter (label or index)")
    _out_flags(s)
    s.set_defaults(fn=cmd_quotient)

    s = sub.add_parser("filters", help="list deductive filters")
    s.add_argument("algebra")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_filters)

    for name, fn, help_ in (("homs", cmd_homs, "list homomorphisms"),
                            ("embed", cmd_embed, "list embeddings"),
                            ("retract", cmd_retract, "decide whether --from is a retract of --to")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--from", dest="src", required=True)
        s.add_argument("--to", dest="dst", required=True)
        s.add_argument("--json", action="store_true")
        if name != "retract":
            s.add_argument("--limit", type=int)
        if name == "homs":
            s.add_argument("--injective", action="store_true")
            s.add_argument("--surjective", action="store_true")
        s.set_defaults(fn=fn)

    s = sub.add_parser("enumerate", help="enumerate De Morgan monoids up to isomorphism")
    s.add_argument("--class", dest="cls", default="dmm")
    s.add_argument("--min-size", type=int, default=1)
    s.add_argument("--max-size", type=int, default=5)
    for flag in ("simple", "si", "fsi", "totally-ordered", "anti-idempotent", "zero-generated", "e-below-f"):
        s.add_argument(f"--{flag}", action="store_true")
    s.add_argument("--contains")
    s.add_argument("--sole-proper")
    s.add_argument("--base", help="pin this algebra as a subalgebra")
    s.add_argument("--out", help="directory for per-algebra JSON and manifest.json")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("catalog", help="named algebras")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("name", nargs="?")
    _out_flags(s)
    s.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("verify", help="run the consistency suite")
    s.add_argument("--group", action="append", help=f"one of: all, {', '.join(_groups())}")
    s.add_argument("--timings", action="store_true")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("export", help="write an algebra as JSON or DOT")
    s.add_argument("algebra", nargs="?")
    s.add_argument("--name")
    _out_flags(s)
    s.set_defaults(fn=cmd_export)
    return p


def _groups():
    from .verify import GROUPS
    return GROUPS


def _out_flags(p, rename: bool = False):
    if rename:
        p.add_argument("--name", help="name of the result")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--out", help="write to this file instead of stdout")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DemorganError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
