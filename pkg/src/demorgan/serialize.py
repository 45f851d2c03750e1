"""JSON and Graphviz output."""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import FiniteAlgebra
from .errors import MalformedTable


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def load_algebra(path: str | Path) -> FiniteAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"{path}: invalid JSON ({exc})") from None
    return FiniteAlgebra.from_dict(data)


def to_dot(alg: FiniteAlgebra) -> str:
    """Hasse diagram, bottom to top, with e, f, 0 and 1 marked."""
    marks: dict[int, list[str]] = {}
    marks.setdefault(alg.e, []).append("e")
    if alg.neg is not None:
        f = alg.neg[alg.e]
        one = alg.fusion[f][f]
        marks.setdefault(f, []).append("f")
        marks.setdefault(one, []).append("f^2")
    name = alg.name or "algebra"
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for a in range(alg.size):
        label = alg.label(a)
        extra = marks.get(a)
        if extra and label not in extra:
            label = f"{label} ({', '.join(extra)})"
        style = ', style=bold' if a == alg.e else ""
        lines.append(f'  n{a} [label="{label}"{style}];')
    for a, b in alg.hasse_edges():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
