"""Graphviz text for Hasse diagrams, smaller elements drawn lower."""
from __future__ import annotations

from ..bits import iter_bits
from ..order import Poset
from ..uvspace import FiniteSpace


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(P, name: str | None = None) -> str:
    """Cover edges only; maximal elements share the top rank."""
    if isinstance(P, FiniteSpace):
        name = name or P.name
        P = P.order
    if not isinstance(P, Poset):
        raise TypeError(f"expected a poset or space, got {type(P).__name__}")
    lines = [f"digraph {_quote(name or 'hasse')} {{",
             "  rankdir=BT;",
             "  node [shape=plaintext];"]
    for i, label in enumerate(P.labels):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for a, b in sorted(P.covers):
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    tops = " ".join(f"n{i};" for i in iter_bits(P.maximal))
    if tops:
        lines.append(f"  {{rank=max; {tops}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"
