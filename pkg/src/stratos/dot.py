"""Graphviz DOT text for Hasse diagrams.

Edges run from the smaller to the larger element and ranks go bottom to
top, so minimal elements are drawn at the bottom.  Nodes and edges are
emitted in lexicographic order so the text is byte-stable.
"""

from __future__ import annotations

from .order import FiniteProset, as_poset, hasse_edges


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(p: FiniteProset, name: str = "hasse", labels: dict[str, str] | None = None) -> str:
    p = as_poset(p)
    labels = labels or {}
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box, fontname=\"Helvetica\"];"]
    for e in sorted(p.elements):
        extra = f" [label={_quote(labels[e])}]" if e in labels else ""
        lines.append(f"  {_quote(e)}{extra};")
    for a, b in hasse_edges(p):
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
