"""Graphviz and TikZ drawings of diagrams.

Both emitters share one layout: every generator other than ``Id`` and
``Braid`` becomes a node, ranked by its longest distance from the inputs.
Identities and braids only reroute wires.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, Empty, Gen, Kind, Par, Seq
from .exactfield import format_scalar

@dataclass
class Node:
    name: str
    gen: Gen
    depth: int


@dataclass
class Layout:
    inputs: list[str]
    outputs: list[str]
    nodes: list[Node]
    edges: list[tuple[str, str]]

    @property
    def depth(self) -> int:
        return max((n.depth for n in self.nodes), default=0)


def layout(d: Diagram) -> Layout:
    nodes: list[Node] = []
    edges: list[tuple[str, str]] = []
    depth = {}

    def walk(t: Diagram, wires: list[str]) -> list[str]:
        if isinstance(t, Empty):
            return []
        if isinstance(t, Seq):
            return walk(t.right, walk(t.left, wires))
        if isinstance(t, Par):
            return walk(t.left, wires[: t.left.dom]) + walk(t.right, wires[t.left.dom :])
        if t.kind is Kind.ID:
            return wires
        if t.kind is Kind.BRAID:
            return [wires[1], wires[0]]
        name = f"n{len(nodes)}"
        level = 1 + max((depth[w] for w in wires), default=0)
        depth[name] = level
        nodes.append(Node(name, t, level))
        edges.extend((w, name) for w in wires)
        return [name] * t.cod

    inputs = [f"in{i}" for i in range(d.dom)]
    for w in inputs:
        depth[w] = 0
    outs = walk(d, inputs)
    outputs = [f"out{i}" for i in range(d.cod)]
    edges.extend(zip(outs, outputs))
    return Layout(inputs, outputs, nodes, edges)


def _label(g: Gen) -> str:
    if g.kind is Kind.SCALE:
        return format_scalar(g.scalar)
    return {
        Kind.ADD: "+",
        Kind.ZERO: "0",
        Kind.DUP: "Δ",
        Kind.DELETE: "!",
        Kind.CUP: "∪",
        Kind.CAP: "∩",
    }[g.kind]


_DOT_STYLE = {
    Kind.ADD: 'shape=invtriangle, style=filled, fillcolor=black, fontcolor=white',
    Kind.DUP: 'shape=triangle, style=filled, fillcolor=gray85',
    Kind.SCALE: 'shape=box',
    Kind.ZERO: 'shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.25',
    Kind.DELETE: 'shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.25',
    Kind.CUP: 'shape=plaintext',
    Kind.CAP: 'shape=plaintext',
}


def to_dot(d: Diagram) -> str:
    lay = layout(d)
    lines = ["digraph diagram {", "  rankdir=TB;", "  node [fontname=\"Helvetica\"];"]
    for w in lay.inputs + lay.outputs:
        lines.append(f"  {w} [shape=point];")
    for n in lay.nodes:
        label = _label(n.gen).replace('"', '\\"')
        lines.append(f'  {n.name} [label="{label}", {_DOT_STYLE[n.gen.kind]}];')
    ranks: dict[int, list[str]] = {}
    for n in lay.nodes:
        ranks.setdefault(n.depth, []).append(n.name)
    if lay.inputs:
        lines.append("  { rank=source; " + " ".join(f"{w};" for w in lay.inputs) + " }")
    for k in sorted(ranks):
        lines.append("  { rank=same; " + " ".join(f"{w};" for w in ranks[k]) + " }")
    if lay.outputs:
        lines.append("  { rank=sink; " + " ".join(f"{w};" for w in lay.outputs) + " }")
    for a, b in lay.edges:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TIKZ_STYLES = r"""  plus/.style={regular polygon, regular polygon sides=3, shape border rotate=180, draw, fill=black!80, inner sep=0pt, minimum size=6mm},
  delta/.style={regular polygon, regular polygon sides=3, draw, fill=black!10, inner sep=0pt, minimum size=6mm},
  multiply/.style={rectangle, draw, fill=white, inner sep=2pt, minimum size=5mm},
  zero/.style={circle, draw, fill=black, inner sep=0pt, minimum size=2mm},
  bang/.style={circle, draw, fill=black, inner sep=0pt, minimum size=2mm},
  bend/.style={circle, fill=black, inner sep=0pt, minimum size=0.6mm},"""

_TIKZ_KIND = {
    Kind.ADD: "plus",
    Kind.DUP: "delta",
    Kind.SCALE: "multiply",
    Kind.ZERO: "zero",
    Kind.DELETE: "bang",
    Kind.CUP: "bend",
    Kind.CAP: "bend",
}


def to_tikz(d: Diagram) -> str:
    lay = layout(d)
    step = 1.5
    rows: dict[int, list[str]] = {0: list(lay.inputs), lay.depth + 1: list(lay.outputs)}
    for n in lay.nodes:
        rows.setdefault(n.depth, []).append(n.name)
    where = {}
    for k, names in rows.items():
        for j, name in enumerate(names):
            where[name] = (j * step, -k * step)
    lines = [r"\begin{tikzpicture}[thick,", _TIKZ_STYLES, "]"]
    for w in lay.inputs + lay.outputs:
        x, y = where[w]
        lines.append(rf"  \coordinate ({w}) at ({x:.2f},{y:.2f});")
    for n in lay.nodes:
        x, y = where[n.name]
        text = "" if n.gen.kind in (Kind.ADD, Kind.DUP, Kind.ZERO, Kind.DELETE, Kind.CUP, Kind.CAP) else rf"\({_label(n.gen)}\)"
        lines.append(rf"  \node[{_TIKZ_KIND[n.gen.kind]}] ({n.name}) at ({x:.2f},{y:.2f}) {{{text}}};")
    for a, b in lay.edges:
        lines.append(rf"  \draw ({a}) -- ({b});")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render(d: Diagram, format: str = "dot") -> str:
    if format == "dot":
        return to_dot(d)
    if format == "tikz":
        return to_tikz(d)
    raise ValueError(f"unknown render format {format!r} (expected dot or tikz)")
