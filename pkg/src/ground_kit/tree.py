"""Signed syntactic trees.

``~a`` is a unary node whose ``_|_`` component is absorbed.  Implications
with a consequent other than ``_|_`` are opaque leaves.  A node is negative
when it sits strictly below an odd number of negation nodes; positive
disjunctions and negative conjunctions are *feeble*, i.e. the places where
a ground has to choose between children.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .formula import And, Atom, Bottom, Formula, Imp, Or, is_neg, neg


class Kind(str, enum.Enum):
    ATOM = "atom"
    BOTTOM = "bottom"
    IMP = "imp"
    AND = "and"
    OR = "or"
    NEG = "neg"


@dataclass(frozen=True)
class GNode:
    id: int
    kind: Kind
    children: tuple[int, ...]
    subformula: Formula
    negative: bool
    feeble: bool
    parent: int | None
    depth: int

    @property
    def positive(self) -> bool:
        return not self.negative

    @property
    def polarity(self) -> str:
        return "negative" if self.negative else "positive"

    @property
    def signed(self) -> Formula:
        return signed_formula(self)


@dataclass(frozen=True)
class GroundingTree:
    formula: Formula
    nodes: tuple[GNode, ...]

    root_id = 0

    @property
    def root(self) -> GNode:
        return self.nodes[0]

    def __getitem__(self, i: int) -> GNode:
        return self.nodes[i]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def feeble_nodes(self) -> list[GNode]:
        return [n for n in self.nodes if n.feeble]

    def height(self) -> int:
        """Number of nodes on the longest root-to-leaf path."""
        return 1 + max(n.depth for n in self.nodes)

    def subtree(self, i: int) -> list[int]:
        out, stack = [], [i]
        while stack:
            j = stack.pop()
            out.append(j)
            stack.extend(self.nodes[j].children)
        return out

    def leaves(self) -> list[GNode]:
        return [n for n in self.nodes if not n.children]


def _kind(f: Formula) -> Kind:
    if isinstance(f, Atom):
        return Kind.ATOM
    if isinstance(f, Bottom):
        return Kind.BOTTOM
    if isinstance(f, And):
        return Kind.AND
    if isinstance(f, Or):
        return Kind.OR
    assert isinstance(f, Imp)
    return Kind.NEG if is_neg(f) else Kind.IMP


def build(f: Formula) -> GroundingTree:
    nodes: list[GNode | None] = []

    def visit(g: Formula, negative: bool, parent: int | None, depth: int) -> int:
        i = len(nodes)
        nodes.append(None)
        kind = _kind(g)
        if kind is Kind.NEG:
            kids = (visit(g.left, not negative, i, depth + 1),)
        elif kind in (Kind.AND, Kind.OR):
            kids = (visit(g.left, negative, i, depth + 1),
                    visit(g.right, negative, i, depth + 1))
        else:
            kids = ()
        feeble = (kind is Kind.OR and not negative) or (kind is Kind.AND and negative)
        nodes[i] = GNode(i, kind, kids, g, negative, feeble, parent, depth)
        return i

    visit(f, False, None, 0)
    return GroundingTree(f, tuple(nodes))


def signed_formula(n: GNode) -> Formula:
    """The node's subformula, prefixed by ``~`` when the node is negative."""
    return neg(n.subformula) if n.negative else n.subformula


# -- DOT ---------------------------------------------------------------------

_SHAPES = {
    Kind.ATOM: "ellipse", Kind.BOTTOM: "ellipse", Kind.IMP: "note",
    Kind.AND: "box", Kind.OR: "diamond", Kind.NEG: "circle",
}
_COLORS = {False: "blue", True: "red"}


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(t: GroundingTree, name: str = "grounding_tree") -> str:
    """Graphviz rendering: shape by kind, blue/red for positive/negative,
    bold border on feeble nodes."""
    lines = [f"digraph {name} {{", '  node [fontname="monospace"];']
    for n in t.nodes:
        attrs = [
            f'label="{_dot_escape(n.subformula.text)}"',
            f"shape={_SHAPES[n.kind]}",
            f"color={_COLORS[n.negative]}",
            f'polarity="{n.polarity}"',
        ]
        if n.feeble:
            attrs += ["style=bold", "penwidth=3", 'feeble="true"']
        lines.append(f"  n{n.id} [{', '.join(attrs)}];")
    for n in t.nodes:
        for c in n.children:
            lines.append(f"  n{n.id} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
