"""Selection trees, bars and grounding bars.

A selection tree prunes, at every feeble node, one child subtree (or, with
the star rules, at most one).  A bar of a selection tree meets every
root-to-leaf path exactly once.  A grounding bar is a non-trivial bar,
other than the lone child of a negated root, with its negative nodes
written as negations.  Provable grounds are exactly the grounding bars
(without Amalgamation) or their unions (with it).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .config import DEFAULT_CLOSURE_CAP, CalculusConfig, ResourceLimit
from .formula import Formula, GroundingClaim
from .tree import GroundingTree, Kind, build, signed_formula

Ground = frozenset  # frozenset[Formula]


@dataclass(frozen=True)
class SelectionTree:
    base: GroundingTree
    deleted: frozenset[int]

    @property
    def root(self) -> int:
        return 0

    def children(self, i: int) -> tuple[int, ...]:
        return tuple(c for c in self.base[i].children if c not in self.deleted)

    def surviving(self) -> list[int]:
        out, stack = [], [0]
        while stack:
            i = stack.pop()
            out.append(i)
            stack.extend(self.children(i))
        return sorted(out)

    def paths(self) -> list[tuple[int, ...]]:
        """Every root-to-leaf path."""
        out = []

        def walk(i: int, path: tuple[int, ...]) -> None:
            path = path + (i,)
            kids = self.children(i)
            if not kids:
                out.append(path)
            for c in kids:
                walk(c, path)

        walk(0, ())
        return out


@dataclass(frozen=True)
class Bar:
    selection: SelectionTree
    nodes: frozenset[int]

    @property
    def ground(self) -> Ground:
        t = self.selection.base
        return frozenset(signed_formula(t[i]) for i in self.nodes)


def _deletion_choices(t: GroundingTree, i: int, star: bool) -> Iterator[frozenset[int]]:
    n = t[i]
    if not n.children:
        yield frozenset()
        return
    if n.feeble:
        l, r = n.children
        for d in _deletion_choices(t, r, star):
            yield d | {l}
        for d in _deletion_choices(t, l, star):
            yield d | {r}
        if star:
            for dl, dr in itertools.product(
                list(_deletion_choices(t, l, star)), list(_deletion_choices(t, r, star))
            ):
                yield dl | dr
        return
    parts = [list(_deletion_choices(t, c, star)) for c in n.children]
    for combo in itertools.product(*parts):
        yield frozenset().union(*combo)


def selection_trees(t: GroundingTree, star: bool) -> list[SelectionTree]:
    """All selection trees of ``t``; feeble nodes inside a deleted subtree
    impose no choice, so the list has no duplicates."""
    return [SelectionTree(t, d) for d in _deletion_choices(t, 0, star)]


def _bars_below(s: SelectionTree, i: int) -> Iterator[frozenset[int]]:
    yield frozenset((i,))
    kids = s.children(i)
    if kids:
        for combo in itertools.product(*(list(_bars_below(s, c)) for c in kids)):
            yield frozenset().union(*combo)


def bars_of(s: SelectionTree) -> list[Bar]:
    """Admissible bars: the root alone is excluded, and so is the lone child
    of the root when the formula is a negation."""
    excluded = {frozenset((0,))}
    if s.base.root.kind is Kind.NEG:
        excluded.add(frozenset(s.base.root.children))
    return [Bar(s, b) for b in _bars_below(s, 0) if b not in excluded]


def grounding_bars_literal(f: Formula, star: bool) -> set[Ground]:
    """Enumerate selection trees and their bars one by one.  Exponentially
    slower than :func:`grounding_bars`; used as a cross-check."""
    t = build(f)
    return {b.ground for s in selection_trees(t, star) for b in bars_of(s)}


# -- direct recursion --------------------------------------------------------

@dataclass(frozen=True)
class _Witness:
    deleted: frozenset[int]
    nodes: frozenset[int]


def _default_deletions(t: GroundingTree, i: int, star: bool) -> frozenset[int]:
    return next(_deletion_choices(t, i, star))


def _families(t: GroundingTree, star: bool, within: frozenset | None) -> dict[Ground, _Witness]:
    """Ground -> one witnessing (selection, bar) for every bar of every
    selection of the subtree at each node, trivial bar included.

    Choices in disjoint subtrees are independent, so the families combine
    by products.  ``within`` prunes grounds that are not subsets of it.
    """
    memo: dict[int, dict[Ground, _Witness]] = {}

    def union(a: dict, b: dict) -> dict:
        out = dict(a)
        for g, w in b.items():
            out.setdefault(g, w)
        return out

    def product(a: dict, b: dict, extra: frozenset[int] = frozenset()) -> dict:
        out: dict[Ground, _Witness] = {}
        for ga, wa in a.items():
            for gb, wb in b.items():
                g = ga | gb
                if g not in out:
                    out[g] = _Witness(wa.deleted | wb.deleted | extra, wa.nodes | wb.nodes)
        return out

    def fam(i: int) -> dict[Ground, _Witness]:
        if i in memo:
            return memo[i]
        n = t[i]
        out: dict[Ground, _Witness] = {}
        s = signed_formula(n)
        if within is None or s in within:
            out[frozenset((s,))] = _Witness(_default_deletions(t, i, star), frozenset((i,)))
        if n.kind is Kind.NEG:
            out = union(out, fam(n.children[0]))
        elif n.children:
            l, r = n.children
            fl, fr = fam(l), fam(r)
            if n.feeble:
                keep_l = {g: _Witness(w.deleted | {r}, w.nodes) for g, w in fl.items()}
                keep_r = {g: _Witness(w.deleted | {l}, w.nodes) for g, w in fr.items()}
                out = union(out, union(keep_l, keep_r))
                if star:
                    out = union(out, product(fl, fr))
            else:
                out = union(out, product(fl, fr))
        memo[i] = out
        return out

    top = dict(fam(0))
    # removes the trivial bar and, for a negated root, the lone child:
    # both (and only they) yield the ground {f}
    top.pop(frozenset((t.formula,)), None)
    return top


def grounding_bar_witnesses(f: Formula, star: bool, within: Iterable[Formula] | None = None) -> dict[Ground, Bar]:
    t = build(f)
    w = None if within is None else frozenset(within)
    return {
        g: Bar(SelectionTree(t, wit.deleted), wit.nodes)
        for g, wit in _families(t, star, w).items()
    }


def grounding_bars(f: Formula, star: bool, within: Iterable[Formula] | None = None) -> set[Ground]:
    """Every grounding bar of ``f`` as a set of formulas (optionally only
    those contained in ``within``)."""
    t = build(f)
    w = None if within is None else frozenset(within)
    return set(_families(t, star, w))


def union_closure(bars: Iterable[Ground], cap: int = DEFAULT_CLOSURE_CAP) -> set[Ground]:
    """Close a family of sets under pairwise union."""
    base = list(set(bars))
    universe = sorted(set().union(*base), key=lambda x: x.text) if base else []
    index = {x: k for k, x in enumerate(universe)}
    masks = sorted({sum(1 << index[x] for x in b) for b in base})
    seen = set(masks)
    frontier = list(masks)
    while frontier:
        nxt = []
        for m in frontier:
            for b in masks:
                u = m | b
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > cap:
                        raise ResourceLimit(f"union closure exceeds cap of {cap} ground sets")
        frontier = nxt
    return {frozenset(universe[k] for k in range(len(universe)) if m >> k & 1) for m in seen}


def enumerate_grounds(f: Formula, cfg: CalculusConfig, cap: int = DEFAULT_CLOSURE_CAP) -> set[Ground]:
    """All provable grounds of ``f`` under ``cfg``."""
    bars = grounding_bars(f, cfg.star)
    if not cfg.am:
        return bars
    if len(bars) > cap:
        raise ResourceLimit(f"union closure exceeds cap of {cap} ground sets")
    return union_closure(bars, cap)


def is_ground(c: GroundingClaim, cfg: CalculusConfig) -> bool:
    ground = c.ground_set()
    inside = grounding_bars(c.target, cfg.star, within=ground)
    if not cfg.am:
        return ground in inside
    # the largest union of bars inside the ground is the union of all of them
    return bool(inside) and frozenset().union(*inside) == ground


def sorted_grounds(grounds: Iterable[Ground]) -> list[list[str]]:
    """Deterministic listing: by size, then lexicographically."""
    rows = [sorted(x.text for x in g) for g in grounds]
    return sorted(rows, key=lambda r: (len(r), r))
