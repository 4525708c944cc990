"""Derivations built from grounding bars.

For one bar: apply the 0-premiss rule for the root of its selection tree,
then repeatedly eliminate a ground element whose node is above the bar,
replacing it by the node's surviving children.  Several bars are joined by
Amalgamation.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .bars import Bar, grounding_bar_witnesses, is_ground
from .calculus import Derivation, Pattern, RuleId, Stage
from .config import BASE, CalculusConfig
from .formula import Formula, GroundingClaim, canonical
from .tree import GNode, Kind, signed_formula


class NotDerivable(ValueError):
    pass


def _pattern(n: GNode, surviving: tuple[int, ...]) -> Pattern:
    if n.kind is Kind.NEG:
        return Pattern.NEG_NEG
    if not n.feeble:
        return Pattern.AND if n.kind is Kind.AND else Pattern.NEG_OR
    l, r = n.children
    side = "BOTH" if len(surviving) == 2 else ("L" if surviving == (l,) else "R")
    return Pattern[("OR_" if n.kind is Kind.OR else "NEG_AND_") + side]


def derive_bar(bar: Bar) -> Derivation:
    """Root-then-eliminate derivation of one grounding bar."""
    s, t = bar.selection, bar.selection.base
    f = t.formula
    root = t.root
    top = t[root.children[0]] if root.kind is Kind.NEG else root
    if top.kind not in (Kind.AND, Kind.OR, Kind.NEG):
        raise NotDerivable(f"no 0-premiss rule concludes a claim about {f.text}")

    def settle(i: int) -> int:
        # a positive negation node and its child stand for the same formula
        while i not in bar.nodes and t[i].kind is Kind.NEG and t[i].positive:
            i = t[i].children[0]
        return i

    def claim() -> GroundingClaim:
        return GroundingClaim.multi([x for x, _ in items], f)

    kids = s.children(top.id)
    items = [(signed_formula(t[c]), settle(c)) for c in kids]
    d = Derivation(RuleId.of(Stage.AXIOM, _pattern(top, kids)), claim())
    pending = [it for it in items if it[1] not in bar.nodes]
    while pending:
        x, i = pending[0]
        kids = s.children(i)
        k = d.conclusion.ground.index(x)
        items.remove((x, i))
        items.extend((signed_formula(t[c]), settle(c)) for c in kids)
        d = Derivation(RuleId.of(Stage.ELIM, _pattern(t[i], kids)), claim(), (d,), k)
        pending = [it for it in items if it[1] not in bar.nodes]
    return d


def _cover(bars: dict[frozenset, Bar], ground: frozenset) -> list[Bar]:
    if ground in bars:
        return [bars[ground]]
    chosen, covered = [], set()
    for g in sorted(bars, key=lambda g: (-len(g), sorted(x.text for x in g))):
        if not g <= covered:
            chosen.append(bars[g])
            covered |= g
        if covered == ground:
            break
    return chosen


def _assemble(f: Formula, bars: dict[frozenset, Bar], ground: frozenset, cfg: CalculusConfig) -> Derivation:
    parts = [derive_bar(b) for b in _cover(bars, ground)] if cfg.am else [derive_bar(bars[ground])]
    d = parts[0]
    for e in parts[1:]:
        d = Derivation(RuleId.Am, GroundingClaim.multi(d.conclusion.ground + e.conclusion.ground, f), (d, e))
    if not d.conclusion.is_canonical:
        d = Derivation(RuleId.SetC, d.conclusion.canonical(), (d,))
    return d


def synthesize(f: Formula, ground: Iterable[Formula], cfg: CalculusConfig = BASE) -> Derivation:
    ground = frozenset(ground)
    if not ground or not is_ground(GroundingClaim.of(ground, f), cfg):
        shown = "{" + ", ".join(g.text for g in canonical(ground)) + "} < " + f.text
        raise NotDerivable(f"not derivable under {cfg}: {shown}")
    return _assemble(f, grounding_bar_witnesses(f, cfg.star, within=ground), ground, cfg)


def derivations(f: Formula, grounds: Iterable[frozenset], cfg: CalculusConfig = BASE) -> Iterator[tuple[frozenset, Derivation]]:
    """Derivations for many grounds of one formula, computing the bars once.

    Every ground must be provable; this skips the per-ground decision that
    :func:`synthesize` makes.
    """
    bars = grounding_bar_witnesses(f, cfg.star)
    for g in grounds:
        g = frozenset(g)
        inside = bars if not cfg.am else {b: w for b, w in bars.items() if b <= g}
        if not inside or (g not in inside if not cfg.am else frozenset().union(*inside) != g):
            raise NotDerivable(f"not derivable under {cfg}: {sorted(x.text for x in g)} < {f.text}")
        yield g, _assemble(f, inside, g, cfg)
