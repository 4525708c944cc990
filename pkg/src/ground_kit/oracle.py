"""Brute-force provability by forward chaining.

Every rule of the calculus is applied exhaustively inside a finite universe
determined by the target formula until nothing new appears.  This module
deliberately knows nothing about syntactic trees or bars; it only uses the
rule schemas, so comparing its output with :mod:`ground_kit.bars` checks
one implementation against another.

Claims are kept as multisets.  The calculus works on lists and contracts
them with a structural rule, and some claims (e.g. ``{p, q, p & q}`` for
``(p & q) & (p & q)``) are only reachable by eliminating one copy of a
repeated element.  A multiplicity bound keeps the universe finite: an
element can occur in a ground of ``t`` at most as often as it, or the
formula it negates, occurs in ``t``.  Conclusions over the bound are
contracted.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field

from .calculus import (
    BASE, CalculusConfig, RuleId, axiom_instances, elim_results, intro_rules_for,
)
from .config import DEFAULT_ORACLE_CAP, ResourceLimit
from .formula import Formula, iter_nodes, neg, subformulas, unneg

Multiset = tuple  # sorted tuple[Formula, ...]
Claim = tuple  # (target, Multiset)


class UniverseTooLarge(ResourceLimit):
    pass


class UniverseEscape(AssertionError):
    """A rule produced a claim outside the precomputed universe."""


def _key(f: Formula) -> str:
    return f.text


def _targets(f: Formula) -> frozenset[Formula]:
    star = CalculusConfig(star=True)
    seen = {f}
    todo = [f]
    while todo:
        t = todo.pop()
        for _, parts in intro_rules_for(t, star):
            for p in parts:
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
    return frozenset(seen)


@dataclass
class ClaimUniverse:
    target: Formula
    targets: frozenset[Formula]
    elements: frozenset[Formula]
    _occ: dict[Formula, Counter] = field(default_factory=dict, repr=False)

    @classmethod
    def of(cls, f: Formula) -> "ClaimUniverse":
        subs = subformulas(f)
        elements = frozenset(subs) | frozenset(neg(g) for g in subs)
        return cls(f, _targets(f), elements)

    def multiplicity(self, target: Formula, element: Formula) -> int:
        occ = self._occ.get(target)
        if occ is None:
            occ = self._occ[target] = Counter(iter_nodes(target))
        inner = unneg(element)
        return occ[element] + (occ[inner] if inner is not None else 0)

    def bound(self) -> int:
        """Upper bound on the number of claims."""
        return len(self.targets) * 2 ** len(self.elements)


@dataclass(frozen=True)
class Step:
    """How a claim was first obtained."""
    claim: Claim
    rule: RuleId
    premises: tuple[Claim, ...] = ()
    elim_index: int | None = None


@dataclass
class Saturation:
    universe: ClaimUniverse
    cfg: CalculusConfig
    claims: dict[Formula, set[Multiset]]
    steps: dict[Claim, Step]
    iterations: int

    def grounds(self, target: Formula | None = None) -> set[frozenset]:
        """Grounds of ``target`` (default: the universe's target) after set
        contraction."""
        t = self.universe.target if target is None else target
        return {frozenset(g) for g in self.claims.get(t, ())}

    def order(self) -> list[Claim]:
        """Claims of the universe, each after its premisses."""
        seen: dict[Claim, None] = {}

        def visit(c: Claim) -> None:
            if c in seen:
                return
            for p in self.steps[c].premises:
                visit(p)
            seen[c] = None

        for t in sorted(self.claims, key=lambda f: (f.size(), f.text)):
            for g in sorted(self.claims[t]):
                visit((t, g))
        return list(seen)

    def transcript(self) -> list[dict]:
        order = self.order()
        index = {c: k for k, c in enumerate(order)}
        rows = []
        for c in order:
            st = self.steps[c]
            row = {"claim": claim_text(c), "rule": st.rule.value,
                   "premises": [index[p] for p in st.premises]}
            if st.elim_index is not None:
                row["elim_index"] = st.elim_index
            rows.append(row)
        return rows


def claim_text(c: Claim) -> str:
    t, g = c
    return "{" + ", ".join(x.text for x in g) + "} < " + t.text


class Oracle:
    """Saturation engine with claims memoised per target.

    No rule concludes a claim about a smaller target from a claim about a
    larger one, so the fixed point can be computed target by target,
    premiss targets first.  Reusing one instance across formulas shares
    that work.
    """

    def __init__(self, cfg: CalculusConfig = BASE, cap: int = DEFAULT_ORACLE_CAP, contract_am: bool = True,
                 record_steps: bool = True):
        self.cfg = cfg
        self.cap = cap
        self.contract_am = contract_am
        # corpus runs only need the claims; witnesses dominate memory
        self.record_steps = record_steps
        self.claims: dict[Formula, set[Multiset]] = {}
        self.steps: dict[Claim, Step] = {}
        self.iterations = 0

    def run(self, f: Formula) -> Saturation:
        u = ClaimUniverse.of(f)
        if len(u.elements) > self.cap:
            raise UniverseTooLarge(
                f"{f.text}: {len(u.elements)} candidate ground elements exceed the oracle cap of {self.cap}")
        self._ensure(f)
        claims = {t: self.claims[t] for t in u.targets}
        return Saturation(u, self.cfg, claims, self.steps, self.iterations)

    def _ensure(self, t: Formula) -> set[Multiset]:
        done = self.claims.get(t)
        if done is not None:
            return done
        intros = intro_rules_for(t, self.cfg)
        for _, parts in intros:
            for pt in parts:
                self._ensure(pt)
        self._close(t, intros)
        return self.claims[t]

    def _close(self, t: Formula, intros) -> None:
        cfg = self.cfg
        u = ClaimUniverse.of(t)
        bucket: set[Multiset] = set()
        self.claims[t] = bucket
        queue: deque[Multiset] = deque()
        by_set: dict[frozenset, Multiset] = {}

        def add(ground, rule: RuleId, premises: tuple = (), elim_index=None) -> None:
            g = tuple(sorted(ground, key=_key))
            distinct = set(g)
            if len(distinct) < len(g):
                counts = Counter(g)
                if any(n > 1 and n > u.multiplicity(t, x) for x, n in counts.items()):
                    g = tuple(sorted(distinct, key=_key))
            if not u.elements.issuperset(distinct):
                raise UniverseEscape(f"{rule.value} produced {claim_text((t, g))} outside its universe")
            if g in bucket:
                return
            bucket.add(g)
            if self.record_steps:
                c = (t, g)
                self.steps[c] = Step(c, rule, premises, elim_index)
            queue.append(g)

        for rule, parts in axiom_instances(t, cfg):
            add(parts, rule)
        for rule, parts in intros:
            if len(parts) == 1:
                for g in sorted(self.claims[parts[0]]):
                    add(g, rule, ((parts[0], g),))
            else:
                a, b = parts
                for ga in sorted(self.claims[a]):
                    for gb in sorted(self.claims[b]):
                        add(ga + gb, rule, ((a, ga), (b, gb)))

        while queue:
            self.iterations += 1
            g = queue.popleft()
            c = (t, g)
            if len(set(g)) < len(g):
                add(set(g), RuleId.SetC, (c,))
            for k, x in enumerate(g):
                if k and g[k - 1] == x:
                    continue
                rest = g[:k] + g[k + 1:]
                for rule, parts in elim_results(x, cfg):
                    add(rest + parts, rule, (c,), k)
            if not cfg.am:
                continue
            if not self.contract_am:
                for h in list(bucket):
                    add(g + h, RuleId.Am, (c, (t, h)))
                continue
            # contracted conclusions only depend on the premisses' element sets
            key = frozenset(g)
            if key in by_set:
                continue
            by_set[key] = g
            for other, h in list(by_set.items()):
                add(key | other, RuleId.Am, (c, (t, h)))


def saturate_full(f: Formula, cfg: CalculusConfig = BASE, cap: int = DEFAULT_ORACLE_CAP) -> Saturation:
    """Least fixed point of all enabled rules over the universe of ``f``."""
    return Oracle(cfg, cap).run(f)


def saturate(f: Formula, cfg: CalculusConfig = BASE, cap: int = DEFAULT_ORACLE_CAP) -> set[frozenset]:
    """All grounds ``X`` with ``X < f`` derivable under ``cfg``."""
    return saturate_full(f, cfg, cap).grounds()
