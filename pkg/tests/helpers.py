import random

from hypothesis import strategies as st

from ground_kit.calculus import (
    Derivation, RuleId, axiom_instances, elim_results, intro_rules_for,
)
from ground_kit.formula import BOTTOM, And, Atom, GroundingClaim, Imp, Or, neg

atoms = st.sampled_from(["p", "q", "r", "s1", "longName_2"]).map(Atom)
leaves = st.one_of(atoms, st.just(BOTTOM))


def formulas(max_leaves=12, with_imp=True):
    def extend(children):
        options = [
            st.builds(And, children, children),
            st.builds(Or, children, children),
            children.map(neg),
        ]
        if with_imp:
            options.append(st.builds(Imp, children, children))
        return st.one_of(*options)

    return st.recursive(leaves if with_imp else atoms, extend, max_leaves=max_leaves)


def random_derivation(rng: random.Random, f, cfg, budget=6):
    """A random valid derivation concluding a claim about ``f``, built by
    applying rules forward; None if no rule concludes anything about ``f``."""
    options = [("ax", r, parts) for r, parts in axiom_instances(f, cfg)]
    options += [("intro", r, parts) for r, parts in intro_rules_for(f, cfg)] if budget > 0 else []
    rng.shuffle(options)
    d = None
    for kind, rule, parts in options:
        if kind == "ax":
            d = Derivation(rule, GroundingClaim.multi(parts, f))
            break
        prems = [random_derivation(rng, p, cfg, budget - 1) for p in parts]
        if all(prems):
            ground = [g for p in prems for g in p.conclusion.ground]
            d = Derivation(rule, GroundingClaim.multi(ground, f), tuple(prems))
            break
    if d is None:
        return None
    for _ in range(rng.randint(0, 4)):
        g = d.conclusion.ground
        moves = [(k, r, parts) for k, x in enumerate(g) for r, parts in elim_results(x, cfg)]
        if cfg.am and budget > 0 and rng.random() < 0.3:
            other = random_derivation(rng, f, cfg, budget - 1)
            if other is not None:
                d = Derivation(RuleId.Am, GroundingClaim.multi(g + other.conclusion.ground, f), (d, other))
                continue
        if not moves:
            break
        k, r, parts = rng.choice(moves)
        d = Derivation(r, GroundingClaim.multi(g[:k] + g[k + 1:] + parts, f), (d,), k)
    if rng.random() < 0.5 and not d.conclusion.is_canonical:
        d = Derivation(RuleId.SetC, d.conclusion.canonical(), (d,))
    return d
