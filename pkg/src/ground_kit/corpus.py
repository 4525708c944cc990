"""Formula corpora for the equivalence experiments."""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .formula import BOTTOM, And, Atom, Formula, Imp, Or, neg


def tree_height(f: Formula) -> int:
    """Nodes on the longest root-to-leaf path of the grounding tree
    (``~a`` is a unary node, other implications are leaves)."""
    if isinstance(f, Imp):
        if f.right == BOTTOM:
            return 1 + tree_height(f.left)
        return 1
    kids = f.children()
    return 1 + (max(tree_height(c) for c in kids) if kids else 0)


def exhaustive(max_height: int, atoms: Sequence[str] = ("p", "q")) -> list[Formula]:
    """Every formula over ``atoms`` with ``&``, ``|``, ``~`` whose grounding
    tree has at most ``max_height`` levels."""
    levels: list[list[Formula]] = [[Atom(a) for a in atoms]]
    for _ in range(max_height - 1):
        upto = [f for lvl in levels for f in lvl]
        prev = levels[-1]
        fresh = [neg(f) for f in prev]
        for a in upto:
            for b in upto:
                if a in prev or b in prev:
                    fresh.append(And(a, b))
                    fresh.append(Or(a, b))
        levels.append(fresh)
    return [f for lvl in levels for f in lvl]


def count_exhaustive(max_height: int, n_atoms: int = 2) -> int:
    n = n_atoms
    for _ in range(max_height - 1):
        n = n_atoms + n + 2 * n * n
    return n


def random_formula(rng: random.Random, max_height: int, atoms: Sequence[str] = ("p", "q"),
                   imp_bottom: bool = True) -> Formula:
    """Random formula; with ``imp_bottom`` general implications and a
    free-standing ``_|_`` can occur."""
    if max_height <= 1 or rng.random() < 0.2:
        if imp_bottom and rng.random() < 0.15:
            return BOTTOM
        return Atom(rng.choice(atoms))
    kinds = ["and", "or", "neg"] + (["imp", "imp"] if imp_bottom else [])
    k = rng.choice(kinds)
    if k == "neg":
        return neg(random_formula(rng, max_height - 1, atoms, imp_bottom))
    if k == "imp":
        # the consequent is never _|_ here, otherwise this is a negation
        left = random_formula(rng, max_height - 1, atoms, imp_bottom)
        right = Atom(rng.choice(atoms)) if rng.random() < 0.5 else random_formula(rng, max_height - 1, atoms, False)
        return Imp(left, right)
    a = random_formula(rng, max_height - 1, atoms, imp_bottom)
    b = random_formula(rng, max_height - 1, atoms, imp_bottom)
    return And(a, b) if k == "and" else Or(a, b)


def mixed_sample(n: int, seed: int = 0, max_height: int = 4, atoms: Sequence[str] = ("p", "q")) -> list[Formula]:
    """``n`` distinct random formulas, each using a general implication or
    ``_|_`` somewhere."""
    rng = random.Random(seed)
    out: dict[Formula, None] = {}
    while len(out) < n:
        f = random_formula(rng, max_height, atoms)
        if _has_imp_or_bottom(f):
            out.setdefault(f, None)
    return list(out)


def _has_imp_or_bottom(f: Formula) -> bool:
    if f == BOTTOM:
        return True
    if isinstance(f, Imp):
        return f.right != BOTTOM or _has_imp_or_bottom(f.left)
    return any(_has_imp_or_bottom(c) for c in f.children())
