"""Rules of the grounding calculus and a derivation checker.

Every logical rule decomposes one formula into the formulas that replace
it: a 0-premiss rule decomposes the target, an introduction rule builds the
target from claims about its decomposition, an elimination rule rewrites
one ground element into its decomposition.  The nine decomposition
patterns are shared by the three rule groups:

    AND       b & c       -> b, c
    OR_L/R    b | c       -> b   /  c
    OR_BOTH   b | c       -> b, c          (star)
    NEG_AND_L ~(b & c)    -> ~b  /  ~c     (NEG_AND_R)
    NEG_AND_BOTH          -> ~b, ~c        (star)
    NEG_OR    ~(b | c)    -> ~b, ~c
    NEG_NEG   ~~b         -> b

Grounds inside derivations are multisets (sorted tuples, repetitions
allowed).  Set contraction is the rule ``SetC``; a conclusion that is
already duplicate-free may also fold a contraction into the step that
produced it.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .config import ALL_CONFIGS, BASE, CalculusConfig
from .formula import And, Formula, GroundingClaim, Or, neg, parse_claim, unneg

__all__ = [
    "CalculusConfig", "BASE", "ALL_CONFIGS", "Pattern", "Stage", "RuleId",
    "decompose", "axiom_instances", "elim_results", "intro_rules_for",
    "Derivation", "RuleViolation", "DerivationError",
    "check_step", "check_derivation", "is_valid",
]


class Pattern(enum.Enum):
    AND = "And"
    OR_L = "OrL"
    OR_R = "OrR"
    OR_BOTH = "OrBoth"
    NEG_AND_L = "NegAndL"
    NEG_AND_R = "NegAndR"
    NEG_AND_BOTH = "NegAndBoth"
    NEG_OR = "NegOr"
    NEG_NEG = "NegNeg"

    @property
    def star(self) -> bool:
        return self in (Pattern.OR_BOTH, Pattern.NEG_AND_BOTH)


class Stage(enum.Enum):
    AXIOM = "Ax"
    INTRO = "Intro"
    ELIM = "Elim"
    STRUCTURAL = ""


class RuleId(str, enum.Enum):
    AxAnd = "AxAnd"
    AxOrL = "AxOrL"
    AxOrR = "AxOrR"
    AxOrBoth = "AxOrBoth"
    AxNegAndL = "AxNegAndL"
    AxNegAndR = "AxNegAndR"
    AxNegAndBoth = "AxNegAndBoth"
    AxNegOr = "AxNegOr"
    AxNegNeg = "AxNegNeg"
    IntroAnd = "IntroAnd"
    IntroOrL = "IntroOrL"
    IntroOrR = "IntroOrR"
    IntroOrBoth = "IntroOrBoth"
    IntroNegAndL = "IntroNegAndL"
    IntroNegAndR = "IntroNegAndR"
    IntroNegAndBoth = "IntroNegAndBoth"
    IntroNegOr = "IntroNegOr"
    IntroNegNeg = "IntroNegNeg"
    ElimAnd = "ElimAnd"
    ElimOrL = "ElimOrL"
    ElimOrR = "ElimOrR"
    ElimOrBoth = "ElimOrBoth"
    ElimNegAndL = "ElimNegAndL"
    ElimNegAndR = "ElimNegAndR"
    ElimNegAndBoth = "ElimNegAndBoth"
    ElimNegOr = "ElimNegOr"
    ElimNegNeg = "ElimNegNeg"
    SetC = "SetC"
    Am = "Am"

    @property
    def stage(self) -> Stage:
        for st in (Stage.AXIOM, Stage.INTRO, Stage.ELIM):
            if self.value.startswith(st.value):
                return st
        return Stage.STRUCTURAL

    @property
    def pattern(self) -> Pattern | None:
        if self.stage is Stage.STRUCTURAL:
            return None
        return Pattern(self.value[len(self.stage.value):])

    @property
    def star(self) -> bool:
        return self.pattern is not None and self.pattern.star

    @property
    def arity(self) -> int:
        if self.stage is Stage.AXIOM:
            return 0
        if self.stage is Stage.ELIM or self is RuleId.SetC:
            return 1
        if self is RuleId.Am:
            return 2
        return len(decompose_shape(self.pattern))

    def enabled(self, cfg: CalculusConfig) -> bool:
        if self.star and not cfg.star:
            return False
        if self is RuleId.Am and not cfg.am:
            return False
        return True

    @classmethod
    def of(cls, stage: Stage, pattern: Pattern) -> "RuleId":
        return _BY_PARTS[stage, pattern]


_BY_PARTS = {(r.stage, r.pattern): r for r in RuleId if r.pattern is not None}


def decompose_shape(p: Pattern) -> tuple[int, ...]:
    return (0, 1) if p in (Pattern.AND, Pattern.OR_BOTH, Pattern.NEG_AND_BOTH, Pattern.NEG_OR) else (0,)


def decompose(p: Pattern, f: Formula) -> tuple[Formula, ...] | None:
    """The formulas ``p`` decomposes ``f`` into, or None if it does not apply."""
    if p is Pattern.AND:
        return (f.left, f.right) if isinstance(f, And) else None
    if p in (Pattern.OR_L, Pattern.OR_R, Pattern.OR_BOTH):
        if not isinstance(f, Or):
            return None
        return {Pattern.OR_L: (f.left,), Pattern.OR_R: (f.right,),
                Pattern.OR_BOTH: (f.left, f.right)}[p]
    inner = unneg(f)
    if inner is None:
        return None
    if p is Pattern.NEG_NEG:
        g = unneg(inner)
        return None if g is None else (g,)
    if p is Pattern.NEG_OR:
        return (neg(inner.left), neg(inner.right)) if isinstance(inner, Or) else None
    if not isinstance(inner, And):
        return None
    return {Pattern.NEG_AND_L: (neg(inner.left),), Pattern.NEG_AND_R: (neg(inner.right),),
            Pattern.NEG_AND_BOTH: (neg(inner.left), neg(inner.right))}[p]


_PATTERNS = {star: tuple(p for p in Pattern if star or not p.star) for star in (False, True)}


@functools.lru_cache(maxsize=None)
def _instances(stage: Stage, star: bool, f: Formula) -> tuple[tuple[RuleId, tuple[Formula, ...]], ...]:
    out = []
    for p in _PATTERNS[star]:
        parts = decompose(p, f)
        if parts is not None:
            out.append((RuleId.of(stage, p), parts))
    return tuple(out)


def axiom_instances(target: Formula, cfg: CalculusConfig = BASE) -> tuple[tuple[RuleId, tuple[Formula, ...]], ...]:
    """The 0-premiss conclusions ``{ground} < target`` enabled under ``cfg``."""
    return _instances(Stage.AXIOM, cfg.star, target)


def elim_results(element: Formula, cfg: CalculusConfig = BASE) -> tuple[tuple[RuleId, tuple[Formula, ...]], ...]:
    """Elimination rules applicable to a ground element, with the formulas
    that replace it."""
    return _instances(Stage.ELIM, cfg.star, element)


def intro_rules_for(target: Formula, cfg: CalculusConfig = BASE) -> tuple[tuple[RuleId, tuple[Formula, ...]], ...]:
    """Introduction rules concluding ``target``, with their premiss targets."""
    return _instances(Stage.INTRO, cfg.star, target)


# -- derivations -------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    rule: RuleId
    conclusion: GroundingClaim
    premises: tuple["Derivation", ...] = ()
    elim_index: int | None = None

    def __iter__(self) -> Iterator["Derivation"]:
        """Nodes in postorder."""
        for p in self.premises:
            yield from p
        yield self

    def size(self) -> int:
        return sum(1 for _ in self)

    def rules(self) -> list[RuleId]:
        return [d.rule for d in self]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"rule": self.rule.value, "conclusion": str(self.conclusion)}
        if self.elim_index is not None:
            out["elim_index"] = self.elim_index
        out["premises"] = [p.to_dict() for p in self.premises]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Derivation":
        try:
            rule = RuleId(data["rule"])
        except (KeyError, ValueError) as e:
            raise ValueError(f"bad rule field in derivation record: {data.get('rule')!r}") from e
        return cls(
            rule,
            parse_claim(data["conclusion"], dedupe=False),
            tuple(cls.from_dict(p) for p in data.get("premises", [])),
            data.get("elim_index"),
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "Derivation":
        return cls.from_dict(json.loads(text))

    def pretty(self, indent: str = "") -> str:
        """Indented text rendering, conclusion first."""
        extra = f" @{self.elim_index}" if self.elim_index is not None else ""
        lines = [f"{indent}{self.conclusion}    [{self.rule.value}{extra}]"]
        for p in self.premises:
            lines.append(p.pretty(indent + "  "))
        return "\n".join(lines)


class RuleViolation(ValueError):
    def __init__(self, rule: RuleId, position: str, message: str, formula: Formula | None = None):
        self.rule = rule
        self.position = position
        self.formula = formula
        where = f" ({formula.text})" if formula is not None else ""
        super().__init__(f"{rule.value}: {position}: {message}{where}")


class DerivationError(ValueError):
    def __init__(self, path: tuple[int, ...], violation: RuleViolation):
        self.path = path
        self.violation = violation
        loc = "root" if not path else "root." + ".".join(f"premises[{i}]" for i in path)
        super().__init__(f"at {loc}: {violation}")


def _sorted(xs: Sequence[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(xs, key=lambda f: f.text))


def _check_ground(rule: RuleId, expected: Sequence[Formula], actual: GroundingClaim) -> None:
    exp = _sorted(expected)
    if actual.ground == exp:
        return
    # a contraction folded into the step
    if actual.is_canonical and set(actual.ground) == set(exp):
        return
    missing = [f for f in exp if f not in actual.ground]
    extra = [f for f in actual.ground if f not in exp]
    culprit = (missing or extra or [None])[0]
    raise RuleViolation(rule, "conclusion.ground",
                        "ground does not match the schema " + "{" + ", ".join(f.text for f in exp) + "}",
                        culprit)


def check_step(rule: RuleId, premises: Sequence[GroundingClaim], conclusion: GroundingClaim,
               cfg: CalculusConfig = BASE, elim_index: int | None = None) -> None:
    """Raise :class:`RuleViolation` unless the step is an instance of ``rule``
    enabled under ``cfg``."""
    if not rule.enabled(cfg):
        raise RuleViolation(rule, "rule", "star rule disabled" if rule.star else "Am disabled")
    if len(premises) != rule.arity:
        raise RuleViolation(rule, "premises", f"expected {rule.arity} premisses, got {len(premises)}")
    stage, pattern = rule.stage, rule.pattern
    target = conclusion.target

    if stage is Stage.AXIOM:
        parts = decompose(pattern, target)
        if parts is None:
            raise RuleViolation(rule, "conclusion.target", "target does not have the schema's shape", target)
        _check_ground(rule, parts, conclusion)
        return

    if stage is Stage.INTRO:
        parts = decompose(pattern, target)
        if parts is None:
            raise RuleViolation(rule, "conclusion.target", "target does not have the schema's shape", target)
        for k, (prem, want) in enumerate(zip(premises, parts)):
            if prem.target != want:
                raise RuleViolation(rule, f"premise[{k}].target", f"expected target {want.text}", prem.target)
        _check_ground(rule, [g for prem in premises for g in prem.ground], conclusion)
        return

    (prem, *rest) = premises
    if prem.target != target:
        raise RuleViolation(rule, "conclusion.target", f"target must stay {prem.target.text}", target)

    if stage is Stage.ELIM:
        if elim_index is None or not 0 <= elim_index < len(prem.ground):
            raise RuleViolation(rule, "elim_index", f"index {elim_index!r} out of range for premise ground")
        elem = prem.ground[elim_index]
        parts = decompose(pattern, elem)
        if parts is None:
            raise RuleViolation(rule, f"premise[0].ground[{elim_index}]", "element does not have the schema's shape", elem)
        kept = prem.ground[:elim_index] + prem.ground[elim_index + 1:]
        _check_ground(rule, kept + parts, conclusion)
        return

    if rule is RuleId.SetC:
        if not conclusion.is_canonical or set(conclusion.ground) != set(prem.ground):
            raise RuleViolation(rule, "conclusion.ground", "must list the premise's elements without repetition")
        return

    assert rule is RuleId.Am
    other = rest[0]
    if other.target != target:
        raise RuleViolation(rule, "premise[1].target", f"expected target {target.text}", other.target)
    _check_ground(rule, prem.ground + other.ground, conclusion)


def check_derivation(d: Derivation, cfg: CalculusConfig = BASE) -> None:
    """Raise :class:`DerivationError` at the first invalid node (premisses
    before conclusions)."""

    def walk(node: Derivation, path: tuple[int, ...]) -> None:
        for k, p in enumerate(node.premises):
            walk(p, path + (k,))
        try:
            check_step(node.rule, [p.conclusion for p in node.premises], node.conclusion, cfg, node.elim_index)
        except RuleViolation as v:
            raise DerivationError(path, v) from None

    walk(d, ())


def is_valid(d: Derivation, cfg: CalculusConfig = BASE) -> bool:
    try:
        check_derivation(d, cfg)
    except DerivationError:
        return False
    return True
