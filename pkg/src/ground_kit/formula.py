"""Syntax of the grounding language.

Formulas are built from sentence letters, ``_|_``, conjunction, disjunction
and implication.  Negation is not a constructor: ``~a`` is read as
``a -> _|_`` when parsing and printed back as ``~a``.

Concrete syntax, loosest to tightest binding::

    a -> b      right associative
    a | b       left associative
    a & b       left associative
    ~a

Grounding claims are written ``{a1, ..., an} < b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Atom", "Bottom", "And", "Or", "Imp", "BOTTOM",
    "neg", "unneg", "is_neg",
    "GroundingClaim", "ParseError",
    "parse", "parse_claim", "print_formula", "subformulas",
    "canonical", "sort_key",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")

# binding strength used by the printer
_IMP, _OR, _AND, _NEG, _ATOM = 1, 2, 3, 4, 5


@dataclass(frozen=True, eq=False)
class Formula:
    """Base class.  Subclasses cache their printed form and hash."""

    _text: str = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        text = self._render()
        object.__setattr__(self, "_text", text)
        object.__setattr__(self, "_hash", hash((type(self).__name__, text)))

    def __hash__(self) -> int:
        return self._hash

    # printing is injective, so the printed form decides equality
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self._hash == other._hash and self._text == other._text

    def __str__(self) -> str:
        return self._text

    def __lt__(self, other: "Formula") -> bool:
        return self._text < other._text

    @property
    def text(self) -> str:
        return self._text

    @property
    def precedence(self) -> int:
        raise NotImplementedError

    def children(self) -> tuple["Formula", ...]:
        return ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())

    def _render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str = ""

    def __post_init__(self) -> None:
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        super().__post_init__()

    @property
    def precedence(self) -> int:
        return _ATOM

    def _render(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, eq=False)
class Bottom(Formula):
    @property
    def precedence(self) -> int:
        return _ATOM

    def _render(self) -> str:
        return "_|_"

    def __repr__(self) -> str:
        return "Bottom()"


def _wrap(f: Formula, needs_parens: bool) -> str:
    return f"({f.text})" if needs_parens else f.text


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula = None  # type: ignore[assignment]
    right: Formula = None  # type: ignore[assignment]

    @property
    def precedence(self) -> int:
        return _AND

    def children(self):
        return (self.left, self.right)

    def _render(self) -> str:
        l = _wrap(self.left, self.left.precedence < _AND)
        r = _wrap(self.right, self.right.precedence <= _AND)
        return f"{l} & {r}"

    def __repr__(self) -> str:
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula = None  # type: ignore[assignment]
    right: Formula = None  # type: ignore[assignment]

    @property
    def precedence(self) -> int:
        return _OR

    def children(self):
        return (self.left, self.right)

    def _render(self) -> str:
        l = _wrap(self.left, self.left.precedence < _OR)
        r = _wrap(self.right, self.right.precedence <= _OR)
        return f"{l} | {r}"

    def __repr__(self) -> str:
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=False)
class Imp(Formula):
    left: Formula = None  # type: ignore[assignment]
    right: Formula = None  # type: ignore[assignment]

    @property
    def precedence(self) -> int:
        return _NEG if isinstance(self.right, Bottom) else _IMP

    def children(self):
        return (self.left, self.right)

    def _render(self) -> str:
        if isinstance(self.right, Bottom):
            return "~" + _wrap(self.left, self.left.precedence < _NEG)
        l = _wrap(self.left, self.left.precedence <= _IMP)
        return f"{l} -> {self.right.text}"

    def __repr__(self) -> str:
        return f"Imp({self.left!r}, {self.right!r})"


BOTTOM = Bottom()


def neg(f: Formula) -> Imp:
    """``~f``, i.e. ``f -> _|_``."""
    return Imp(f, BOTTOM)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bottom)


def unneg(f: Formula) -> Formula | None:
    """The formula under an outermost ``~``, or None."""
    return f.left if is_neg(f) else None


def sort_key(f: Formula) -> str:
    return f.text


def print_formula(f: Formula) -> str:
    return f.text


def subformulas(f: Formula) -> tuple[Formula, ...]:
    """All subterms of ``f`` (``f`` included), children before parents."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        for c in g.children():
            walk(c)
        seen.setdefault(g, None)

    walk(f)
    return tuple(seen)


def canonical(ground: Iterable[Formula]) -> tuple[Formula, ...]:
    """Deduplicated ground in lexicographic order of printed form."""
    return tuple(sorted(set(ground), key=sort_key))


@dataclass(frozen=True)
class GroundingClaim:
    """``{ground} < target``.

    ``ground`` is a sorted tuple.  Claims built with :meth:`of` are
    deduplicated; :meth:`multi` keeps repetitions, which derivations need
    before the set-contraction rule is applied.
    """

    ground: tuple[Formula, ...]
    target: Formula

    @classmethod
    def of(cls, ground: Iterable[Formula], target: Formula) -> "GroundingClaim":
        g = canonical(ground)
        if not g:
            raise ValueError("a ground must contain at least one formula")
        return cls(g, target)

    @classmethod
    def multi(cls, ground: Iterable[Formula], target: Formula) -> "GroundingClaim":
        g = tuple(sorted(ground, key=sort_key))
        if not g:
            raise ValueError("a ground must contain at least one formula")
        return cls(g, target)

    @property
    def is_canonical(self) -> bool:
        return len(set(self.ground)) == len(self.ground)

    def canonical(self) -> "GroundingClaim":
        return self if self.is_canonical else GroundingClaim.of(self.ground, self.target)

    def ground_set(self) -> frozenset[Formula]:
        return frozenset(self.ground)

    def __str__(self) -> str:
        return "{" + ", ".join(g.text for g in self.ground) + "} < " + self.target.text


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"{message} at byte {offset}" + (f" (expected one of: {exp})" if exp else ""))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<bot>_\|_)|(?P<imp>->)|(?P<atom>[a-z][a-zA-Z0-9_]*)|(?P<op>[~&|(){},<]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    data = text.encode("utf-8")  # offsets are reported in bytes
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:]
            if not rest.strip():
                break
            start = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", len(text[:start].encode()))
        kind = m.lastgroup
        value = m.group(kind)
        offset = len(text[: m.start(kind)].encode())
        tokens.append(("op" if kind == "op" else kind, value, offset))
        pos = m.end()
    tokens.append(("eof", "", len(data)))
    return tokens


_PRIMARY_START = ("atom", "_|_", "~", "(")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return val == value and kind != "atom"

    def expect(self, value: str) -> None:
        if not self.at(value):
            self.fail({value})
        self.i += 1

    def fail(self, expected: Iterable[str]):
        kind, val, off = self.peek()
        found = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"unexpected {found}", off, expected)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "atom":
            self.i += 1
            return Atom(val)
        if kind == "bot":
            self.i += 1
            return BOTTOM
        if self.at("~"):
            self.i += 1
            return neg(self.unary())
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        self.fail(_PRIMARY_START)

    def end(self, extra: Iterable[str] = ()) -> None:
        if self.peek()[0] != "eof":
            self.fail({"end of input", *extra})


def parse(text: str) -> Formula:
    """Parse a formula; ``~a`` becomes ``Imp(a, Bottom)``."""
    p = _Parser(text)
    if p.peek()[0] == "eof":
        raise ParseError("empty input", 0, _PRIMARY_START)
    f = p.formula()
    p.end({"->", "|", "&"})
    return f


def parse_claim(text: str, *, dedupe: bool = True) -> GroundingClaim:
    """Parse ``{a1, ..., an} < b`` with n >= 1.

    With ``dedupe=False`` repeated ground elements are kept, as needed when
    reading back serialized derivations.
    """
    p = _Parser(text)
    p.expect("{")
    if p.at("}"):
        p.fail(_PRIMARY_START)
    ground = [p.formula()]
    while p.at(","):
        p.i += 1
        ground.append(p.formula())
    p.expect("}")
    p.expect("<")
    target = p.formula()
    p.end({"->", "|", "&"})
    if dedupe:
        return GroundingClaim.of(ground, target)
    return GroundingClaim.multi(ground, target)


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Every subterm occurrence, preorder."""
    yield f
    for c in f.children():
        yield from iter_nodes(c)
