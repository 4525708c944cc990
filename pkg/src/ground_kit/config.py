from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_CLOSURE_CAP = 2 ** 20
DEFAULT_ORACLE_CAP = 14
CAP_ENV = "GROUND_KIT_CAP"


@dataclass(frozen=True)
class CalculusConfig:
    """Which optional rules are in the calculus.

    ``star`` enables the rules grounding a disjunction (or a negated
    conjunction) by both components; ``am`` enables Amalgamation.  Set
    contraction is always available.
    """

    star: bool = False
    am: bool = False

    def __str__(self) -> str:
        return f"star={str(self.star).lower()},am={str(self.am).lower()}"


BASE = CalculusConfig()
ALL_CONFIGS = tuple(CalculusConfig(s, a) for s in (False, True) for a in (False, True))


class ResourceLimit(RuntimeError):
    """An enumeration would exceed its configured cap."""


def caps_from_env(environ=None) -> dict[str, int]:
    """Read cap overrides from ``GROUND_KIT_CAP``.

    Accepts a bare integer (applied to both caps) or a comma separated list
    such as ``oracle=16,closure=4096``.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(CAP_ENV, "").strip()
    caps = {"oracle": DEFAULT_ORACLE_CAP, "closure": DEFAULT_CLOSURE_CAP}
    if not raw:
        return caps
    if raw.isdigit():
        return {"oracle": int(raw), "closure": int(raw)}
    for part in raw.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in caps or not value.strip().isdigit():
            raise ValueError(f"bad {CAP_ENV} entry {part!r}")
        caps[key] = int(value)
    return caps
