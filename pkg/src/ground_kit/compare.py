"""Cross-check of the bar characterisation against the saturation oracle."""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle
from .bars import enumerate_grounds, sorted_grounds
from .config import ALL_CONFIGS, DEFAULT_CLOSURE_CAP, DEFAULT_ORACLE_CAP, CalculusConfig
from .formula import Formula


@dataclass(frozen=True)
class Report:
    formula: Formula
    cfg: CalculusConfig
    bars_side: frozenset
    oracle_side: frozenset

    @property
    def only_bars(self) -> frozenset:
        return self.bars_side - self.oracle_side

    @property
    def only_oracle(self) -> frozenset:
        return self.oracle_side - self.bars_side

    @property
    def difference(self) -> frozenset:
        return self.bars_side ^ self.oracle_side

    @property
    def passed(self) -> bool:
        return not self.difference

    def to_dict(self) -> dict:
        return {
            "formula": self.formula.text,
            "cfg": {"star": self.cfg.star, "am": self.cfg.am},
            "passed": self.passed,
            "bars": sorted_grounds(self.bars_side),
            "oracle": sorted_grounds(self.oracle_side),
            "only_bars": sorted_grounds(self.only_bars),
            "only_oracle": sorted_grounds(self.only_oracle),
        }


def compare(f: Formula, cfg: CalculusConfig, oracle_cap: int = DEFAULT_ORACLE_CAP,
            closure_cap: int = DEFAULT_CLOSURE_CAP) -> Report:
    # oracle first: it is the one that refuses oversized formulas
    theirs = frozenset(oracle.saturate(f, cfg, oracle_cap))
    ours = frozenset(enumerate_grounds(f, cfg, closure_cap))
    return Report(f, cfg, ours, theirs)


def compare_all(f: Formula, configs=ALL_CONFIGS, **caps) -> list[Report]:
    return [compare(f, cfg, **caps) for cfg in configs]
