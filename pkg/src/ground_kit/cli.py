"""Command line interface.

Exit codes: 0 affirmative, 1 negative answer, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import bars, compare as compare_mod, tree
from .calculus import Derivation, DerivationError, check_derivation
from .config import ALL_CONFIGS, CalculusConfig, ResourceLimit, caps_from_env
from .formula import Formula, ParseError, parse, parse_claim
from .synthesis import NotDerivable, synthesize

OK, NO, INPUT_ERROR, RESOURCE_ERROR = 0, 1, 2, 3


class Reply:
    """What a command produced: a status, a payload and text lines."""

    def __init__(self, status: str, payload: Any = None, lines: list[str] | None = None,
                 diagnostics: list[str] | None = None, code: int | None = None):
        self.status = status
        self.payload = payload
        self.lines = lines or []
        self.diagnostics = diagnostics or []
        self.code = code if code is not None else {"ok": OK, "no": NO}.get(status, INPUT_ERROR)


def _ast(f: Formula) -> Any:
    kind = type(f).__name__
    if kind == "Atom":
        return {"atom": f.name}
    if kind == "Bottom":
        return {"bottom": True}
    return {kind.lower(): [_ast(c) for c in f.children()]}


def _cfg(args) -> CalculusConfig:
    return CalculusConfig(bool(args.star), bool(args.am))


def _cfg_dict(cfg: CalculusConfig) -> dict:
    return {"star": cfg.star, "am": cfg.am}


def _ground_line(g: list[str]) -> str:
    return "{" + ", ".join(g) + "}"


def cmd_parse(args) -> Reply:
    f = parse(args.formula)
    return Reply("ok", {"formula": f.text, "ast": _ast(f)}, [f.text])


def cmd_grounds(args) -> Reply:
    f = parse(args.formula)
    cfg = _cfg(args)
    rows = bars.sorted_grounds(bars.enumerate_grounds(f, cfg, caps_from_env()["closure"]))
    payload = {"formula": f.text, "cfg": _cfg_dict(cfg), "grounds": rows}
    return Reply("ok", payload, [_ground_line(r) for r in rows])


def cmd_check(args) -> Reply:
    c = parse_claim(args.claim)
    cfg = _cfg(args)
    yes = bars.is_ground(c, cfg)
    payload = {"claim": str(c), "cfg": _cfg_dict(cfg), "ground": yes}
    return Reply("ok" if yes else "no", payload, ["yes" if yes else "no"])


def cmd_prove(args) -> Reply:
    c = parse_claim(args.claim)
    cfg = _cfg(args)
    try:
        d = synthesize(c.target, c.ground, cfg)
    except NotDerivable as e:
        return Reply("no", {"claim": str(c), "cfg": _cfg_dict(cfg)}, ["not derivable"], [str(e)])
    diagnostics = []
    if args.verify:
        check_derivation(d, cfg)
        diagnostics.append(f"verified: {d.size()} rule applications")
    return Reply("ok", d.to_dict(), [d.to_json()], diagnostics)


def cmd_verify(args) -> Reply:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"derivation is not valid JSON: {e}") from None
    if isinstance(data, dict) and "payload" in data and "rule" not in data:
        data = data["payload"]
    d = Derivation.from_dict(data)
    cfg = _cfg(args)
    try:
        check_derivation(d, cfg)
    except DerivationError as e:
        return Reply("no", {"valid": False, "error": str(e), "path": list(e.path)}, ["invalid: " + str(e)])
    payload = {"valid": True, "conclusion": str(d.conclusion.canonical()), "steps": d.size()}
    return Reply("ok", payload, [f"valid: {d.conclusion.canonical()} ({d.size()} steps)"])


def cmd_tree(args) -> Reply:
    f = parse(args.formula)
    t = tree.build(f)
    dot = tree.to_dot(t)
    nodes = [{"id": n.id, "kind": n.kind.value, "formula": n.subformula.text,
              "polarity": n.polarity, "feeble": n.feeble, "children": list(n.children)} for n in t]
    return Reply("ok", {"dot": dot, "nodes": nodes}, dot.rstrip("\n").split("\n"))


def cmd_compare(args) -> Reply:
    f = parse(args.formula)
    if args.star is None and args.am is None:
        configs = ALL_CONFIGS
    else:
        stars = (False, True) if args.star is None else (args.star,)
        ams = (False, True) if args.am is None else (args.am,)
        configs = tuple(CalculusConfig(s, a) for s in stars for a in ams)
    caps = caps_from_env()
    reports = [compare_mod.compare(f, cfg, caps["oracle"], caps["closure"]) for cfg in configs]
    passed = sum(r.passed for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.cfg}: {'pass' if r.passed else 'FAIL'} ({len(r.bars_side)} grounds)")
        for g in bars.sorted_grounds(r.only_bars):
            lines.append(f"  only in bars:   {_ground_line(g)}")
        for g in bars.sorted_grounds(r.only_oracle):
            lines.append(f"  only in oracle: {_ground_line(g)}")
    lines.append(f"{passed}/{len(reports)} pass")
    payload = {"formula": f.text, "passed": passed, "total": len(reports),
               "reports": [r.to_dict() for r in reports]}
    return Reply("ok" if passed == len(reports) else "no", payload, lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ground-kit", description="Decide and derive grounding claims.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name: str, fn: Callable, arg: str, help: str, pinned_default=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument(arg)
        default = None if pinned_default else False
        sp.add_argument("--star", action=argparse.BooleanOptionalAction, default=default,
                        help="enable the rules grounding by both components")
        sp.add_argument("--am", action=argparse.BooleanOptionalAction, default=default,
                        help="enable Amalgamation")
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    command("parse", cmd_parse, "formula", "print the parsed formula")
    command("grounds", cmd_grounds, "formula", "list every provable ground")
    command("check", cmd_check, "claim", "decide a claim '{a, b} < c'")
    prove = command("prove", cmd_prove, "claim", "print a derivation of a claim")
    prove.add_argument("--verify", action="store_true", help="re-check the derivation first")
    command("verify", cmd_verify, "file", "check a serialized derivation ('-' for stdin)")
    command("tree", cmd_tree, "formula", "grounding tree as Graphviz DOT")
    command("compare", cmd_compare, "formula", "cross-check bars against the saturation oracle",
            pinned_default=True)
    return p


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Run a command; returns (exit code, stdout, stderr)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), "", ""
    try:
        reply = args.fn(args)
    except ParseError as e:
        reply = Reply("error", None, [], [f"parse error: {e}"], INPUT_ERROR)
    except ResourceLimit as e:
        reply = Reply("error", None, [], [f"resource limit: {e}"], RESOURCE_ERROR)
    except (ValueError, OSError, DerivationError) as e:
        reply = Reply("error", None, [], [str(e)], INPUT_ERROR)
    if args.format == "json":
        doc = {"status": reply.status, "payload": reply.payload, "diagnostics": reply.diagnostics}
        out = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        out = "".join(line + "\n" for line in reply.lines)
    err = "".join(d + "\n" for d in reply.diagnostics)
    return reply.code, out, err


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
