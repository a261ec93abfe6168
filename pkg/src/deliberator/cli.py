"""Command-line driver: one-shot queries, a REPL, and the HTTP service.

Exit codes: 0 success, 1 usage, 2 parse error, 3 engine refusal.
`--json` switches every command to the documented trace shapes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from fractions import Fraction
from typing import Optional

from .core import DEFAULT_CONFIG, EngineConfig, format_rational
from .dot import export_dot
from .dsl import ParseError, parse_file, parse_literal, serialize
from .engine import OracleScaleError, Trace, justify
from .model import RollupError, recommend, salient_paths
from .session import Session


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage, not argparse's 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="deliberator", description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--budget", type=int, default=DEFAULT_CONFIG.budget,
                        help="rule-instantiation budget")
    parser.add_argument("--max-arity", type=int, default=DEFAULT_CONFIG.max_arity,
                        help="largest conjunction considered for additive splits")
    parser.add_argument("--fallback", type=str, default=None,
                        help="comma-separated act order used when arguments tie")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("justify", help="dialectical status of a literal")
    p.add_argument("file")
    p.add_argument("literal")

    p = sub.add_parser("recommend", help="pick an act, or report the standoff")
    p.add_argument("file")

    p = sub.add_parser("trace", help="full dialectic for a literal")
    p.add_argument("file")
    p.add_argument("literal")

    p = sub.add_parser("dot", help="DOT graph of the dialectic for a literal")
    p.add_argument("file")
    p.add_argument("literal")

    p = sub.add_parser("salient", help="paths to strongly valued states")
    p.add_argument("file")
    p.add_argument("threshold")
    p.add_argument("depth", type=int)

    p = sub.add_parser("repl", help="interactive refinement session")
    p.add_argument("file")

    p = sub.add_parser("serve", help="HTTP service for the browser client")
    p.add_argument("file")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", type=str, default="127.0.0.1")
    return parser


def _config(args) -> EngineConfig:
    return EngineConfig(
        budget=args.budget,
        max_arity=args.max_arity,
        activation_cap=DEFAULT_CONFIG.activation_cap,
    )


def _fallback(args) -> Optional[list[str]]:
    if not args.fallback:
        return None
    return [a.strip() for a in args.fallback.split(",") if a.strip()]


def _print_trace(trace: Trace, out) -> None:
    ids = trace.argument_ids()
    print(f"goal: {trace.goal}", file=out)
    print(f"verdict: {trace.verdict.value}" + (" (partial)" if trace.partial else ""), file=out)
    for arg in sorted(trace.pool, key=lambda a: a.key()):
        print(f"  {ids[arg]}: {arg.conclusion}  [{trace.label_of(arg).value}]", file=out)
        for rid in arg.rule_ids():
            print(f"      {rid}", file=out)
    if trace.edges:
        print("attacks:", file=out)
        for e in sorted(trace.edges, key=lambda e: (ids[e.attacker], ids[e.target], str(e.point))):
            verb = "defeats" if e.kind.value == "defeat" else "interferes with"
            print(f"  {ids[e.attacker]} {verb} {ids[e.target]} at {e.point}", file=out)


def run_command(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    config = _config(args)
    try:
        if args.command == "serve":
            return _cmd_serve(args, config)
        document = parse_file(args.file)
        if args.command == "justify":
            literal = parse_literal(args.literal)
            trace = justify(document.kb, literal, config.budget, config)
            if args.json:
                print(json.dumps(trace.to_json_dict(), indent=2), file=out)
            else:
                print(trace.verdict.value + (" (partial)" if trace.partial else ""), file=out)
            return 0
        if args.command == "recommend":
            rec = recommend(document.model, document.kb, _fallback(args), config)
            if args.json:
                print(json.dumps(rec.to_json_dict(), indent=2), file=out)
            else:
                print(rec.summary(), file=out)
            return 0
        if args.command == "trace":
            literal = parse_literal(args.literal)
            trace = justify(document.kb, literal, config.budget, config)
            if args.json:
                print(json.dumps(trace.to_json_dict(), indent=2), file=out)
            else:
                _print_trace(trace, out)
            return 0
        if args.command == "dot":
            literal = parse_literal(args.literal)
            trace = justify(document.kb, literal, config.budget, config)
            print(export_dot(trace), end="", file=out)
            return 0
        if args.command == "salient":
            result = salient_paths(
                document.model, document.kb, Fraction(args.threshold), args.depth
            )
            if args.json:
                print(
                    json.dumps(
                        {
                            "salient_states": list(result.salient_states),
                            "paths": [
                                {"act": a, "states": list(chain)}
                                for a, chain in result.paths
                            ],
                            "states": list(result.model.states),
                            "covered_mass": {
                                a: format_rational(m) for a, m in result.covered_mass.items()
                            },
                            "notice": result.notice,
                        },
                        indent=2,
                    ),
                    file=out,
                )
            else:
                if result.notice:
                    print(result.notice, file=out)
                else:
                    print("salient states: " + ", ".join(result.salient_states), file=out)
                    for act, chain in result.paths:
                        print(f"  {act}: " + " -> ".join(chain), file=out)
                    for act, mass in result.covered_mass.items():
                        print(f"  mass({act}) = {format_rational(mass)}", file=out)
            return 0
        if args.command == "repl":
            return _cmd_repl(args, config, out)
        raise UsageError(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OracleScaleError, RollupError) as exc:
        print(f"engine refusal: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


_REPL_HELP = """\
statements ending with '.' refine the model; commands:
  :recommend            current recommendation
  :justify <literal>    dialectical status
  :trace <literal>      full dialectic
  :show                 canonical document
  :undo                 drop the last statement
  :quit                 leave
"""


def _cmd_repl(args, config: EngineConfig, out) -> int:
    session = Session(
        Path(args.file).read_text(encoding="utf-8"), fallback=_fallback(args), config=config
    )
    if session.recommendation:
        print(session.recommendation.summary(), file=out)
    while True:
        try:
            line = input("deliberate> ").strip()
        except EOFError:
            return 0
        if not line:
            continue
        try:
            if line in (":quit", ":q"):
                return 0
            if line == ":help":
                print(_REPL_HELP, file=out)
            elif line == ":recommend":
                rec = session.recommendation
                print(rec.summary() if rec else "NO_ARGUMENT", file=out)
            elif line == ":show":
                print(serialize(session.document), end="", file=out)
            elif line == ":undo":
                session.undo()
                rec = session.recommendation
                print(rec.summary() if rec else "NO_ARGUMENT", file=out)
            elif line.startswith(":justify "):
                literal = parse_literal(line[len(":justify "):])
                print(justify(session.document.kb, literal, config=config).verdict.value, file=out)
            elif line.startswith(":trace "):
                literal = parse_literal(line[len(":trace "):])
                _print_trace(justify(session.document.kb, literal, config=config), out)
            elif line.startswith(":"):
                print(f"unknown command {line!r}; :help lists them", file=out)
            else:
                session.apply_statement(line)
                rec = session.recommendation
                print(rec.summary() if rec else "NO_ARGUMENT", file=out)
        except ParseError as exc:
            print(f"parse error: {exc}", file=out)
        except (IndexError, ValueError) as exc:
            print(f"error: {exc}", file=out)


def _cmd_serve(args, config: EngineConfig) -> int:
    import uvicorn

    from .service import create_app

    session = Session(
        Path(args.file).read_text(encoding="utf-8"), fallback=_fallback(args), config=config
    )
    app = create_app(session)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
