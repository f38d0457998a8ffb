"""Command-line front end: ``qwave <subcommand> [flags]``.

Exit status: 0 success, 2 validation error, 3 resource limit, 4 Shor retries
exhausted. Errors are printed to stderr as a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ValidationError
from .harness import ExperimentConfig, run_experiment
from .shor import DEFAULT_RETRIES


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _queries(text):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def _sides(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    p = _Parser(prog="qwave", description="Quantum algorithm scaling experiments.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    q = sub.add_parser("qft", parents=[common], help="Fourier transform equivalence and operation counts")
    mode = q.add_mutually_exclusive_group(required=True)
    mode.add_argument("--compare", action="store_true", help="compare the three transforms on random states")
    mode.add_argument("--table", action="store_true", help="operation-count table for n = 1..n-max")
    q.add_argument("--n", type=int, default=8)
    q.add_argument("--states", type=int, default=20)
    q.add_argument("--n-max", type=int, default=10)

    s = sub.add_parser("shor", parents=[common], help="factor a small odd composite")
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--retries", type=int, default=DEFAULT_RETRIES)

    g = sub.add_parser("grover", parents=[common], help="Grover search success rate")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--target", type=int, default=0)
    g.add_argument("--queries", type=_queries, default="auto")
    g.add_argument("--trials", type=int, default=100)

    w = sub.add_parser("walk", parents=[common], help="coined quantum walk spreading and spatial search")
    w.add_argument("--mode", choices=("spread", "search", "scaling"), required=True)
    w.add_argument("--d", type=int, default=1)
    w.add_argument("--side", type=int, default=None)
    w.add_argument("--sides", type=_sides, default=None, help="comma-separated side lengths (scaling mode)")
    w.add_argument("--steps", type=int, default=None)
    w.add_argument("--coin", choices=("auto", "hadamard", "grover"), default="auto")
    w.add_argument("--walker", choices=("quantum", "classical"), default="quantum")
    w.add_argument("--trials", type=int, default=1000)

    b = sub.add_parser("baseline", parents=[common], help="random / sorted / Grover / hybrid query counts")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--target", type=int, default=0)
    b.add_argument("--trials", type=int, default=10000)

    m = sub.add_parser("summary", parents=[common], help="join experiment outputs into comparison tables")
    m.add_argument("--in", dest="in_dir", required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    sc = ns.subcommand
    if sc == "qft":
        if ns.compare:
            params = {"mode": "compare", "n": ns.n, "states": ns.states}
        else:
            params = {"mode": "table", "n_max": ns.n_max}
    elif sc == "shor":
        params = {"modulus": ns.modulus, "retries": ns.retries}
    elif sc == "grover":
        params = {"n": ns.n, "target": ns.target, "queries": ns.queries, "trials": ns.trials}
    elif sc == "walk":
        params = {"mode": ns.mode, "d": ns.d, "coin": ns.coin, "steps": ns.steps}
        if ns.mode == "scaling":
            params["sides"] = ns.sides
        else:
            params["side"] = ns.side
        if ns.mode == "spread":
            params["walker"] = ns.walker
            params["trials"] = ns.trials
    elif sc == "baseline":
        params = {"n": ns.n, "target": ns.target, "trials": ns.trials}
    else:
        params = {"in_dir": ns.in_dir}
    return ExperimentConfig(sc, params, ns.seed, ns.out, ns.format)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except ValidationError as exc:
        print(json.dumps({"error": "validation", "message": str(exc), "exit_status": 2}), file=sys.stderr)
        return 2
    result = run_experiment(config_from_args(ns))
    if result.payload and not ns.out:
        sys.stdout.write(result.payload)
    elif result.payload and result.status != 0:
        sys.stdout.write(result.payload)
    if result.error is not None:
        print(json.dumps(result.error, sort_keys=True), file=sys.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
