"""Command-line front end.

Exit codes: 0 success (``test``: accept), 1 ``test`` reject, 2 bad input or
parameters, 3 memory-budget abort.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .complex import build_clique_complex, format_faces
from .constructions import plant_large_betti
from .errors import CliqueBettiError, InvalidParams, MemoryBudgetExceeded
from .experiment import ExperimentSpec, rows_to_csv, run_experiment
from .generators import is_random, parse_generator
from .gf2 import DEFAULT_MEMORY_BUDGET
from .graph import Graph, format_edge_list, labeled_distance, permutation_distance, read_edge_list
from .homology import betti_direct, incremental_trace, rank_profile
from .testers import DEFAULT_SAMPLE_SIZE, TesterParams, betti_test, delta_bound

EXIT_OK, EXIT_REJECT, EXIT_INPUT, EXIT_MEMORY = 0, 1, 2, 3


class UsageError(CliqueBettiError):
    pass


def _add_source(p: argparse.ArgumentParser, seed_required: bool = False) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", help="generator, e.g. multipartite:3,3 | cycle:5 | gnp:60,0.9")
    src.add_argument("--input", type=Path, help="edge-list file")
    p.add_argument("--seed", type=int, required=seed_required,
                   help="random seed (required for random generators)")


def _load_graph(args: argparse.Namespace) -> Graph:
    if args.input is not None:
        return read_edge_list(args.input)
    if is_random(args.gen) and args.seed is None:
        raise UsageError(f"generator {args.gen!r} is random; pass --seed")
    return parse_generator(args.gen, args.seed)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def cmd_betti(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    c = build_clique_complex(g, args.k + 1)
    prof = rank_profile(c, args.k, args.memory_budget)
    fields = prof.to_dict()
    status = EXIT_OK
    if args.verify:
        direct = betti_direct(c, args.k, args.memory_budget)
        fields["beta_direct"] = direct
        fields["verified"] = direct == prof.beta_k
        status = EXIT_OK if direct == prof.beta_k else EXIT_REJECT
    if args.format == "json":
        text = json.dumps(fields) + "\n"
    elif args.format == "csv":
        text = ",".join(fields) + "\n" + ",".join(str(v).lower() for v in fields.values()) + "\n"
    else:
        text = "".join(f"{key} = {str(v).lower() if isinstance(v, bool) else v}\n"
                       for key, v in fields.items())
    _emit(text, args.output)
    return status


def cmd_test(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    overrides = {
        key: value
        for key, value in (("sample_size", args.sample_size), ("trials", args.trials),
                           ("density_threshold", args.threshold))
        if value is not None
    }
    params = None
    if overrides:
        overrides.setdefault("sample_size", min(DEFAULT_SAMPLE_SIZE, max(g.n, args.k + 2)))
        params = TesterParams(epsilon=1, epsilon1=0, seed=args.seed, **overrides)
    report = betti_test(g, args.k, args.eps, args.delta, params, seed=args.seed,
                        split_fraction=args.split_fraction, jobs=args.jobs)
    _emit(json.dumps(report.to_dict(), sort_keys=True) + "\n", args.output)
    return EXIT_OK if report.accepted else EXIT_REJECT


def cmd_experiment(args: argparse.Namespace) -> int:
    spec = ExperimentSpec.from_json(args.spec.read_text(encoding="utf-8"))
    rows = run_experiment(spec, jobs=args.jobs)
    _emit(rows_to_csv(rows), args.output)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    _emit(format_edge_list(_load_graph(args)), args.output)
    return EXIT_OK


def cmd_distance(args: argparse.Namespace) -> int:
    a, b = read_edge_list(args.a), read_edge_list(args.b)
    d = permutation_distance(a, b) if args.exact else labeled_distance(a, b)
    _emit(f"{d.numerator}/{d.denominator}\n", args.output)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    c = build_clique_complex(g, args.k + 1)
    steps = incremental_trace(c, args.k, args.seed if args.seed is not None else 0)
    if args.format == "json":
        text = "".join(
            json.dumps({"delta": s.delta, "dim": s.dim, "face": list(s.face),
                        "independent": s.independent, "beta": s.beta}) + "\n"
            for s in steps
        )
    else:
        text = "".join(
            f"{s.delta:+d} dim={s.dim} face={' '.join(map(str, s.face))} beta={s.beta}\n"
            for s in steps
        )
    _emit(text, args.output)
    return EXIT_OK


def cmd_faces(args: argparse.Namespace) -> int:
    c = build_clique_complex(_load_graph(args), args.max_dim)
    _emit(format_faces(c), args.output)
    return EXIT_OK


def cmd_plant(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    planted, report = plant_large_betti(g, args.k, args.alpha, args.seed)
    if args.graph_output is not None:
        args.graph_output.write_text(format_edge_list(planted), encoding="utf-8")
    _emit(json.dumps({"schema": 1, **report.to_dict()}) + "\n", args.output)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    _emit(json.dumps(delta_bound(args.eps, args.k).to_dict()) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliquebetti", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        p.add_argument("-o", "--output", type=Path, help="write to this file instead of stdout")
        return p

    p = add("betti", cmd_betti, "rank profile and Betti number of the clique complex")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="cross-check via kernel/image ranks")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET,
                   help="bytes allowed per boundary matrix")

    p = add("test", cmd_test, "sampling tester for beta_k >= (1 - delta) d_k")
    _add_source(p, seed_required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=str, required=True)
    p.add_argument("--delta", type=str, required=True)
    p.add_argument("--split-fraction", type=str, default="0.5")
    p.add_argument("--sample-size", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--threshold", type=str, default=None, help="override density threshold")
    p.add_argument("--jobs", type=int, default=1)

    p = add("experiment", cmd_experiment, "run a JSON experiment spec, emit CSV")
    p.add_argument("spec", type=Path)
    p.add_argument("--jobs", type=int, default=1)

    p = add("generate", cmd_generate, "write a generated graph as an edge list")
    _add_source(p)

    p = add("distance", cmd_distance, "edit distance between two edge-list graphs")
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--b", type=Path, required=True)
    p.add_argument("--exact", action="store_true", help="minimise over relabelings (n <= 9)")

    p = add("trace", cmd_trace, "face-by-face rebuild log of beta_k")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("faces", cmd_faces, "dump the clique complex faces")
    _add_source(p)
    p.add_argument("--max-dim", type=int, required=True)

    p = add("plant", cmd_plant, "plant a complete (k+1)-partite block")
    _add_source(p, seed_required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=str, required=True)
    p.add_argument("--graph-output", type=Path, help="write the planted graph here")

    p = add("bound", cmd_bound, "largest delta covered by the reduction")
    p.add_argument("--eps", type=str, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except (CliqueBettiError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.command == "test":
            print(json.dumps({"schema": 1, "error": str(exc)}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
