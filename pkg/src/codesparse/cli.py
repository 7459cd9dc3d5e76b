"""Command-line front end.

Every subcommand writes one JSON report to stdout (or a ``size,count`` CSV
histogram with ``--format csv``).  Exit codes: 0 ok, 1 usage or parse error,
2 cap exceeded, 3 heuristic search found nothing, 4 a guaranteed bound
failed (the report carries the witness).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import bounds_for, small_budget
from .errors import CapExceeded, CodeSparseError, DomainError, ParseError, SearchFailed, TheoremViolation
from .gf2 import DEFAULT_MAX_K, BitVector
from .graphs import (
    count_thin,
    cut_space,
    disjoint_hitting_sets,
    edge_connectivity,
    find_thin,
    is_hitting_set,
    is_thin,
    proper_sparsifier_search,
    thin_size_bound,
)
from .io import file_digest, format_code, format_subset, parse_code_file, parse_graph_file, parse_subset
from .sparsify import (
    DEFAULT_MAX_N,
    HALF,
    Alpha,
    coset_maximize,
    count_sparsifiers,
    iterated_sparsifier,
    min_sparsifier,
    monte_carlo_density,
    small_sparsifier_search,
    verify,
)

log = logging.getLogger("codesparse")

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_NOT_FOUND, EXIT_VIOLATION = 0, 1, 2, 3, 4

CODE_COMMANDS = ("verify", "maximize", "census", "min-size", "small", "iterate",
                 "montecarlo", "bounds", "hitting", "conjecture")
GRAPH_COMMANDS = ("cut-space", "thin", "count-thin", "find-thin", "connectivity")


class UsageError(CodeSparseError):
    pass


class NotFound(CodeSparseError):
    def __init__(self, message: str, result: dict):
        super().__init__(message)
        self.result = result


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--code", metavar="PATH", help="code file")
    src.add_argument("--graph", metavar="PATH", help="graph file (code commands use its cut space)")
    common.add_argument("--alpha", default="1/2", help="threshold p/q (default 1/2)")
    common.add_argument("--set", dest="subset", metavar="LIST", help='1-indexed list "2,3" or @file')
    common.add_argument("--ell", type=int, default=1, help="rounds of the iterated construction")
    common.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    common.add_argument("--restarts", type=int, default=64)
    common.add_argument("--trials", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    common.add_argument("--d", type=int, help="disjoint hitting sets assumed (conjecture only)")
    common.add_argument("--n", type=int, help="code length (bounds only)")
    common.add_argument("--k", type=int, help="code dimension (bounds only)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="also write the report here")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="codesparse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "verify": "check that --set is an alpha-sparsifier",
        "maximize": "climb codeword flips from --set (default: seeded random set)",
        "census": "exact count of alpha-sparsifiers",
        "min-size": "smallest alpha-sparsifier",
        "small": "1/2-sparsifier within the entropy size budget",
        "iterate": "(1 - 2^-ell)-sparsifier by repeated halving",
        "montecarlo": "density of sparsifiers among random subsets",
        "bounds": "entropy budgets for (n, k)",
        "hitting": "check --set as a hitting set, or find disjoint hitting sets",
        "conjecture": "search for S with alpha wt(c) <= wt(c_S) < wt(c)",
        "cut-space": "cut space of a graph as a code",
        "thin": "check that edge set --set is alpha-thin",
        "count-thin": "exact count of alpha-thin edge sets",
        "find-thin": "large 2^-ell-thin edge set",
        "connectivity": "edge connectivity",
    }
    for name in CODE_COMMANDS + GRAPH_COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _load(args):
    if args.graph:
        g = parse_graph_file(args.graph)
        return cut_space(g), g, file_digest(args.graph)
    if args.command in GRAPH_COMMANDS:
        raise UsageError(f"{args.command} needs --graph")
    if args.code:
        return parse_code_file(args.code), None, file_digest(args.code)
    raise UsageError("one of --code or --graph is required")


def _need_set(args, n: int) -> BitVector:
    if args.subset is None:
        raise UsageError(f"{args.command} needs --set")
    return parse_subset(args.subset, n)


def _csv(hist: dict[int, int]) -> str:
    return "size,count\n" + "".join(f"{s},{c}\n" for s, c in sorted(hist.items()))


def dispatch(args) -> tuple[dict, dict]:
    """Run one subcommand; returns (header fields, result)."""
    alpha = Alpha.parse(args.alpha)
    caps = dict(max_n=args.max_n, max_k=args.max_k)
    if args.command == "bounds" and args.code is None and args.graph is None:
        if args.n is None or args.k is None:
            raise UsageError("bounds needs --code, --graph, or both --n and --k")
        b = bounds_for(args.n, args.k)
        return {"input_digest": None, "n": args.n, "k": args.k}, b.as_dict(range(1, max(args.ell, 3) + 1))

    code, g, digest = _load(args)
    head = {"input_digest": digest, "n": code.n, "k": code.k}
    cmd = args.command

    if cmd == "verify":
        v = verify(code, _need_set(args, code.n), alpha, args.max_k)
        res = {"pass": v.passed}
        if v.violation:
            res["violation"] = {"c": format_subset(v.violation.c), "wt_c": v.violation.wt_c,
                                "wt_cS": v.violation.wt_cs}
        return head, res
    if cmd == "maximize":
        if args.subset is None:
            bits = np.random.default_rng(args.seed).integers(0, 2, size=code.n)
            S0 = BitVector.from_indices(code.n, np.flatnonzero(bits).tolist())
        else:
            S0 = parse_subset(args.subset, code.n)
        R = coset_maximize(code, S0, args.max_k)
        return head, {"start": format_subset(S0), "start_size": S0.weight(), "result": format_subset(R),
                      "size": R.weight(), "same_coset": code.contains(R ^ S0),
                      "half_sparsifier": verify(code, R, HALF, args.max_k).passed}
    if cmd == "census":
        rep = count_sparsifiers(code, alpha, args.threads, **caps)
        return head, rep.as_dict() | {"_csv": _csv(rep.size_histogram)}
    if cmd == "min-size":
        S, size = min_sparsifier(code, alpha, **caps)
        nondeg = code.is_nondegenerate()
        return head, {"set": format_subset(S), "size": size, "nondegenerate": nondeg,
                      "at_least_alpha_n": alpha.q * size >= alpha.p * code.n}
    if cmd == "small":
        S = small_sparsifier_search(code, args.mode, args.restarts, args.seed, **caps)
        budget = small_budget(code.n, code.k)
        if S is None:
            raise NotFound("no sparsifier within budget found", {"budget": budget, "mode": args.mode})
        return head, {"set": format_subset(S), "size": S.weight(), "budget": budget, "mode": args.mode,
                      "verified": verify(code, S, HALF, args.max_k).passed}
    if cmd == "iterate":
        try:
            trace = iterated_sparsifier(code, args.ell, args.mode, args.restarts, args.seed, **caps)
        except SearchFailed as exc:
            raise NotFound(str(exc), {"failed_round": exc.round_index}) from exc
        return head, trace.as_dict()
    if cmd == "montecarlo":
        mc = monte_carlo_density(code, args.trials, alpha, args.seed, args.threads, args.max_k)
        return head, {"hits": str(mc.hits), "trials": str(mc.trials), "estimate": mc.estimate,
                      "density_lower_bound": 2.0 ** -code.k}
    if cmd == "bounds":
        return head, bounds_for(code.n, code.k).as_dict(range(1, max(args.ell, 3) + 1))
    if cmd == "hitting":
        if args.subset is not None:
            return head, {"hitting": is_hitting_set(code, parse_subset(args.subset, code.n), args.max_k)}
        return head, disjoint_hitting_sets(code, args.seed, max_k=args.max_k).as_dict() | {"heuristic_lower_bound": True}
    if cmd == "conjecture":
        found = proper_sparsifier_search(code, alpha, args.trials, args.seed, args.threads, **caps)
        if found.witness is None and not found.exhaustive:
            raise NotFound("no proper sparsifier among the sampled sets", found.as_dict())
        out = found.as_dict()
        if args.d is not None:
            # d is the caller's premise; the greedy packing can only confirm it, never refute it
            packed = disjoint_hitting_sets(code, args.seed, max_k=args.max_k).d
            out |= {"d": args.d, "greedy_d": packed, "premise_witnessed": packed >= args.d}
        return head, out

    head = {"input_digest": digest, "n": g.num_edges, "k": code.k}
    if cmd == "cut-space":
        return head, {"vertices": g.num_vertices, "edges": g.num_edges, "components": g.component_count,
                      "dimension": code.k, "code_file": format_code(code)}
    if cmd == "thin":
        return head, is_thin(g, _need_set(args, g.num_edges), alpha, max_k=args.max_k).as_dict()
    if cmd == "count-thin":
        rep = count_thin(g, alpha, args.threads, **caps)
        corollary = 2 ** max(g.num_edges - (g.num_vertices - 1), 0)
        return head, rep.as_dict() | {"graph_lower_bound": str(corollary), "_csv": _csv(rep.size_histogram)}
    if cmd == "find-thin":
        try:
            T, rep, trace = find_thin(g, args.ell, args.mode, args.restarts, args.seed, **caps)
        except SearchFailed as exc:
            raise NotFound(str(exc), {"failed_round": exc.round_index}) from exc
        return head, {"T": format_subset(T), "size": T.weight(), "thin_alpha": str(rep.alpha),
                      "thin": rep.thin, "size_bound": thin_size_bound(g, args.ell), "trace": trace.as_dict()}
    if cmd == "connectivity":
        return head, {"edge_connectivity": edge_connectivity(g, args.max_k)}
    raise UsageError(f"unknown command {cmd}")


def _emit(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help / --version exit 0; argument errors exit EXIT_USAGE
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    report = {"command": args.command, "input_digest": None, "n": None, "k": None, "alpha": args.alpha}
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        report["alpha"] = str(Alpha.parse(args.alpha))
        if args.format == "csv" and args.command not in ("census", "count-thin"):
            raise UsageError("--format csv is only available for census and count-thin")
        head, result = dispatch(args)
        report.update(head)
        csv_text = result.pop("_csv", None)
        report["result"] = result
    except (ParseError, UsageError, DomainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report["error"] = {"kind": "USAGE", "message": str(exc)}
        code = EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        report["error"] = {"kind": exc.kind, "message": str(exc), "value": exc.value, "cap": exc.cap}
        code = EXIT_CAP
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        report["error"] = {"kind": "NOT_FOUND", "message": str(exc)}
        report["result"] = exc.result
        code = EXIT_NOT_FOUND
    except TheoremViolation as exc:
        print(f"THEOREM_VIOLATION: {exc}", file=sys.stderr)
        report["error"] = {"kind": "THEOREM_VIOLATION", "message": str(exc), "witness": exc.witness}
        code = EXIT_VIOLATION
    report["seed"] = args.seed
    report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    report["version"] = __version__
    if code == EXIT_OK and args.format == "csv":
        _emit(csv_text, args.out)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
