"""Command-line front end.

Exit codes: 0 success, 1 oracle disagreement in ``scan --verify``,
2 invalid input (bad parameters, disconnected instance, bound exceeded),
3 valid but negative (``decompose`` on a Cartesian-prime instance).
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartesian import (
    DEFAULT_ORACLE_BOUND,
    DecompPair,
    DisconnectedError,
    FactorizationError,
    construct_decomposition,
    decomposable_params,
    is_hamming,
    oracle_decomposable,
    prime_factorize,
    verify_decomposition,
)
from .graph import DEFAULT_AUT_BOUND, BoundExceededError, automorphism_count, parse_edge_list
from .paley import GPaleyParams, ParameterError, affine_order, build, valid_triples, validate_params

SCAN_BOUND = 10**6

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_NEGATIVE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _header(params: GPaleyParams) -> dict:
    F = params.field
    return {
        "field": {"p": F.p, "n": F.n, "modulus": list(F.modulus), "xi": F.xi},
        "params": {"p": params.p, "n": params.n, "k": params.k, "d": params.d},
    }


def _pair_entry(params: GPaleyParams, pair: DecompPair) -> dict:
    return {"b": pair.b, "c": pair.c, "hamming": is_hamming(params, pair)}


def certificate(params: GPaleyParams, aut: bool = False, aut_bound: int = DEFAULT_AUT_BOUND) -> dict:
    """JSON-ready summary; every listed pair carries a verified witness."""
    cert = _header(params)
    cert["connected"] = params.connected
    cert["affine_order"] = affine_order(params)
    pairs = decomposable_params(params) if params.connected else []
    witnesses = {}
    for pair in pairs:
        w = construct_decomposition(params, pair)
        if not verify_decomposition(params, w):
            raise AssertionError(f"witness for {tuple(pair)} failed re-verification")
        witnesses[pair] = w
    cert["decomposable"] = bool(pairs)
    cert["pairs"] = [_pair_entry(params, pr) for pr in pairs]
    if pairs:
        top = max(pairs, key=lambda pr: pr.b)
        w = witnesses[top]
        cert["canonical"] = {
            **_pair_entry(params, top),
            "factor": {"p": params.p, "n": params.n // top.b, "k": top.c},
            "C": w.C,
            "basis": w.basis,
        }
    else:
        cert["canonical"] = None
    if aut:
        cert["aut_order"] = automorphism_count(build(params), aut_bound)
    return cert


def _params(args) -> GPaleyParams:
    try:
        return validate_params(args.p, args.n, args.k)
    except ParameterError as exc:
        raise CliError(str(exc)) from exc


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2))
    out.write("\n")


def cmd_check(args, out) -> int:
    params = _params(args)
    aut_bound = args.max_vertices or DEFAULT_AUT_BOUND
    if args.aut and params.q > aut_bound:
        raise CliError(f"{params.q} vertices exceeds automorphism bound {aut_bound}")
    _dump(certificate(params, aut=args.aut, aut_bound=aut_bound), out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    params = _params(args)
    if not params.connected:
        raise CliError(f"{params!r} is disconnected")
    pairs = decomposable_params(params)
    if not pairs:
        raise CliError(f"{params!r} is Cartesian-prime", EXIT_NEGATIVE)
    if args.b is None:
        pair = max(pairs, key=lambda pr: pr.b)
    else:
        match = [pr for pr in pairs if pr.b == args.b]
        if not match:
            valid = ", ".join(str(pr.b) for pr in pairs)
            raise CliError(f"b = {args.b} is not valid for {params!r} (valid: {valid})")
        pair = match[0]
    w = construct_decomposition(params, pair)
    if not verify_decomposition(params, w):
        raise AssertionError("witness failed re-verification")
    doc = _header(params)
    doc["hamming"] = is_hamming(params, pair)
    doc["factor_params"] = {"p": params.p, "n": params.n // pair.b, "k": pair.c}
    doc["witness"] = w.to_json()
    _dump(doc, out)
    return EXIT_OK


def cmd_factorize(args, out) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    try:
        g = parse_edge_list(text)
        result = prime_factorize(g, args.max_vertices or DEFAULT_ORACLE_BOUND)
    except (ValueError, DisconnectedError, BoundExceededError) as exc:
        raise CliError(str(exc)) from exc
    except FactorizationError as exc:  # pragma: no cover - would be a bug
        raise CliError(f"factorization failed verification: {exc}", EXIT_MISMATCH) from exc
    _dump({
        "vertices": g.n,
        "edges": g.m,
        "prime": len(result.factors) == 1,
        "factors": [
            {"vertices": f.n, "edges": [list(e) for e in f.edges()], "layer": layer}
            for f, layer in zip(result.factors, result.layers)
        ],
        "reconstruction": result.reconstruction,
    }, out)
    return EXIT_OK


def scan_rows(max_order: int, verify: bool = False, oracle_bound: int = DEFAULT_ORACLE_BOUND):
    """One dict per connected instance with p^n <= max_order."""
    for p, n, k in valid_triples(max_order, connected_only=True):
        params = validate_params(p, n, k)
        pairs = decomposable_params(params)
        row = {
            "p": p, "n": n, "k": k,
            "status": "decomposable" if pairs else "prime",
            "pairs": [[pr.b, pr.c] for pr in pairs],
            "hamming": [is_hamming(params, pr) for pr in pairs],
        }
        if verify:
            if params.q > oracle_bound:
                row["oracle"] = "skip"
            else:
                row["oracle"] = "ok" if oracle_decomposable(params, oracle_bound) == bool(pairs) else "MISMATCH"
        yield row


def format_row(row: dict) -> str:
    pairs = ",".join(f"({b},{c})" for b, c in row["pairs"]) or "-"
    ham = ",".join("yes" if h else "no" for h in row["hamming"]) or "-"
    cells = [str(row["p"]), str(row["n"]), str(row["k"]), row["status"], pairs, ham]
    if "oracle" in row:
        cells.append(row["oracle"])
    return "\t".join(cells)


def cmd_scan(args, out) -> int:
    if args.max_order > SCAN_BOUND:
        raise CliError(f"max_order {args.max_order} exceeds scan bound {SCAN_BOUND}")
    rows = list(scan_rows(args.max_order, args.verify, args.max_vertices or DEFAULT_ORACLE_BOUND))
    if args.json:
        _dump(rows, out)
    else:
        cols = "p\tn\tk\tstatus\tpairs\thamming" + ("\toracle" if args.verify else "")
        out.write(f"# {cols}\n")
        for row in rows:
            out.write(format_row(row) + "\n")
    if any(row.get("oracle") == "MISMATCH" for row in rows):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_export(args, out) -> int:
    g = build(_params(args))
    text = g.to_dot(f"GPaley_{args.p}_{args.n}_{args.k}") if args.format == "dot" else g.to_edge_list()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpaley", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def triple(sp):
        sp.add_argument("p", type=int)
        sp.add_argument("n", type=int)
        sp.add_argument("k", type=int)

    sp = sub.add_parser("check", help="certificate for GPaley(p^n, k)")
    triple(sp)
    sp.add_argument("--aut", action="store_true", help="also count automorphisms")
    sp.add_argument("--max-vertices", type=int, help=f"automorphism bound (default {DEFAULT_AUT_BOUND})")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="verified decomposition witness")
    triple(sp)
    sp.add_argument("--b", type=int, help="number of factors (default: largest valid)")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("factorize", help="prime-factorize a graph given as an edge list")
    sp.add_argument("file", help="edge-list file, or - for stdin")
    sp.add_argument("--max-vertices", type=int, help=f"oracle bound (default {DEFAULT_ORACLE_BOUND})")
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("scan", help="tabulate all connected instances up to an order")
    sp.add_argument("max_order", type=int)
    sp.add_argument("--verify", action="store_true", help="cross-check with the graph oracle")
    sp.add_argument("--max-vertices", type=int, help=f"oracle bound (default {DEFAULT_ORACLE_BOUND})")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--tsv", action="store_true", help="tab-separated rows (default)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("export", help="write the graph as an edge list or DOT")
    triple(sp)
    sp.add_argument("--format", choices=["edges", "dot"], default="edges")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # allow the format as a bare positional: export 2 2 3 dot
    if argv[:1] == ["export"] and len(argv) >= 5 and argv[4] in ("edges", "dot"):
        argv[4:5] = ["--format", argv[4]]
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"gpaley: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
