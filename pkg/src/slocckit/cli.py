"""Command-line surface.

Subcommands: classify, compare, detect, tables, counts, fuzz, catalog.
State arguments accept an inline ket expression, ``@path`` to a file holding
one expression, or a catalog name with optional parameters like
``L_ab3(0, 1)``.  Exit codes: 0 success, 1 diagnostic failure (fuzz failure,
or LOW_CONFIDENCE under --strict), 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction

from slocckit import __version__
from slocckit.catalog import (
    NamedState,
    ParameterError,
    UnknownStateError,
    catalog_entries,
    catalog_state,
)
from slocckit.classify import (
    LOW_CONFIDENCE,
    RunConfig,
    classify,
    compare,
    emit_tables,
    genuine_entanglement,
)
from slocckit.fuzz import run_trials
from slocckit.ketparse import parse_state
from slocckit.partitions import (
    eta,
    partition_count,
    spectrum_type_count,
    tri_even_count,
)
from slocckit.states import QubitSplit, StateVector

_NAME_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def _parse_scalar(text: str):
    text = text.strip()
    if re.fullmatch(r"[+-]?\d+", text):
        return int(text)
    if re.fullmatch(r"[+-]?\d+/\d+", text):
        return Fraction(text)
    return complex(text.replace(" ", "").replace("i", "j"))


def resolve_state(arg: str) -> StateVector:
    """Inline expression, @file, or catalog name with parameters."""
    if arg.startswith("@"):
        with open(arg[1:], "r", encoding="utf-8") as fh:
            return parse_state(fh.read())
    m = _NAME_CALL.match(arg)
    if m and "|" not in arg:
        name, params = m.group(1), m.group(2)
        parameters = ()
        if params is not None and params.strip():
            parameters = tuple(_parse_scalar(p) for p in params.split(","))
        return catalog_state(NamedState(name, parameters))
    return parse_state(arg)


def _split_from_arg(arg: str | None, num_qubits: int) -> QubitSplit | None:
    if arg is None:
        return None
    rows = tuple(int(x) for x in arg.split(",") if x.strip())
    cols = tuple(q for q in range(1, num_qubits + 1) if q not in rows)
    return QubitSplit(rows, cols)


def _config_from_args(args) -> RunConfig:
    tol_rank = args.tol_rank
    tol_cluster = args.tol_cluster
    env_rank = os.environ.get("SLOCCKIT_TOL_RANK")
    env_cluster = os.environ.get("SLOCCKIT_TOL_CLUSTER")
    if tol_rank is None:
        tol_rank = float(env_rank) if env_rank else RunConfig().tol_rank
    if tol_cluster is None:
        tol_cluster = float(env_cluster) if env_cluster else RunConfig().tol_cluster
    return RunConfig(
        tol_rank=tol_rank,
        tol_cluster=tol_cluster,
        exact_mode="FORCE_FLOAT" if args.force_float else "AUTO",
        output="JSON" if args.json else "TEXT",
        seed=getattr(args, "seed", 0),
    )


def _finish(args, classifications) -> int:
    if args.strict and any(c.confidence == LOW_CONFIDENCE for c in classifications):
        return 1
    return 0


def cmd_classify(args) -> int:
    state = resolve_state(args.state)
    config = _config_from_args(args)
    split = _split_from_arg(args.split, state.num_qubits)
    c = classify(state, split, config)
    print(c.to_json() if config.output == "JSON" else c.render())
    return _finish(args, [c])


def cmd_compare(args) -> int:
    config = _config_from_args(args)
    s1 = resolve_state(args.state1)
    s2 = resolve_state(args.state2)
    split = _split_from_arg(args.split, s1.num_qubits)
    verdict = compare(s1, s2, split, config)
    if config.output == "JSON":
        import json

        print(
            json.dumps(
                {
                    "verdict": verdict.verdict,
                    "witness": verdict.witness,
                    "left": verdict.left.to_json_dict(),
                    "right": verdict.right.to_json_dict(),
                },
                separators=(",", ":"),
            )
        )
    else:
        print(verdict.render())
    return _finish(args, [verdict.left, verdict.right])


def cmd_detect(args) -> int:
    config = _config_from_args(args)
    state = resolve_state(args.state)
    c = classify(state, None, config)
    verdict = genuine_entanglement(state, None, config)
    if config.output == "JSON":
        import json

        print(json.dumps({"verdict": verdict, "classification": c.to_json_dict()}, separators=(",", ":")))
    else:
        print(verdict)
        print(c.render())
    return _finish(args, [c])


def cmd_tables(args) -> int:
    report = emit_tables(args.n)
    print(report.render_text())
    return 0


def cmd_counts(args) -> int:
    n = args.n
    big_n = 4**n
    p_row = [partition_count(i) for i in range(big_n + 1)]
    pstar_row = [tri_even_count(2 * i) for i in range(big_n + 1)]
    print(f"P(0..{big_n})  = {p_row}")
    print(f"P*(0..{2 * big_n} by 2) = {pstar_row}")
    print(f"sum P = {spectrum_type_count(n)} spectrum types / groups")
    e = eta(n)
    print(f"eta = {e}")
    print(f"eta - 1 = {e - 1} Jordan-form types / families")
    return 0


def cmd_fuzz(args) -> int:
    config = _config_from_args(args)
    state = resolve_state(args.state)
    summary = run_trials(
        state,
        trials=args.trials,
        seed=args.seed,
        descriptor=args.state,
        condition_cap=args.condition_cap,
        config=config,
    )
    print(summary.render())
    return 0 if summary.all_passed else 1


def cmd_catalog(args) -> int:
    for entry in catalog_entries():
        params = ", ".join(entry.parameter_names)
        sig = f"{entry.name}({params})" if params else entry.name
        print(f"{sig:28s} {entry.description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slocckit",
        description="SLOCC classification of 4n-qubit pure states via Jordan structure",
    )
    parser.add_argument("--version", action="version", version=f"slocckit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_strict=True):
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--tol-rank", type=float, default=None, help="relative rank tolerance")
        p.add_argument("--tol-cluster", type=float, default=None, help="relative eigenvalue clustering tolerance")
        p.add_argument("--force-float", action="store_true", help="disable the exact-rank path")
        if with_strict:
            p.add_argument("--strict", action="store_true", help="exit 1 on LOW_CONFIDENCE")

    p = sub.add_parser("classify", help="classify one state")
    p.add_argument("state", help="ket expression, @file, or catalog name(params)")
    p.add_argument("--split", default=None, help="comma-separated row qubits, e.g. 1,2")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="decide SLOCC inequivalence of two states")
    p.add_argument("state1")
    p.add_argument("state2")
    p.add_argument("--split", default=None)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("detect", help="genuine-entanglement verdict")
    p.add_argument("state")
    common(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("tables", help="reproduce the four-qubit classification tables")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("counts", help="partition counts, group and family totals")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("fuzz", help="randomized invariance verification")
    p.add_argument("state")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--condition-cap", type=float, default=100.0)
    common(p, with_strict=False)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("catalog", help="list named states")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnknownStateError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
