"""Command-line front end: ``macsi region|verify-examples|simulate|coop``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 bad input data.
Every output file starts with (CSV) or contains (JSON) a run manifest that
echoes the configuration; only its ``wall_time`` field varies between
otherwise identical runs.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from pathlib import Path

from . import __version__
from .channels import (
    DoubleStateChannel,
    SingleStateChannel,
    build_example_double,
    build_example_single,
    load_channel,
)
from .errors import ChannelFileError, ConfigError, MacsiError, R1Infeasible
from .regions import (
    assemble_double,
    assemble_single,
    eval_li,
    eval_thm1,
    eval_thm2,
    example_aux_li,
    example_aux_thm1,
    example_aux_thm2,
    full_coop_sum_capacity,
    informed_receiver_capacity,
    region_polygon,
    thm1_max_r2,
    thm2_feasible,
)
from .search import SearchConfig, trace_boundary
from .simulator import SimConfig, run_block_markov

__all__ = ["main", "run_manifest", "EXIT_OK", "EXIT_VERIFY", "EXIT_USAGE", "EXIT_DATA"]

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def run_manifest(subcommand: str, config: dict, seed) -> dict:
    return {
        "subcommand": subcommand,
        "config": config,
        "version": __version__,
        "seed": seed,
        "wall_time": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


# -- argument helpers ----------------------------------------------------------

def _parse_caps(text: str) -> tuple[int, ...]:
    try:
        caps = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--caps expects comma-separated integers, got {text!r}") from None
    if len(caps) not in (2, 4) or min(caps) < 1:
        raise UsageError("--caps needs 2 or 4 positive sizes (U,V[,V1,V2])")
    return caps


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        a, b, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"--r1-grid expects a:b:step, got {text!r}") from None
    if not all(map(math.isfinite, (a, b, step))) or step <= 0 or b < a or a < 0:
        raise UsageError("--r1-grid needs 0 <= a <= b and step > 0")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return tuple(round(a + k * step, 12) for k in range(count))


def _channel_from_args(args):
    if args.channel is not None:
        return load_channel(args.channel), str(args.channel)
    return (build_example_single() if args.example == "single" else build_example_double()), args.example


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# -- subcommands ---------------------------------------------------------------

def _region_rows(sample):
    return [(_fmt(p.r1), _fmt(p.r2), str(p.source_seed)) for p in sample.points]


def cmd_region(args) -> int:
    caps = _parse_caps(args.caps)
    grid = _parse_grid(args.r1_grid) if args.r1_grid else None
    ch, source = _channel_from_args(args)
    single_kinds = ("thm1", "thm2")
    if (ch.kind == "single") != (args.bound in single_kinds):
        raise UsageError(f"bound {args.bound} does not apply to a {ch.kind}-state channel")
    if args.restarts < 1:
        raise UsageError("--restarts must be >= 1")
    cfg = SearchConfig(caps=caps, restarts=args.restarts, seed=args.seed, r1_grid=grid,
                       refine_iters=args.refine_iters)
    sample = trace_boundary(ch, args.bound, cfg)
    config = {"channel": source, "bound": args.bound, **cfg.to_dict()}
    manifest = run_manifest("region", config, args.seed)
    rows = _region_rows(sample)
    out = args.out
    if out is not None and str(out).endswith(".json"):
        doc = {
            "manifest": manifest,
            "bound": args.bound,
            "points": [
                {"r1": float(r1), "r2": float(r2), "source_seed": int(seed)} for r1, r2, seed in rows
            ],
            "hull": [[float(_fmt(x)), float(_fmt(y))] for x, y in sample.hull],
        }
        _write(out, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        lines = ["# " + _dumps(manifest), "r1,r2,source_seed,bound"]
        lines += [f"{r1},{r2},{seed},{args.bound}" for r1, r2, seed in rows]
        _write(out, "\n".join(lines) + "\n")
    best = max((float(r2) for r1, r2, _ in rows if float(r1) >= 0.999), default=None)
    msg = f"{len(rows)} points, hull has {len(sample.hull)} vertices"
    if best is not None:
        msg += f", best r2 at r1>=0.999: {best:.6f}"
    print(msg, file=sys.stderr)
    return EXIT_OK


def _corrupt(ch: SingleStateChannel) -> SingleStateChannel:
    """Blend 20% of a uniform output into the law (verification test hook)."""
    law = 0.8 * ch.law.probs + 0.2 / ch.Y.size
    return SingleStateChannel.from_arrays(ch.p_w, law)


def verification_suite(restarts: int = 200, seed: int = 0, corrupt_law: bool = False) -> list[dict]:
    """The five fixed checks on the two example channels."""
    single = build_example_single()
    if corrupt_law:
        single = _corrupt(single)
    double = build_example_double()
    items = []

    cert = thm2_feasible(eval_thm2(assemble_single(single, example_aux_thm2())), (1.0, 0.5))
    items.append({
        "item": "a",
        "check": "new single-state bound contains (1, 0.5)",
        "pass": cert is not None,
        "detail": None if cert is None else [cert.r0, cert.r0_1, cert.r0_2],
    })

    vals, ok = {}, True
    for label, v_is_state in (("V=W", True), ("V const", False)):
        b = eval_thm1(assemble_single(single, example_aux_thm1(v_is_state)))
        try:
            r2 = thm1_max_r2(b, 1.0)
        except R1Infeasible as exc:
            vals[label] = f"R1Infeasible: {exc}"
            ok = False
        else:
            vals[label] = r2
            ok = ok and r2 == 0.0
    items.append({"item": "b", "check": "old bound gives R2 = 0 at R1 = 1", "pass": ok, "detail": vals})

    s = full_coop_sum_capacity(single)
    items.append({
        "item": "c",
        "check": "full-cooperation sum capacity = 1.5",
        "pass": abs(s - 1.5) <= 1e-6,
        "detail": s,
    })

    poly = region_polygon(eval_li(assemble_double(double, example_aux_li())))
    items.append({
        "item": "d",
        "check": "double-state Li-type bound contains (1, 0.5)",
        "pass": poly.contains(1.0, 0.5),
        "detail": poly.vertices().tolist(),
    })

    sample = trace_boundary(double, "thm3", SearchConfig(caps=(3, 3), restarts=restarts, seed=seed))
    pts = sample.point_array()
    near = pts[pts[:, 0] >= 0.999]
    best = float(near[:, 1].max()) if len(near) else None
    items.append({
        "item": "e",
        "check": "double-state search finds no R2 > 0.02 at R1 >= 0.999",
        "pass": best is None or best <= 0.02,
        "detail": {"best_r2": best, "points_at_r1": int(len(near)), "max_r1": float(pts[:, 0].max())},
    })
    return items


def cmd_verify_examples(args) -> int:
    if args.restarts < 1:
        raise UsageError("--restarts must be >= 1")
    items = verification_suite(args.restarts, args.seed, args.corrupt_law)
    passed = sum(it["pass"] for it in items)
    if args.json:
        doc = {
            "manifest": run_manifest(
                "verify-examples", {"restarts": args.restarts, "corrupt_law": args.corrupt_law}, args.seed
            ),
            "items": items,
            "passed": passed,
            "total": len(items),
        }
        print(json.dumps(doc, sort_keys=True, indent=1, default=str))
    else:
        for it in items:
            print(f"({it['item']}) {'PASS' if it['pass'] else 'FAIL'}  {it['check']}  [{it['detail']}]")
        print(f"{passed}/{len(items)} PASS")
    return EXIT_OK if passed == len(items) else EXIT_VERIFY


def cmd_simulate(args) -> int:
    try:
        cfg = SimConfig(n=args.n, B=args.blocks, delta=args.delta, trials=args.trials, seed=args.seed,
                        genie=args.genie)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    report = run_block_markov(build_example_single(), cfg)
    doc = report.to_dict()
    doc["manifest"] = run_manifest("simulate", cfg.to_dict(), args.seed)
    if args.out is not None:
        Path(args.out).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    print(
        f"R1={report.empirical_R1:.6f} R2={report.empirical_R2:.6f} "
        f"err={report.block_error_rate:.4f} ovf={report.overflow_rate:.4f}"
    )
    return EXIT_OK


def cmd_coop(args) -> int:
    ch, _ = _channel_from_args(args)
    if isinstance(ch, DoubleStateChannel):
        raise UsageError("coop needs a single-state channel")
    s = full_coop_sum_capacity(ch)
    c1, c2 = informed_receiver_capacity(ch, 1), informed_receiver_capacity(ch, 2)
    print(f"sum={s:.4f}")
    print(f"user1={c1:.4f} user2={c2:.4f}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_channel(p, double_ok=True):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--channel", type=Path, help="channel spec JSON file")
    g.add_argument("--example", choices=("single", "double") if double_ok else ("single",))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="macsi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"macsi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("region", help="trace an inner bound and write its points")
    _add_channel(p)
    p.add_argument("--bound", required=True, choices=("thm1", "thm2", "thm3", "li"))
    p.add_argument("--caps", default="4,4,3,3")
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--refine-iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r1-grid", default=None, help="a:b:step, inclusive")
    p.add_argument("--out", default=None, help="path.csv or path.json (default: CSV on stdout)")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify-examples", help="run the fixed example checks")
    p.add_argument("--json", action="store_true")
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-law", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_examples)

    p = sub.add_parser("simulate", help="Monte Carlo run of the block-Markov scheme")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--blocks", type=int, default=20)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--genie", action="store_true", help="unlimited description budget")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coop", help="full-cooperation and informed-receiver capacities")
    _add_channel(p, double_ok=False)
    p.set_defaults(func=cmd_coop)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"macsi: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChannelFileError as exc:
        print(f"macsi: bad channel spec: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MacsiError as exc:
        print(f"macsi: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
