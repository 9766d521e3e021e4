"""Command line entry point: ``dynmatch {gen,twopass,dynamic,verify,bench}``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from .events import StreamFormatError, UpdateStream, read_stream, write_stream
from .estimator import EstimatorConfig, run_fully_dynamic
from .exact import maximum_matching
from .experiment import ConfigError, run_experiment
from .generators import InvalidSpec, generate, parse_genspec
from .graph import GraphError
from .streaming import StreamParams, two_pass
from .verify import streaming_report

SEED_ENV = "DYNMATCH_SEED"
DYNAMIC_COLUMNS = ["event_index", "kind", "mu_tilde", "X", "r", "explored_edges"]


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def load_input(spec: str, seed: int) -> UpdateStream:
    """A stream file path, or ``gen:family:k=v,...`` for a generated instance."""
    if spec.startswith("gen:"):
        return generate(parse_genspec(spec, default_seed=seed))
    return read_stream(spec)


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", newline="", encoding="utf-8")


def cmd_gen(args) -> int:
    stream = generate(parse_genspec(args.spec, default_seed=args.seed))
    fh = _open_out(args.out)
    write_stream(stream, fh)
    if fh is not sys.stdout:
        fh.close()
    return 0


def cmd_twopass(args) -> int:
    stream = load_input(args.input, args.seed)
    if not stream.is_insert_only():
        raise GraphError("the two-pass matcher needs an insert-only stream")
    p = StreamParams.make(args.epsilon, args.k)
    run = two_pass(stream.n, stream.edge_order(), p)
    mu = maximum_matching(stream.final_graph()).size if args.oracle else None
    out = {
        "n": stream.n,
        "mu_exact": mu,
        "matching_edges": [list(e) for e in run.result.matching.edges],
        "size": run.size,
        "ratio": run.size / mu if mu else None,
        "k": p.k,
        "kb_ceil": p.kb_ceil,
        "stored_edges": run.stored_edges,
    }
    fh = _open_out(args.out)
    json.dump(out, fh, indent=1)
    fh.write("\n")
    if fh is not sys.stdout:
        fh.close()
    return 0


def cmd_dynamic(args) -> int:
    stream = load_input(args.input, args.seed)
    cfg = EstimatorConfig.make(args.epsilon, k=args.k, d=args.d, seed=args.seed,
                               r=args.r, requery_interval=args.requery)
    rows = run_fully_dynamic(stream.n, stream.events, cfg, exact=args.oracle)
    cols = DYNAMIC_COLUMNS + (["mu_exact"] if args.oracle else [])
    fh = _open_out(args.out)
    w = csv.writer(fh)
    w.writerow(cols)
    for row in rows:
        w.writerow([getattr(row, c) if getattr(row, c) is not None else "" for c in cols])
    if fh is not sys.stdout:
        fh.close()
    return 0


def cmd_verify(args) -> int:
    stream = load_input(args.input, args.seed)
    if not stream.is_insert_only():
        raise GraphError("verification runs on the two-pass output; stream must be insert-only")
    p = StreamParams.make(args.epsilon, args.k)
    rep, info = streaming_report(stream.final_graph(), stream.edge_order(), p, seed=args.seed)
    out = {**info, **rep.to_dict()}
    fh = _open_out(args.report)
    json.dump(out, fh, indent=1)
    fh.write("\n")
    if fh is not sys.stdout:
        fh.close()
    return 0 if rep.ok else 1


def cmd_bench(args) -> int:
    records = run_experiment(args.config, args.out, figures=not args.no_figures)
    print(f"{len(records)} runs written", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dynmatch", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    seed = default_seed()

    g = sub.add_parser("gen", help="write a generated update stream")
    g.add_argument("spec", help="family:key=value,... e.g. erdos_renyi:n=100,p=0.05")
    g.add_argument("--seed", type=int, default=seed)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("twopass", help="two-pass streaming matcher")
    t.add_argument("--input", required=True, help="stream file or gen:<spec>")
    t.add_argument("--epsilon", required=True)
    t.add_argument("--k", type=int)
    t.add_argument("--seed", type=int, default=seed)
    t.add_argument("--oracle", action="store_true", help="also compute mu(G) exactly")
    t.add_argument("--out", default="-")
    t.set_defaults(func=cmd_twopass)

    d = sub.add_parser("dynamic", help="fully dynamic size estimator")
    d.add_argument("--input", required=True)
    d.add_argument("--epsilon", required=True)
    d.add_argument("--k", type=int)
    d.add_argument("--d", type=int, help="exploration depth override")
    d.add_argument("--r", type=int, help="sample count override")
    d.add_argument("--seed", type=int, default=seed)
    d.add_argument("--requery", type=int)
    d.add_argument("--oracle", action="store_true", help="add mu_exact at query checkpoints")
    d.add_argument("--out", default="-")
    d.set_defaults(func=cmd_dynamic)

    v = sub.add_parser("verify", help="check the approximation claims on one instance")
    v.add_argument("--input", required=True)
    v.add_argument("--epsilon", required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--seed", type=int, default=seed)
    v.add_argument("--report", default="-")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run an experiment config")
    b.add_argument("config")
    b.add_argument("--out", help="output directory (overrides the config)")
    b.add_argument("--no-figures", action="store_true")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        ap.error(str(exc))
    except (StreamFormatError, InvalidSpec, GraphError, OSError, ValueError) as exc:
        print(f"dynmatch: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
