"""Command-line interface.

Verbs: run, sweep, summarize, bench, replay record|verify, serve.
`run` and `sweep` share the experiment machinery; sweep additionally
prints the step-size sensitivity table and the selected alpha.  A JSON
config file can pre-fill any experiment field; explicit flags win.
"""

import argparse
import json
import pathlib
import sys

from gridarcade import replay as replay_mod
from gridarcade.agents import AGENT_KINDS, AgentConfig, make_agent
from gridarcade.core import EnvConfig, GridArcadeError, channel_names
from gridarcade.games import game_ids
from gridarcade.harness import (
    ExperimentSpec,
    bench,
    bench_with_agent,
    compare_engines,
    read_records,
    run,
    select_alpha,
    summarize_final100,
    write_records,
    write_summary_csv,
)


def parse_seeds(text):
    """"5" -> (0..4); "3,7,11" -> (3, 7, 11)."""
    if "," in text:
        return tuple(int(part) for part in text.split(",") if part.strip())
    return tuple(range(int(text)))


def parse_alpha_exponents(text):
    """"-8..-4" -> (-8..-4); "-6" -> (-6,)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            lo, hi = hi, lo
        return tuple(range(lo, hi + 1))
    return (int(text),)


def parse_listen(text):
    """"host:port" -> (host, port)."""
    host, sep, port = text.rpartition(":")
    if not sep or not host or not port.isdigit():
        raise argparse.ArgumentTypeError(
            f"expected HOST:PORT, got {text!r}"
        )
    return host, int(port)


def _add_experiment_flags(sub):
    sub.add_argument("--game", choices=game_ids())
    sub.add_argument("--agent", choices=AGENT_KINDS)
    sub.add_argument("--frames", type=int)
    sub.add_argument("--seeds", type=parse_seeds, metavar="N|a,b,c")
    sub.add_argument(
        "--alpha-exp", type=parse_alpha_exponents, metavar="LO..HI", dest="alpha_exp"
    )
    sub.add_argument("--sticky", type=float)
    sub.add_argument("--no-ramping", action="store_true")
    sub.add_argument("--out", type=pathlib.Path)
    sub.add_argument("--config", type=pathlib.Path, help="JSON ExperimentSpec file")
    sub.add_argument("--workers", type=int, default=1)


def _build_spec(args):
    base = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            base = json.load(fh)
    if args.game is not None:
        base["game"] = args.game
    if args.agent is not None:
        base["agent"] = args.agent
    if args.frames is not None:
        base["frames"] = args.frames
    if args.seeds is not None:
        base["seeds"] = args.seeds
    if args.alpha_exp is not None:
        base["alpha_exponents"] = args.alpha_exp
    if args.sticky is not None:
        base["sticky_prob"] = args.sticky
    if args.no_ramping:
        base["ramping"] = False
    if "game" not in base:
        raise SystemExit("error: --game (or a config file with one) is required")
    return ExperimentSpec.from_dict(base)


def _run_and_save(args, sweep):
    spec = _build_spec(args)
    records = run(spec, workers=args.workers)
    rows = summarize_final100(records)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        write_records(args.out / "records.jsonl", records)
        if rows:
            write_summary_csv(args.out / "summary.csv", rows)
        (args.out / "spec.json").write_text(
            json.dumps(spec.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
    failed = [r for r in records if r.failed]
    print(f"{len(records)} cells, {len(failed)} failed")
    for row in rows:
        print(
            f"alpha=2^{row['alpha_exponent']}: "
            f"final-100 mean {row['mean']:.3f} +/- {row['std_error']:.3f} "
            f"({row['n_seeds']} seeds)"
        )
    if sweep and rows:
        print(f"selected alpha: 2^{select_alpha(rows)}")
    return 0


def cmd_run(args):
    return _run_and_save(args, sweep=False)


def cmd_sweep(args):
    return _run_and_save(args, sweep=True)


def cmd_summarize(args):
    records = []
    for path in args.records:
        records.extend(read_records(path))
    rows = summarize_final100(records)
    for row in rows:
        print(
            f"alpha=2^{row['alpha_exponent']}: "
            f"final-100 mean {row['mean']:.3f} +/- {row['std_error']:.3f} "
            f"({row['n_seeds']} seeds)"
        )
    if args.out:
        write_summary_csv(args.out, rows)
    return 0


def cmd_bench(args):
    if args.compare:
        result = compare_engines(args.game, args.frames)
        for engine, stats in result.items():
            if stats is None:
                print(f"{engine}: not available in this install")
            else:
                print(
                    f"{engine}: median {stats['median_ms']:.5f} ms/frame "
                    f"(p99 {stats['p99_ns'] / 1e6:.5f} ms) over {stats['frames']} frames"
                )
        return 0
    if args.with_agent:
        stats = bench_with_agent(args.game, args.frames, args.with_agent,
                                 engine=args.engine)
    else:
        stats = bench(args.game, args.frames, engine=args.engine)
    print(
        f"{stats['game']} [{stats['engine']}"
        + (f", agent {args.with_agent}" if args.with_agent else "")
        + f"]: median {stats['median_ns']:.0f} ns ({stats['median_ms']:.5f} ms), "
        f"p99 {stats['p99_ns']:.0f} ns over {stats['frames']} frames"
    )
    return 0


def cmd_replay_record(args):
    config = EnvConfig(
        game=args.game,
        seed=args.seed,
        sticky_prob=args.sticky,
        ramping=not args.no_ramping,
    )
    n_channels = len(channel_names(config.game))
    agent = make_agent(args.agent, n_channels, AgentConfig(), args.policy_seed)
    header, frames = replay_mod.record(config, agent.act, max_frames=args.frames)
    replay_mod.write(args.out, header, frames)
    total = sum(frame["reward"] for frame in frames)
    print(f"recorded {len(frames)} frames, return {total:g} -> {args.out}")
    return 0


def cmd_replay_verify(args):
    header, frames = replay_mod.load(args.path, verify=True)
    total = sum(frame["reward"] for frame in frames)
    print(
        f"ok: {header['game']} seed {header['seed']}, {len(frames)} frames, "
        f"return {total:g}"
    )
    return 0


def cmd_serve(args):
    import uvicorn

    from gridarcade.service.server import create_app

    host, port = args.listen
    app = create_app(session_ttl=args.session_ttl, static_dir=args.static)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gridarcade",
        description="Grid arcade environments, baseline agents and tooling.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="train agents, write records + summary")
    _add_experiment_flags(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_sweep = sub.add_parser("sweep", help="step-size sweep + alpha selection")
    _add_experiment_flags(p_sweep)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_sum = sub.add_parser("summarize", help="final-100 table from records.jsonl")
    p_sum.add_argument("records", nargs="+", type=pathlib.Path)
    p_sum.add_argument("--out", type=pathlib.Path, help="write CSV here")
    p_sum.set_defaults(fn=cmd_summarize)

    p_bench = sub.add_parser("bench", help="per-frame latency")
    p_bench.add_argument("--game", required=True, choices=game_ids())
    p_bench.add_argument("--frames", type=int, default=1_000_000)
    p_bench.add_argument("--engine", default="auto",
                         choices=("auto", "pure", "compiled"))
    p_bench.add_argument("--compare", action="store_true",
                         help="pure vs compiled table")
    p_bench.add_argument("--with-agent", choices=AGENT_KINDS, default=None)
    p_bench.set_defaults(fn=cmd_bench)

    p_replay = sub.add_parser("replay", help="record or verify replay files")
    replay_sub = p_replay.add_subparsers(dest="replay_verb", required=True)
    p_rec = replay_sub.add_parser("record")
    p_rec.add_argument("--game", required=True, choices=game_ids())
    p_rec.add_argument("--seed", type=int, default=0)
    p_rec.add_argument("--sticky", type=float, default=0.1)
    p_rec.add_argument("--no-ramping", action="store_true")
    p_rec.add_argument("--agent", choices=AGENT_KINDS, default="random")
    p_rec.add_argument("--policy-seed", type=int, default=0)
    p_rec.add_argument("--frames", type=int, default=100_000,
                       help="hard cap; recording stops at terminal")
    p_rec.add_argument("--out", required=True, type=pathlib.Path)
    p_rec.set_defaults(fn=cmd_replay_record)
    p_ver = replay_sub.add_parser("verify")
    p_ver.add_argument("path", type=pathlib.Path)
    p_ver.set_defaults(fn=cmd_replay_verify)

    p_serve = sub.add_parser("serve", help="websocket play service")
    p_serve.add_argument("--listen", type=parse_listen, default=("127.0.0.1", 8000),
                         metavar="HOST:PORT")
    p_serve.add_argument("--session-ttl", type=float, default=600.0)
    p_serve.add_argument("--static", type=pathlib.Path, default=None,
                         help="serve this directory at /")
    p_serve.set_defaults(fn=cmd_serve)

    return parser


def _merge_negative_values(argv):
    """Join `--alpha-exp -8..-4` into one token; argparse would otherwise
    read the leading dash of the value as a new option."""
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok == "--alpha-exp" and i + 1 < len(argv):
            out.append(tok + "=" + argv[i + 1])
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_negative_values(list(argv)))
    try:
        return args.fn(args)
    except GridArcadeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
