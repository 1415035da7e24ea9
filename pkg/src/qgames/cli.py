"""Command-line interface: simulate, value, enumerate, serve."""
from __future__ import annotations

import argparse
import os
import sys

from .games.base import BB84, GAME_KINDS, GHZ, MEYER, THREE_BOX, GameConfig
from .harness import emit_report, run_trials
from .policies import build_profile

DEFAULT_SEED = 0


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QGA_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_SEED


def _config_from(args) -> GameConfig:
    kwargs = {}
    if getattr(args, "dephase", None) is not None:
        kwargs["dephasing_p"] = args.dephase
    if getattr(args, "delta", None) is not None:
        kwargs["disturbance_delta"] = args.delta
    if getattr(args, "inspect_prob", None) is not None:
        kwargs["inspect_prob"] = args.inspect_prob
    if getattr(args, "photons", None) is not None:
        kwargs["bb84_n_photons"] = args.photons
    if getattr(args, "check_bits", None) is not None:
        kwargs["bb84_check_bits"] = args.check_bits
    return GameConfig(**kwargs)


def _profile_kwargs(args) -> dict:
    out = {}
    for name in ("alice", "bob", "eve", "players"):
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    return out


def _cmd_simulate(args) -> int:
    config = _config_from(args)
    seed = _resolve_seed(args)
    profile = build_profile(args.game, config, **_profile_kwargs(args))
    report = run_trials(args.game, profile, config, n=args.trials, seed=seed,
                        workers=args.workers)
    if args.out:
        fmt = args.format or ("csv" if str(args.out).endswith(".csv") else "json")
        emit_report(report, fmt, args.out)
    print(f"game: {report.game}")
    print(f"profile: {report.profile}")
    print(f"trials: {report.n_trials}  accepted: {report.n_accepted}  "
          f"wins_accepted: {report.n_wins_accepted}")
    print(f"accept_rate: {report.accept_rate:.6f}")
    print(f"conditional_win_rate: {report.conditional_win_rate:.6f}")
    print(f"wilson95: [{report.wilson95[0]:.6f}, {report.wilson95[1]:.6f}]")
    print(f"seed: {report.seed}  config: {report.config_hash}")
    return 0


def _cmd_value(args) -> int:
    from . import strategy
    config = _config_from(args)
    if args.side == "classical":
        value = strategy.classical_value(args.game, config)
        print(f"classical value: {value.exact_str()} ({value.decimal()})")
        print(f"strategy: {value.strategy}")
        return 0
    value = strategy.quantum_value(args.game, config)
    if args.game == THREE_BOX:
        accept = value.details["accept_rate"]
        print(f"conditional_win: {value.exact_str()} ({value.decimal()})")
        print(f"accept_rate: {strategy._render(accept)} ({float(accept)})")
    elif args.game == BB84:
        print(f"detection_probability: {value.exact_str()} "
              f"({value.decimal():.6f})")
    else:
        print(f"quantum value: {value.exact_str()} ({value.decimal()})")
    print(f"strategy: {value.strategy}")
    return 0


def _cmd_enumerate(args) -> int:
    from . import strategy
    config = _config_from(args)
    strategies = strategy.enumerate_deterministic(args.game)
    print(f"{len(strategies)} deterministic strategies for {args.game}")
    for i, strat in enumerate(strategies):
        value = strategy.evaluate(args.game, strat, config)
        print(f"{i:3d}  {value.exact_str():>5}  {strat}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(persist_dir=args.persist)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qga",
        description="Play and verify games where quantum strategies win.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p, bb84=True):
        p.add_argument("--delta", type=float, default=None,
                       help="careless-Bob leak probability (three-box)")
        p.add_argument("--dephase", type=float, default=None,
                       help="dephasing strength after Bob's move (meyer-coin)")
        p.add_argument("--inspect-prob", dest="inspect_prob", type=float,
                       default=None, help="anti-cheat inspection rate")
        if bb84:
            p.add_argument("--photons", type=int, default=None,
                           help="BB84 photon count")
            p.add_argument("--check-bits", dest="check_bits", type=int,
                           default=None, help="BB84 publicly compared bits")

    sim = sub.add_parser("simulate", help="Monte Carlo trials -> report")
    sim.add_argument("--game", required=True, choices=GAME_KINDS)
    sim.add_argument("--trials", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--alice", default=None)
    sim.add_argument("--bob", default=None)
    sim.add_argument("--eve", default=None)
    sim.add_argument("--players", default=None)
    sim.add_argument("--out", default=None, help="report file path")
    sim.add_argument("--format", choices=("json", "csv"), default=None)
    add_config_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    val = sub.add_parser("value", help="exact game values")
    val.add_argument("--game", required=True, choices=GAME_KINDS)
    val.add_argument("--side", required=True, choices=("classical", "quantum"))
    add_config_flags(val)
    val.set_defaults(func=_cmd_value)

    enum = sub.add_parser("enumerate",
                          help="list deterministic strategies with values")
    enum.add_argument("--game", required=True, choices=(THREE_BOX, MEYER, GHZ))
    add_config_flags(enum, bb84=False)
    enum.set_defaults(func=_cmd_enumerate)

    srv = sub.add_parser("serve", help="start the live session service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--persist", default=None,
                     help="directory for per-session JSONL trial logs")
    srv.set_defaults(func=_cmd_serve)
    return parser


def cli_main(argv=None) -> int:
    """Entry point returning an exit code: 0 ok, 2 usage, 1 runtime."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    raise SystemExit(cli_main())
