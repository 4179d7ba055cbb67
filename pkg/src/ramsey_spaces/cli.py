"""Command-line entry point: ``rsk <subcommand> ...``.

Exit codes: 0 success/Verified, 1 Counterexample or forfeit, 2 usage error,
3 Inconclusive (override with --inconclusive-exit).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .axioms import COUNTEREXAMPLE, INCONCLUSIVE, SAMPLES, run_suite
from .core import BasicOpen, InvalidInput, UsageError
from .faults import FAULTS
from .finite_ramsey import Coloring, find_homogeneous, pentagon, verify_homogeneous
from .game import (
    RULES, GameConfig, payoff_from_dict, replay, run, space_named, stdin_strategy, strategy_named,
)
from .homogenizer import HORIZON, ClopenSet, ramsey_witness
from .objspec import parse_object

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _dump(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _load_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"{what}: cannot read {path} ({e.strerror})") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{what}: {path} is not valid JSON ({e.msg}, line {e.lineno})") from None


def parse_open(text, space):
    """'<a>;<spec>' with <a> a JSON approximation (empty means [])."""
    a_text, sep, spec = text.partition(";")
    if not sep:
        raise UsageError("--arena/--open: expected '<a>;<object spec>'")
    try:
        a = space.decode(json.loads(a_text)) if a_text.strip() else ()
    except json.JSONDecodeError:
        raise UsageError(f"--arena/--open: cannot read approximation {a_text!r}") from None
    return BasicOpen(a, parse_object(spec, space=space))


# ------------------------------------------------------------ subcommands

def cmd_axioms(args, out):
    space = space_named(args.space)
    if args.fault:
        if args.fault not in FAULTS:
            raise UsageError(f"--fault: choose from {', '.join(FAULTS)}")
        space, objects = FAULTS[args.fault]()
        which = [args.fault]
    else:
        specs = args.objects.split(",") if args.objects else SAMPLES[space.name]
        objects = [parse_object(s, space=space) for s in specs]
        which = args.axioms.split(",")
    if args.fault == "A.4":
        from .axioms import check_a4
        reports = [check_a4(space, (), objects[0], lambda c: c == (0,), args.budget, seed=args.seed)]
    else:
        reports = run_suite(space, objects, args.depth, args.budget, args.seed, which)
    if args.json:
        out.write(_dump([r.to_dict() for r in reports]) + "\n")
    else:
        out.write(f"{'axiom':<6} {'verdict':<15} {'bound':>5} {'samples':>8}\n")
        for r in reports:
            out.write(f"{r.axiom:<6} {r.verdict:<15} {r.bound:>5} {r.samples:>8}\n")
            if r.witness and r.verdict != "Verified":
                out.write(f"       {_dump(r.witness)}\n")
    verdicts = {r.verdict for r in reports}
    if COUNTEREXAMPLE in verdicts:
        return EXIT_FAIL
    if INCONCLUSIVE in verdicts:
        return args.inconclusive_exit
    return EXIT_OK


def cmd_homogenize(args, out):
    space = space_named(args.space)
    open_ = parse_open(args.open, space)
    X = ClopenSet.from_dict(_load_json(args.clopen, "--clopen"), space)
    got = ramsey_witness(space, open_, X, args.budget, args.horizon)
    if not got.ok:
        data = {"inconclusive": got.reason, "level": got.level}
        out.write((_dump(data) if args.json else f"Inconclusive: {got.reason}") + "\n")
        return args.inconclusive_exit
    data = got.to_dict()
    data["checked"] = got.checked
    if args.json:
        out.write(_dump(data) + "\n")
    else:
        out.write(f"side {got.side}\nH = {got.H.spec}\nprefix {data['prefix']}\n"
                  f"verified at depth {got.verified_depth}, horizon {got.horizon}, "
                  f"{got.checked} extensions\n")
    return EXIT_OK


def _stdin_reader(prompt):
    sys.stderr.write(prompt)
    sys.stderr.flush()
    line = sys.stdin.readline()
    if not line:
        raise EOFError("standard input closed")
    return line.strip()


def _pick(name, player, config):
    if name == "stdin":
        return stdin_strategy(player, _stdin_reader, lambda msg: sys.stderr.write(msg + "\n"))
    return strategy_named(name, player, config)


def cmd_game(args, out):
    space = space_named(args.space)
    arena = parse_open(args.arena, space)
    payoff = payoff_from_dict(_load_json(args.payoff, "--payoff"), space)
    config = GameConfig(arena, payoff, args.rounds)
    t = run(config, _pick(args.strat_i, "I", config), _pick(args.strat_ii, "II", config), args.seed)
    if args.json:
        out.write(t.to_json() + "\n")
    else:
        for i, rec in enumerate(t.moves):
            out.write(f"{i + 1:>3} {rec.player:<2} {_dump(rec.move.to_dict())} {rec.verdict}\n")
        line = f"outcome {t.outcome}"
        if t.decided_at_round is not None:
            line += f" at round {t.decided_at_round}"
        if t.forfeit:
            line += f" (rule {RULES.get(t.forfeit['rule'], t.forfeit['rule'])})"
        out.write(line + "\n")
    return EXIT_FAIL if t.forfeit else EXIT_OK


def cmd_ramsey(args, out):
    if args.coloring == "pentagon":
        col = pentagon()
    else:
        col = Coloring.from_json(_load_json(args.coloring, "--coloring"), args.n, args.k, args.colors)
    if (col.n, col.k, col.colors) != (args.n, args.k, args.colors):
        raise UsageError("--coloring does not match --n/--k/--colors")
    H = find_homogeneous(col, args.target)
    if H is not None and not verify_homogeneous(col, H):  # pragma: no cover
        raise InvalidInput("search returned a set that is not homogeneous")
    if args.json:
        out.write(_dump({"homogeneous": list(H) if H else None}) + "\n")
    else:
        out.write(("None" if H is None else " ".join(map(str, H))) + "\n")
    return EXIT_OK


def cmd_replay(args, out):
    data = _load_json(args.transcript, "transcript")
    t, mismatches = replay(data)
    if args.json:
        out.write(_dump({"outcome": t.outcome, "mismatches": mismatches}) + "\n")
    else:
        out.write(f"replayed {len(t.moves)} moves, outcome {t.outcome}\n")
        for m in mismatches:
            out.write(f"mismatch {_dump(m)}\n")
        if not mismatches:
            out.write("identical verdicts and outcome\n")
    return EXIT_FAIL if mismatches else EXIT_OK


# ------------------------------------------------------------------- main

def build_parser():
    seed_default = os.environ.get("RSK_SEED", "0")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=int(seed_default) if seed_default.isdigit() else 0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--inconclusive-exit", type=int, default=EXIT_INCONCLUSIVE)

    p = argparse.ArgumentParser(prog="rsk", description="Topological Ramsey spaces at desk scale.")
    sub = p.add_subparsers(dest="command", required=True)

    ax = sub.add_parser("axioms", parents=[common], help="run the axiom suites")
    ax.add_argument("--space", default="ellentuck")
    ax.add_argument("--depth", type=int, default=5)
    ax.add_argument("--objects", help="comma-separated object specs (default: built-in samples)")
    ax.add_argument("--axioms", default="A.1,A.2,A.3,A.3*")
    ax.add_argument("--budget", type=int, default=256, help="witness family size")
    ax.add_argument("--fault", help="run one axiom on its broken fixture instead")
    ax.set_defaults(func=cmd_axioms)

    ho = sub.add_parser("homogenize", parents=[common], help="clopen Ramsey witness")
    ho.add_argument("--space", default="ellentuck")
    ho.add_argument("--open", required=True, help="'<a>;<object spec>'")
    ho.add_argument("--clopen", required=True, help="JSON file {depth, accept}")
    ho.add_argument("--horizon", type=int, default=HORIZON)
    ho.add_argument("--budget", type=int, default=200_000)
    ho.set_defaults(func=cmd_homogenize)

    ga = sub.add_parser("game", parents=[common], help="play a Kastanas game")
    ga.add_argument("--space", default="ellentuck")
    ga.add_argument("--arena", required=True, help="'<a>;<object spec>'")
    ga.add_argument("--payoff", required=True, help="JSON clopen table or {\"decider\": name}")
    ga.add_argument("--strat-i", default="canonical")
    ga.add_argument("--strat-ii", default="canonical")
    ga.add_argument("--rounds", type=int, default=8)
    ga.set_defaults(func=cmd_game)

    ra = sub.add_parser("ramsey", parents=[common], help="finite homogeneous set search")
    ra.add_argument("--n", type=int, required=True)
    ra.add_argument("--k", type=int, required=True)
    ra.add_argument("--colors", type=int, required=True)
    ra.add_argument("--coloring", required=True, help="JSON file or 'pentagon'")
    ra.add_argument("--target", type=int, required=True)
    ra.set_defaults(func=cmd_ramsey)

    rp = sub.add_parser("transcript-replay", parents=[common], help="re-referee a game transcript")
    rp.add_argument("transcript")
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, InvalidInput) as e:
        sys.stderr.write(f"rsk {args.command}: {e}\n")
        return EXIT_USAGE


def entry():  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
