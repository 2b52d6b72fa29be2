"""Command-line entry point: ``seminfo <subcommand> [options]``.

Every run prints a JSON document (or CSV with ``--format csv``) whose
``manifest`` block records the subcommand, inputs, resolved flags and seed.
With ``--output DIR`` the same content is written to ``DIR/<subcommand>.json``
or ``.csv``.

Exit status: 0 on success, 2 on invalid input, 1 on numerical or I/O failure.
"""

import argparse
import io
import sys
from pathlib import Path

from . import __version__
from .capacity import OptimizerConfig, optimize_capacity, shannon_capacity
from .cognition import cognitive_curve, cognitive_entropy
from .compression import CompressionSpec, decompose_loss
from .exceptions import NumericalError, SemInfoError
from .files import (
    dumps,
    load_accuracy,
    load_channel,
    load_fuzzy,
    load_messages,
    load_scenario,
    load_world,
    write_csv,
)
from .sampling import crlb, min_measurements, monte_carlo_crlb
from .world import (
    fuzzy_semantic_entropy,
    logical_probability,
    semantic_entropy,
    semantic_information,
)

DEFAULT_SEED = 0
_INPUT_FLAGS = ("world", "channel", "accuracy", "scenario_file")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _cmd_entropy(args):
    world, doc = load_world(args.world)
    msgs = load_messages(doc, args.world)
    records = [
        {
            "message": m.id,
            "logical_probability": logical_probability(world, m),
            "semantic_information_bits": semantic_information(world, m),
        }
        for m in msgs
    ]
    result = {
        "semantic_entropy_bits": semantic_entropy(world, msgs),
        "world_entropy_bits": world.entropy(),
        "messages": records,
    }
    return result, records


def _cmd_fuzzy(args):
    _, doc = load_world(args.world)
    concept = load_fuzzy(doc, args.world)
    degrees = concept.matching_degrees()
    records = [{"class": j, "matching_degree": float(d)} for j, d in enumerate(degrees)]
    result = {"fuzzy_semantic_entropy_bits": fuzzy_semantic_entropy(concept), "classes": records}
    return result, records


def _optimizer_config(args):
    return OptimizerConfig(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed)


def _cmd_capacity(args):
    world, _ = load_world(args.world)
    channel = load_channel(args.channel)
    res = optimize_capacity(world, channel, _optimizer_config(args))
    table = res.strategy.table
    records = [
        {"world": w, **{f"x{j}": float(table[i, j]) for j in range(table.shape[1])}}
        for i, w in enumerate(world.states)
    ]
    result = {
        "best_found_semantic_capacity_bits": res.value,
        "mutual_information_bits": res.terms[0],
        "ambiguity_bits": res.terms[1],
        "avg_received_logical_info_bits": res.terms[2],
        "strategy": table.tolist(),
        "n_starts": res.n_starts,
        "shannon_capacity_bits": shannon_capacity(channel, _optimizer_config(args)),
    }
    return result, records


def _cmd_shannon(args):
    channel = load_channel(args.channel)
    value = shannon_capacity(channel, _optimizer_config(args))
    result = {"shannon_capacity_bits": value}
    return result, [result]


def _cmd_compression(args):
    dec = decompose_loss(CompressionSpec(args.h_w, args.h_x, args.h_zbar))
    result = dec.as_dict()
    return result, [result]


def _cmd_cognition(args):
    world, doc = load_world(args.world)
    msgs = load_messages(doc, args.world)
    profile = load_accuracy(args.accuracy)
    value = cognitive_entropy(world, msgs, profile)
    records = [{"message": m.id, "accuracy": profile.accuracies[m.id]} for m in msgs]
    result = {
        "cognitive_entropy_bits": value,
        "semantic_entropy_bits": semantic_entropy(world, msgs),
        "accuracies": records,
    }
    return result, records


def _cmd_curve(args):
    records = [
        {"accuracy": c, "bits": v} for c, v in cognitive_curve(args.h_s, args.points)
    ]
    return {"h_s": args.h_s, "points": records}, records


def _cmd_plan(args):
    m = min_measurements(args.k, args.gamma, args.beta, args.eps, args.n)
    result = {"m": m, "crlb": crlb(args.k, m, args.gamma, args.beta), "eps": args.eps}
    return result, [result]


def _cmd_simulate(args):
    scenario, calibrated = load_scenario(args.scenario_file)
    res = monte_carlo_crlb(
        scenario, args.m, args.trials, args.estimator, seed=args.seed, calibrated=calibrated
    )
    records = [{"trial": t, "squared_error": float(e)} for t, e in enumerate(res.trial_errors)]
    result = {
        "scenario": scenario.as_dict(),
        "calibrated": calibrated,
        "m": args.m,
        "trials": args.trials,
        "estimator": res.estimator.value,
        "empirical_mse": res.empirical_mse,
        "crlb": res.crlb_value,
        "ratio": res.ratio,
    }
    return result, records


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", type=Path, help="directory to write results into")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = _Parser(prog="seminfo", description="Semantic information measures and sampling planner.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("entropy", _cmd_entropy, "logical probabilities and semantic entropy")
    p.add_argument("--world", required=True)
    p = add("fuzzy-entropy", _cmd_fuzzy, "fuzzy semantic entropy of the world file's concept")
    p.add_argument("--world", required=True)

    for name, func, help in (
        ("capacity", _cmd_capacity, "best-found semantic channel capacity"),
        ("shannon", _cmd_shannon, "Shannon capacity via Blahut-Arimoto"),
    ):
        p = add(name, func, help)
        if name == "capacity":
            p.add_argument("--world", required=True)
        p.add_argument("--channel", required=True)
        p.add_argument("--restarts", type=int, default=OptimizerConfig.restarts)
        p.add_argument("--max-iters", type=int, default=OptimizerConfig.max_iters)

    p = add("compression", _cmd_compression, "intended/lossy split of an entropy drop")
    p.add_argument("--h-w", type=float, required=True)
    p.add_argument("--h-x", type=float, required=True)
    p.add_argument("--h-zbar", type=float, required=True)

    p = add("cognition", _cmd_cognition, "semantic cognitive entropy")
    p.add_argument("--world", required=True)
    p.add_argument("--accuracy", required=True)

    p = add("curve", _cmd_curve, "cognitive information versus accuracy")
    p.add_argument("--h-s", type=float, required=True)
    p.add_argument("--points", type=int, default=11)

    p = add("plan", _cmd_plan, "minimum number of measurements for a target error")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("simulate", _cmd_simulate, "Monte-Carlo check of the CRLB")
    p.add_argument("--scenario-file", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--estimator", choices=("genie", "omp"), default="genie")
    return parser


def _manifest(args):
    flags = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in sorted(vars(args).items())
        if k not in ("func", "subcommand")
    }
    return {
        "subcommand": args.subcommand,
        "input_paths": [str(getattr(args, k)) for k in _INPUT_FLAGS if getattr(args, k, None)],
        "flags": flags,
        "seed": args.seed,
        "tool_version": __version__,
    }


def _render(args, result, records):
    if args.format == "json":
        return dumps({"manifest": _manifest(args), "result": result})
    buf = io.StringIO(newline="")
    fieldnames = list(records[0]) if records else []
    write_csv(records, buf, fieldnames)
    return buf.getvalue()


def run(argv=None):
    """Execute one CLI invocation and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        result, records = args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 1
    except (SemInfoError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2

    text = _render(args, result, records)
    sys.stdout.write(text)
    if args.output is not None:
        try:
            args.output.mkdir(parents=True, exist_ok=True)
            name = args.subcommand + (".json" if args.format == "json" else ".csv")
            with open(args.output / name, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write output: {exc}", file=sys.stderr)
            return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
