"""Command-line front end.

Exit codes: 0 success, 2 bad flags or parameters, 3 unreadable or malformed
input, 4 an exhaustive search or trial budget was exceeded.
"""

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from . import calculator
from .errors import (
    BlackBoxError,
    ConfigError,
    DomainError,
    InputError,
    PreconditionError,
    ResourceError,
    UnsupportedOperation,
)
from .framework import (
    DEFAULT_MAX_TRIALS,
    RunConfig,
    brute_force_solver,
    greedy_eta_solver,
    optimize_delta,
    sampling_with_a_black_box,
)
from .hypergraph import gen_random, read_instance, serialize, write_instance
from .oracle import DEFAULT_CONFIDENCE, brute_opt, estimate_sampling_success
from .problems import get_problem, registry
from .rng import Rng
from .sampling import step_for

SCHEMA = 1
DENOMINATOR_CAP = 10**6
EXIT_CONFIG, EXIT_PARSE, EXIT_RESOURCE = 2, 3, 4


# --- argument types ------------------------------------------------------------


def rational(text: str) -> Fraction:
    """``p/q`` is taken exactly; decimals are snapped to denominators up to 10**6."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or p/q fraction: {text!r}") from None
    if "/" in text:
        return value
    return value.limit_denominator(DENOMINATOR_CAP)


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def beta_range(text: str) -> list[Decimal]:
    """``a:b:step`` inclusive of ``b``, in exact decimal steps."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
    try:
        start, stop, step = (Decimal(p) for p in parts)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"non-numeric value in {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"need step > 0 and b >= a in {text!r}")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out


def beta_list(text: str) -> list[Decimal]:
    try:
        return [Decimal(p) for p in text.split(",") if p.strip()]
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"non-numeric value in {text!r}") from None


# --- rendering -----------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Decimal):
        return str(value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def _text_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (tuple, list)):
        return " ".join(map(str, value)) if value else "(none)"
    return str(value)


def render_record(record: dict, fmt: str, text_only: dict | None = None) -> str:
    """Key/value output. ``text_only`` fields (timings) are left out of csv and json."""
    if fmt == "json":
        payload = {"schema": SCHEMA, **{k: _jsonable(v) for k, v in record.items()}}
        return json.dumps(payload, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in record.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, (tuple, list)):
                value = " ".join(map(str, value))
            elif isinstance(value, float):
                value = repr(value)
            writer.writerow([key, value])
        return buf.getvalue()
    rows = {**record, **(text_only or {})}
    width = max(len(k) for k in rows)
    return "".join(f"{k.ljust(width)}  {_text_value(v)}\n" for k, v in rows.items())


# --- subcommands ---------------------------------------------------------------


def _load(spec, path):
    g = read_instance(path, tournament=spec.tournament)
    if not spec.validate(g):
        raise DomainError(f"--input: graph is not a valid {spec.name} instance")
    return g


def _problem_and_input(args):
    name = args.problem_opt or args.problem
    path = args.input_opt or args.input
    if name is None:
        raise ConfigError("--problem is required")
    if path is None:
        raise ConfigError("--input is required")
    return get_problem(name), path


def cmd_solve(args) -> str:
    spec, path = _problem_and_input(args)
    g = _load(spec, path)
    solver = brute_force_solver(spec) if args.alpha_solver == "brute" else greedy_eta_solver(spec)
    if args.k > g.n:
        raise ConfigError(f"--k={args.k} exceeds the vertex count {g.n}")
    delta = args.delta if args.delta is not None else optimize_delta(spec, solver, args.beta)
    config = RunConfig(
        beta=args.beta, delta=delta, repeat_override=args.repeat,
        seed=args.seed, max_trials_safety=args.max_trials,
    )
    report = sampling_with_a_black_box(spec, step_for(spec), solver, g, args.k, config)
    record = {
        "problem": spec.name,
        "solver": solver.name,
        "n": g.n,
        "k": args.k,
        "beta": report.beta,
        "delta": report.delta,
        "solution": report.solution,
        "size": report.solution_size,
        "within_ratio": report.within_ratio,
        "t_star": report.t_star,
        "threshold": report.threshold,
        "exact_path": report.exact_path,
        "budget_infeasible": report.budget_infeasible,
        "trials_planned": report.trials_planned,
        "trials": report.trials_executed,
        "capped": report.capped,
        "seed": args.seed,
    }
    return render_record(record, args.format, {"wall_time_s": report.wall_time})


def cmd_calc(args) -> str:
    if args.beta is None:
        raise ConfigError("--beta is required")
    beta = float(args.beta)
    if args.problem is not None:
        spec = get_problem(args.problem)
        algorithms = [(float(a.alpha), a.c) for a in spec.known_algorithms]
        result, index = calculator.best_runtime(algorithms, beta, float(spec.q))
        alpha, c = spec.known_algorithms[index].alpha, spec.known_algorithms[index].c
        q = spec.q
    else:
        for flag in ("alpha", "c", "q"):
            if getattr(args, flag) is None:
                raise ConfigError(f"--{flag} is required unless --problem is given")
        alpha, c, q = args.alpha, float(args.c), args.q
        result = calculator.runtime(float(alpha), beta, c, float(q))
    record = {
        "alpha": alpha,
        "beta": args.beta,
        "c": c,
        "q": q,
        "d": result.d,
        "branch": result.branch,
        "delta_star": result.delta_star,
        "residual": result.residual,
    }
    return render_record(record, args.format)


def _raw_path(out: Path) -> Path:
    return out.with_name(out.stem + ".raw" + (out.suffix or ".csv"))


def cmd_table(args) -> str:
    spec = get_problem(args.problem)
    betas = args.betas if args.betas is not None else args.beta_range
    if not betas:
        raise ConfigError("--beta-range or --betas is required")
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    rows = calculator.make_table(spec, betas, columns)
    decimals = args.decimals if args.decimals is not None else calculator.TABLE_DECIMALS.get(spec.name, 4)
    if args.output:
        out = Path(args.output)
        out.write_text(calculator.table_csv(rows, columns, decimals), encoding="utf-8")
        _raw_path(out).write_text(calculator.table_csv(rows, columns, None), encoding="utf-8")
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "problem": spec.name,
            "columns": columns,
            "decimals": decimals,
            "rows": [
                {"beta": str(r["beta"]), **{c: r[c] for c in columns}} for r in rows
            ],
        }
        return json.dumps(payload, sort_keys=True) + "\n"
    if args.format == "csv":
        return calculator.table_csv(rows, columns, decimals)
    header = ["beta", *columns]
    lines = [header]
    for r in rows:
        lines.append([calculator.beta_key(r["beta"])] + [
            "-" if r[c] is None else str(calculator.round_half_even(r[c], decimals)) for c in columns
        ])
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    return "".join("  ".join(cell.rjust(w) for cell, w in zip(line, widths)) + "\n" for line in lines)


def cmd_estimate(args) -> str:
    spec, path = _problem_and_input(args)
    g = _load(spec, path)
    report = estimate_sampling_success(
        step_for(spec), g, args.trials, Rng(args.seed), confidence=args.confidence,
    )
    record = {
        "problem": spec.name,
        "q": spec.q,
        "trials": report.trials,
        "successes": report.successes,
        "estimate": report.estimate,
        "lower_bound": report.lower_bound,
        "confidence": report.confidence,
        "seed": args.seed,
    }
    return render_record(record, args.format)


def cmd_oracle(args) -> str:
    spec, path = _problem_and_input(args)
    g = _load(spec, path)
    result = brute_opt(spec, g, max_n=args.max_n)
    record = {
        "problem": spec.name,
        "n": g.n,
        "opt": result.opt,
        "witness": result.witness,
        "explored": result.explored,
    }
    return render_record(record, args.format)


def cmd_gen(args) -> str:
    g = gen_random(args.model, args.n, args.p, seed=args.seed, d=args.d)
    if args.output:
        write_instance(g, args.output)
        return ""
    return serialize(g)


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=non_negative_int, default=0, help="base random seed (default 0)")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument(
        "--threads", type=positive_int, default=1,
        help="worker bound; all work currently runs sequentially, so only 1 is meaningful",
    )

    parser = argparse.ArgumentParser(
        prog="blackbox-sampling",
        description="Approximate vertex deletion by sampling with a black box.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    problems = [s.name for s in registry()]

    def add_instance_args(p):
        p.add_argument("problem", nargs="?", choices=problems)
        p.add_argument("input", nargs="?")
        p.add_argument("--problem", dest="problem_opt", choices=problems)
        p.add_argument("--input", dest="input_opt")

    p = sub.add_parser("solve", parents=[common], help="run the approximation driver on an instance")
    add_instance_args(p)
    p.add_argument("--beta", type=rational, required=True, help="target ratio, decimal or p/q")
    p.add_argument("--k", type=non_negative_int, required=True, help="parameter (budget on OPT)")
    p.add_argument("--delta", type=rational, help="procedure budget factor (default: optimal)")
    p.add_argument("--alpha-solver", choices=("brute", "greedy"), default="brute")
    p.add_argument("--repeat", type=positive_int, help="cap on the number of trials")
    p.add_argument("--max-trials", type=positive_int, default=DEFAULT_MAX_TRIALS)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("calc", parents=[common], help="exponent base of the combined algorithm")
    p.add_argument("--alpha", type=rational)
    p.add_argument("--beta", type=rational)
    p.add_argument("--c", type=rational)
    p.add_argument("--q", type=rational)
    p.add_argument("--problem", choices=problems, help="use the problem's preset black boxes")
    p.set_defaults(func=cmd_calc)

    p = sub.add_parser("table", parents=[common], help="running-time comparison table")
    p.add_argument("--problem", choices=problems, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--beta-range", type=beta_range, help="a:b:step")
    group.add_argument("--betas", type=beta_list, help="comma-separated beta values")
    p.add_argument("--columns", default="ours", help="comma list of ours, fellows, paper-baseline")
    p.add_argument("--decimals", type=non_negative_int, help="rounding (default 3 for fvs, else 4)")
    p.add_argument("-o", "--output", help="write rounded CSV here and unrounded values to <name>.raw.csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("estimate", parents=[common], help="Monte-Carlo success rate of the sampling step")
    add_instance_args(p)
    p.add_argument("--trials", type=positive_int, default=2000)
    p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("oracle", parents=[common], help="exact optimum by exhaustive search")
    add_instance_args(p)
    p.add_argument("--max-n", type=positive_int, default=22)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("--model", choices=("gnp", "tournament", "uniform_hyper"), required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--p", type=float, default=0.5, help="edge probability (gnp, uniform_hyper)")
    p.add_argument("--d", type=positive_int, default=3, help="hyperedge size for uniform_hyper")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def exit_code(error: Exception) -> int:
    if isinstance(error, ResourceError):
        return EXIT_RESOURCE
    if isinstance(error, (InputError, OSError)):
        return EXIT_PARSE
    if isinstance(error, (ConfigError, PreconditionError, UnsupportedOperation, BlackBoxError)):
        return EXIT_CONFIG
    raise error


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (BlackBoxError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return exit_code(error)
    sys.stdout.write(out)
    return 0
