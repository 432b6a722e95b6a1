"""Command-line interface: ``conepareto {pareto,gaps,simulate,budget,beta}``.

Exit status: 0 on success, 1 for usage errors, 2 for data or configuration
errors, 3 when a projection fails to converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from .bandit import DEFAULT_C, ExperimentConfig, naive_elimination, split_delta, theorem_budget
from .cone import DEFAULT_TOL, beta_closed_form, beta_empirical, parse_cone_spec, save_cone
from .datasets import FIXTURE_SPEC, DatasetSpec, fixture_path, load_dataset
from .evaluation import (
    GroundTruth,
    aggregate,
    evaluate_run,
    gap_statistics,
    write_aggregate_csv,
    write_gap_statistics_csv,
)
from .exceptions import ConeError, ConfigError, ConvergenceError, DataError, EstimationError
from .gaps import build_gap_table

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv_list(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _add_dataset_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("dataset", nargs="?", help="CSV file, one design per row")
    src.add_argument("--fixture", action="store_true",
                     help="use the bundled 20-design synthetic fixture")
    p.add_argument("--objectives", type=_csv_list, help="comma-separated objective columns")
    p.add_argument("--negate", type=_csv_list, default=(),
                   help="objective columns to negate (minimize-type objectives)")
    p.add_argument("--id-column", help="column holding design labels")


def _add_cone_arg(p, multiple=False):
    if multiple:
        p.add_argument("--cone", action="append", required=True,
                       help="orthant:D, theta:<radians> or cone JSON path; repeatable")
    else:
        p.add_argument("--cone", required=True,
                       help="orthant:D, theta:<radians> or cone JSON path")


def _load_designs(args):
    if args.fixture:
        return load_dataset(DatasetSpec(str(fixture_path()), **FIXTURE_SPEC))
    if not args.objectives:
        raise _UsageError("--objectives is required with a dataset path")
    return load_dataset(DatasetSpec(args.dataset, args.objectives, args.negate, args.id_column))


def _out_dir(args):
    if args.out_dir is None:
        return None
    path = Path(args.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_pareto(args):
    designs = _load_designs(args)
    result, stats = {}, {}
    for spec in args.cone:
        cone = parse_cone_spec(spec)
        table = build_gap_table(designs, cone, args.tol)
        P = table.pareto_set
        result[spec] = {"pareto_set": P, "labels": [designs.labels[i] for i in P]}
        stats[spec] = gap_statistics(table)
    out = _out_dir(args)
    text = json.dumps(result, indent=2)
    print(text)
    if out is None:
        write_gap_statistics_csv(stats, sys.stdout)
    else:
        (out / "pareto_sets.json").write_text(text + "\n", encoding="utf-8")
        with open(out / "gap_statistics.csv", "w", newline="", encoding="utf-8") as fh:
            write_gap_statistics_csv(stats, fh)
    return EXIT_OK


def cmd_gaps(args):
    designs = _load_designs(args)
    cone = parse_cone_spec(args.cone)
    table = build_gap_table(designs, cone, args.tol)
    out = _out_dir(args) or Path(".")
    table.write_pairwise_csv(out / "pairwise_gaps.csv")
    table.write_design_csv(out / "design_gaps.csv")
    print(f"wrote {out / 'pairwise_gaps.csv'} and {out / 'design_gaps.csv'}")
    return EXIT_OK


def _one_run(run_index, means, cone, L, noise, seed, tol):
    return naive_elimination(means, cone, L, noise, seed, tol, run_index)


def resolve_cones(cone_specs, config, dim):
    """Parse and check every cone spec; returns ``(spec, cone, beta)`` triples."""
    cones = []
    for spec in cone_specs:
        cone = parse_cone_spec(spec)
        if cone.dim != dim:
            raise ConfigError(f"cone {spec!r} has dimension {cone.dim}, designs have {dim}")
        if config.L == "auto" and cone.family is None:
            raise ConfigError(f"L='auto' needs a built-in cone family, got {spec!r}")
        beta = beta_closed_form(cone).beta if config.L == "auto" else 1.0
        cones.append((spec, cone, beta))
    return cones


def run_battery(designs, cone_specs, config, tol=DEFAULT_TOL, jobs=1, on_run=None):
    """Run the ``cone x L x epsilon`` grid and return one aggregate row per cell.

    All randomness derives from ``config.seed``. Every ``(cone, L)`` pair
    reuses the same per-run streams, and each run is scored at every epsilon
    that maps to its budget. ``on_run(spec, run)`` sees runs in a fixed order.
    """
    rows = []
    K, D = designs.n_designs, designs.dim
    cones = resolve_cones(cone_specs, config, D)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for spec, cone, beta in cones:
            truth = GroundTruth.build(designs, cone, tol)
            cells = {}
            for eps in config.epsilon:
                for L in config.budgets(eps, K, beta, D):
                    cells.setdefault(L, []).append(eps)
            for L, eps_list in cells.items():
                task = partial(_one_run, means=designs.means, cone=cone, L=L,
                               noise=config.noise, seed=config.seed, tol=tol)
                idx = range(config.runs)
                runs = list(pool.map(task, idx)) if pool else [task(r) for r in idx]
                if on_run is not None:
                    for run in runs:
                        on_run(spec, run)
                for eps in eps_list:
                    s = aggregate(evaluate_run(r, truth, eps) for r in runs)
                    rows.append({"cone": spec, "L": L, "epsilon": eps, "runs": s.n_runs,
                                 "success_rate": s.success_rate_percent,
                                 "nf1": s.nf1, "nf2": s.nf2, "pm": s.pm})
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def cmd_simulate(args):
    config = ExperimentConfig.from_json(args.config)
    if args.seed is not None:
        config = ExperimentConfig(**{**config.__dict__, "seed": args.seed})
    designs = _load_designs(args)
    resolve_cones(args.cone, config, designs.dim)
    out = _out_dir(args) or Path(".")
    with open(out / "runs.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        def emit(spec, run):
            record = json.loads(run.to_json())
            fh.write(json.dumps({"cone": spec, **record}) + "\n")
        rows = run_battery(designs, args.cone, config, args.tol, args.jobs, emit)
    write_aggregate_csv(rows, out / "aggregate.csv")
    print(f"wrote {len(rows)} cells to {out / 'aggregate.csv'}")
    return EXIT_OK


def cmd_budget(args):
    cone = parse_cone_spec(args.cone)
    if args.beta is not None:
        beta = args.beta
    else:
        try:
            beta = beta_closed_form(cone).beta
        except ConeError:
            raise _UsageError("no closed-form beta for this cone; pass --beta") from None
    try:
        dprime = split_delta(args.delta, args.K)
        L = theorem_budget(args.epsilon, args.delta, args.K, beta, args.c, args.sigma, cone.dim)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(f"delta_prime={dprime:.6e}")
    print(f"L={L}")
    return EXIT_OK


def cmd_beta(args):
    cone = parse_cone_spec(args.cone)
    if args.save_cone:
        save_cone(cone, args.save_cone)
    out = {}
    try:
        cf = beta_closed_form(cone)
        out["closed_form"] = {"beta1": cf.beta1, "beta2": cf.beta2, "beta": cf.beta}
    except ConeError:
        out["closed_form"] = None
    emp = beta_empirical(cone, args.samples, args.seed)
    out["empirical"] = {"beta1": emp.beta1, "beta2": emp.beta2, "beta": emp.beta,
                        "samples": args.samples, "seed": args.seed}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="conepareto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pareto", help="Pareto sets and gap statistics per cone")
    _add_dataset_args(p)
    _add_cone_arg(p, multiple=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_pareto)

    p = sub.add_parser("gaps", help="write pairwise and per-design gap tables")
    _add_dataset_args(p)
    _add_cone_arg(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("simulate", help="run a naive-elimination battery")
    _add_dataset_args(p)
    _add_cone_arg(p, multiple=True)
    p.add_argument("--config", required=True, help="experiment configuration JSON")
    p.add_argument("--seed", type=int, help="override the configuration seed")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("budget", help="theoretical per-design budget L")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--K", type=int, required=True)
    _add_cone_arg(p)
    p.add_argument("--beta", type=float, help="override the cone's closed-form beta")
    p.add_argument("--c", type=float, default=DEFAULT_C)
    p.add_argument("--sigma", type=float, default=1.0)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("beta", help="closed-form and sampled beta constants")
    _add_cone_arg(p)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--save-cone", metavar="PATH", help="also write the cone as JSON")
    p.set_defaults(func=cmd_beta)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"conepareto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ConfigError, ConeError, EstimationError) as exc:
        print(f"conepareto: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConvergenceError as exc:
        print(f"conepareto: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
