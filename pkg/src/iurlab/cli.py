"""Command-line front end.

Subcommands: formula (closed-form ratios as JSON), exact (enumeration
oracle), verify (theorem/lemma checks), bench (one algorithm on one
function), sweep (the mu/lambda protocol) and compare (the multi-algorithm
protocol). Every artifact-writing command records a manifest echoing the
resolved configuration and seeds; re-running from the manifest reproduces
the outputs byte for byte.

Exit codes: 0 success, 2 usage error, 3 enumeration/budget limit, 4 I/O.
"""

import argparse
import json
import os
import sys

from iurlab import exact, experiments, iur
from iurlab.algorithms import OptimizerConfig, run
from iurlab.benchmarks import make_suite, suite_subset
from iurlab.exact import EnumerationBudgetError, FiniteEnsemble

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4

_H_FLAG = "--codomain-bits"


def _out_dir(args) -> str:
    out = args.out or os.environ.get("IURLAB_OUT") or "iurlab_out"
    os.makedirs(out, exist_ok=True)
    return out


def _write_manifest(out, command, options):
    options = {
        k: v for k, v in options.items()
        if k not in ("handler", "command") and not callable(v)
    }
    runs = options.get("runs")
    seed = options.get("seed")
    if runs is not None and seed is not None:
        options["resolved_seeds"] = [seed + i for i in range(runs)]
    payload = {"command": command, "options": options}
    with open(os.path.join(out, "manifest.json"), "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _require(args, parser, names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            parser.error(f"--algo {args.algo} requires --{name}")


# --- formula ------------------------------------------------------------------


def cmd_formula(args, parser):
    algo = args.algo
    H = args.codomain_bits
    if algo == "mc":
        report = iur.iur_mc(H=H, g=args.g or 1)
    elif algo == "lj":
        _require(args, parser, ["g"])
        report = iur.iur_lj(args.g, H)
    elif algo in ("es", "cmaes"):
        _require(args, parser, ["g", "lambda", "mu"])
        fn = iur.iur_es if algo == "es" else iur.iur_cmaes
        report = fn(args.g, getattr(args, "lambda"), args.mu, H)
    elif algo in ("pso", "spso"):
        _require(args, parser, ["g", "s"])
        fn = iur.iur_pso_bounds if algo == "pso" else iur.iur_spso_bounds
        report = fn(args.g, args.s, H)
    elif algo == "de":
        _require(args, parser, ["g", "s"])
        report = iur.iur_de(args.g, args.s, H, args.de_variant)
    elif algo == "jade":
        _require(args, parser, ["g", "s", "p"])
        report = iur.iur_jade_bounds(args.g, args.s, args.p, H)
    elif algo == "bound":
        _require(args, parser, ["m"])
        ratio = iur.comparison_upper_bound(args.m, H)
        print(json.dumps({"algorithm": "comparison-bound", "m": args.m,
                          "H_bits": H, "ratio_upper": ratio}, sort_keys=True))
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        parser.error(f"unknown algorithm {algo}")
    print(report.to_json())
    return EXIT_OK


# --- exact oracle ---------------------------------------------------------------


def cmd_exact(args, parser):
    if args.mode == "injective_orderings":
        ensemble = FiniteEnsemble(args.m, mode="injective_orderings")
    else:
        if args.n is None:
            parser.error("all_functions mode requires --n")
        ensemble = FiniteEnsemble(args.m, args.n, "all_functions")
    if args.policy == "compare-with-best":
        policy = exact.compare_with_best_policy(args.m, args.g)
    elif args.policy == "constant":
        policy = exact.constant_policy(args.g)
    else:
        policy = exact.value_greedy_policy(args.m, args.n or args.m, args.g)
    result = exact.exact_iur(policy, ensemble, args.g)
    print(json.dumps({
        "policy": policy.name,
        "mode": ensemble.mode,
        "m": args.m,
        "n": args.n,
        "g": args.g,
        "numerator_bits": result.numerator_bits,
        "denominator_bits": result.denominator_bits,
        "ratio": result.ratio,
    }, sort_keys=True))
    return EXIT_OK


def cmd_verify(args, parser):
    if args.check == "theorem1":
        summary = exact.verify_theorem1(args.max_m, args.max_n, args.max_g)
    else:
        summary = exact.verify_pi_lemma(args.max_g)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK if not summary["violations"] else 1


# --- experiment commands --------------------------------------------------------


def _plan_from(args) -> experiments.ExperimentPlan:
    ids = tuple(int(f.lstrip("f")) for f in args.functions.split(","))
    return experiments.ExperimentPlan(
        dimension=args.dim,
        budget_multiplier=args.budget_multiplier,
        runs=args.runs,
        base_seed=args.seed,
        suite_seed=args.suite_seed,
        function_ids=ids,
        jobs=args.jobs,
    )


def cmd_bench(args, parser):
    out = _out_dir(args)
    suite = make_suite(args.dim, args.suite_seed)
    problem = suite_subset(suite, [args.function])[0]
    config = _config_for(args.algo, args)
    budget = args.budget_multiplier * args.dim
    errors = []
    lines = ["run,seed,final_error,evals"]
    for i in range(args.runs):
        seed = args.seed + i
        trace = run(config, problem, budget, seed)
        errors.append(trace.final_error)
        lines.append(f"{i},{seed},{trace.final_error:.6g},{trace.evaluations}")
    with open(os.path.join(out, "bench_errors.csv"), "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    _write_manifest(out, "bench", vars(args))
    mean = sum(errors) / len(errors)
    print(f"{config.label()} on {problem.name} (d={args.dim}, budget {budget}): "
          f"mean error {mean:.6g} over {args.runs} runs")
    return EXIT_OK


def cmd_sweep(args, parser):
    out = _out_dir(args)
    plan = _plan_from(args)
    mus = [int(m) for m in args.mus.split(",")]
    result = experiments.sweep_mu_lambda(getattr(args, "lambda"), mus, plan)
    experiments.write_fig2_curve_csv(os.path.join(out, "fig2_curve.csv"), result)
    experiments.write_mean_errors_csv(os.path.join(out, "mean_errors.csv"), result.table)
    experiments.write_rankings_csv(os.path.join(out, "rankings.csv"), result.table)
    _write_manifest(out, "sweep", vars(args))
    print("mu/lambda,avg_ranking")
    for ratio, ranking, _curve in result.rows():
        print(f"{ratio:.6g},{ranking:.6g}")
    return EXIT_OK


def cmd_compare(args, parser):
    out = _out_dir(args)
    plan = _plan_from(args)
    configs = [_config_for(a, args) for a in args.algos.split(",")]
    result = experiments.compare_algorithms(configs, plan)
    experiments.write_mean_errors_csv(os.path.join(out, "mean_errors.csv"), result.table)
    experiments.write_rankings_csv(os.path.join(out, "rankings.csv"), result.table)
    experiments.write_wilcoxon_csv(os.path.join(out, "wilcoxon.csv"), result)
    _write_manifest(out, "compare", vars(args))
    print("config,avg_ranking")
    for label, ranking in zip(result.table.config_labels, result.table.average_rankings):
        print(f"{label},{ranking:.6g}")
    for pair, (wins, losses) in result.win_loss.items():
        print(f"{pair[0]} vs {pair[1]}: {wins}:{losses} significant wins:losses")
    return EXIT_OK


def _config_for(algo, args) -> OptimizerConfig:
    kwargs = {"algorithm": algo}
    lam = getattr(args, "lambda", None)
    if algo in ("es", "cmaes"):
        if lam is not None:
            kwargs["lam"] = lam
            kwargs["mu"] = args.mu if args.mu is not None else lam // 2
        elif algo == "es":
            kwargs["lam"], kwargs["mu"] = 30, 15
    if hasattr(args, "s") and args.s is not None:
        kwargs["s"] = args.s
    if hasattr(args, "de_variant") and args.de_variant:
        kwargs["de_variant"] = args.de_variant
    return OptimizerConfig(**kwargs)


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iurlab",
        description="Information-utilization accounting for heuristic optimizers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="print a closed-form ratio as JSON")
    p.add_argument("--algo", required=True,
                   choices=["mc", "lj", "es", "cmaes", "pso", "spso", "de", "jade", "bound"])
    p.add_argument("--g", type=int)
    p.add_argument("--lambda", dest="lambda", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--de-variant", default="rand/1", choices=list(iur.DE_VARIANTS))
    p.add_argument(_H_FLAG, type=float, default=32.0)
    p.set_defaults(handler=cmd_formula)

    p = sub.add_parser("exact", help="enumeration oracle on a finite ensemble")
    p.add_argument("--policy", default="compare-with-best",
                   choices=["compare-with-best", "constant", "value-greedy"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--mode", default="injective_orderings",
                   choices=["injective_orderings", "all_functions"])
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("verify", help="exhaustive theorem/lemma verification")
    p.add_argument("check", choices=["theorem1", "pi"])
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--max-g", type=int, default=2)
    p.set_defaults(handler=cmd_verify)

    def common_experiment_flags(p):
        p.add_argument("--dim", type=int, default=5)
        p.add_argument("--budget-multiplier", type=int, default=4000)
        p.add_argument("--runs", type=int, default=20)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--suite-seed", type=int, default=2013)
        p.add_argument("--functions", default="f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out")

    p = sub.add_parser("bench", help="run one algorithm on one suite function")
    p.add_argument("--algo", required=True,
                   choices=["mc", "lj", "es", "cmaes", "pso", "spso", "de", "jade"])
    p.add_argument("--function", required=True)
    p.add_argument("--lambda", dest="lambda", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--de-variant", default="rand/1", choices=list(iur.DE_VARIANTS))
    common_experiment_flags(p)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("sweep", help="mu/lambda sweep against the selection-entropy curve")
    p.add_argument("--lambda", dest="lambda", type=int, required=True)
    p.add_argument("--mus", required=True, help="comma-separated mu values")
    common_experiment_flags(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("compare", help="multi-algorithm comparison with rank-sum tests")
    p.add_argument("--algos", required=True, help="comma-separated algorithm ids")
    p.add_argument("--lambda", dest="lambda", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--de-variant", default="rand/1", choices=list(iur.DE_VARIANTS))
    common_experiment_flags(p)
    p.set_defaults(handler=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except EnumerationBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run_from_manifest(path) -> int:
    """Re-execute the command recorded in a manifest (reproduces outputs)."""
    with open(path) as fh:
        payload = json.load(fh)
    options = payload["options"]
    argv = [payload["command"]]
    skip = {"command", "handler", "resolved_seeds"}
    positional = {"verify": "check"}
    pos_name = positional.get(payload["command"])
    if pos_name:
        argv.append(options[pos_name])
    for key, value in options.items():
        if key in skip or key == pos_name or value is None:
            continue
        argv.append("--" + key.replace("_", "-"))
        argv.append(str(value))
    return main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
