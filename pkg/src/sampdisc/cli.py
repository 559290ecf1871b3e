"""Command-line interface.

Each subcommand writes ``params.json``, ``records.csv`` and
``summary.json`` into ``<results-dir>/<subcommand>/<tag>/`` (the tag
defaults to a UTC timestamp) and, unless ``--no-plot`` is given, renders
matplotlib figures next to the delimited output. Randomized subcommands
require ``--seed`` and are bit-reproducible for a fixed seed.

Exit codes: 0 on success, 2 on validation errors, 3 when a budget was
exceeded or a search came back censored.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import entropy as entropy_mod
from . import experiments, nikolskii
from .discretization import certify, equispaced_grid_points, generate_points
from .index_sets import (AnisotropyWeights, BudgetError, IndexSet,
                         anisotropic_cross, cube, dyadic_block,
                         step_hyperbolic_cross)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--results-dir", default="results", help="output root directory")
    parser.add_argument("--tag", default=None,
                        help="run label; defaults to a UTC timestamp")
    parser.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True,
                        help="render figures next to the CSV output")


def _add_set_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, help="ambient dimension")
    parser.add_argument("--Qn", type=int, default=None,
                        help="cross parameter n (step cross, or weighted with --gamma)")
    parser.add_argument("--gamma", default=None,
                        help="comma-separated axis weights, e.g. 1,1,3/2")
    parser.add_argument("--cube-n", type=int, default=None, help="full cube parameter n")
    parser.add_argument("--block", default=None,
                        help="comma-separated dyadic level vector")
    parser.add_argument("--freq-file", default=None,
                        help="path to a serialized frequency set")


def build_frequency_set(args: argparse.Namespace) -> IndexSet:
    chosen = [x is not None for x in
              (args.Qn, args.cube_n, args.block, getattr(args, "freq_file", None))]
    if sum(chosen) != 1:
        raise ValueError("choose exactly one of --Qn, --cube-n, --block, --freq-file")
    if args.freq_file is not None:
        return IndexSet.from_text(Path(args.freq_file).read_text())
    if args.d is None:
        raise ValueError("--d is required when building a set from parameters")
    if args.block is not None:
        return dyadic_block([int(v) for v in args.block.split(",")])
    if args.cube_n is not None:
        return cube(args.cube_n, args.d)
    if args.gamma is not None:
        weights = AnisotropyWeights.parse(args.gamma)
        if weights.d != args.d:
            raise ValueError(f"--gamma lists {weights.d} weights but --d is {args.d}")
        return anisotropic_cross(args.Qn, weights)
    return step_hyperbolic_cross(args.Qn, args.d)


def _outdir(args: argparse.Namespace, command: str) -> Path:
    tag = args.tag or datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
    out = Path(args.results_dir) / command / tag
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(out: Path, name: str, text: str) -> Path:
    path = out / name
    path.write_text(text)
    return path


def _params_json(args: argparse.Namespace) -> str:
    payload = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"


def cmd_index_set(args: argparse.Namespace) -> int:
    Q = build_frequency_set(args)
    out = _outdir(args, "index-set")
    _write(out, "params.json", _params_json(args))
    _write(out, "index_set.txt", Q.to_text())
    header = ",".join(f"k{j + 1}" for j in range(Q.d))
    rows = [header] + [",".join(str(v) for v in k) for k in Q]
    _write(out, "records.csv", "\n".join(rows) + "\n")
    _write(out, "summary.json", json.dumps(
        {"d": Q.d, "N": Q.N, "tag": Q.tag,
         "columns": {"records.csv": "one frequency vector per row"}},
        sort_keys=True, indent=2) + "\n")
    if args.plot:
        from .figures import save_index_set_figure
        save_index_set_figure(Q, out / "index_set.png")
    print(f"cardinality {Q.N}")
    for k in Q:
        print(" ".join(str(v) for v in k))
    print(f"results in {out}")
    return EXIT_OK


def _build_points(args: argparse.Namespace, d: int):
    chosen = [x is not None for x in (args.grid, args.uniform, args.subsample)]
    if sum(chosen) != 1:
        raise ValueError("choose exactly one of --grid, --uniform, --subsample")
    if args.grid is not None:
        sizes = [int(v) for v in args.grid.split(",")]
        if len(sizes) == 1 and d > 1:
            sizes = sizes * d
        return equispaced_grid_points(sizes)
    if args.uniform is not None:
        if args.seed is None:
            raise ValueError("--uniform needs --seed")
        return generate_points("uniform_random", args.uniform, d, seed=args.seed)
    if args.seed is None:
        raise ValueError("--subsample needs --seed")
    sizes = None
    if args.grid_sizes:
        sizes = [int(v) for v in args.grid_sizes.split(",")]
    return generate_points("subsampled_grid", args.subsample, d, seed=args.seed,
                           sizes=sizes)


def cmd_certify(args: argparse.Namespace) -> int:
    Q = build_frequency_set(args)
    xi = _build_points(args, Q.d)
    target = tuple(float(v) for v in args.target.split(","))
    if len(target) != 2:
        raise ValueError("--target needs two comma-separated constants")
    kwargs = {}
    if args.q != 2.0:
        kwargs = {"restarts": args.restarts, "steps": args.steps,
                  "seed": args.seed if args.seed is not None else 0}
    ok, report = certify(Q, xi, args.q, target=target, real=args.real, **kwargs)
    out = _outdir(args, "certify")
    _write(out, "params.json", _params_json(args))
    _write(out, "records.csv",
           "q,m,N,C1,C2,exact,certified\n"
           f"{args.q!r},{xi.m},{Q.N},{report.C1!r},{report.C2!r},"
           f"{int(report.exact)},{int(ok)}\n")
    _write(out, "summary.json", report.to_json(include_witnesses=args.witnesses) + "\n")
    if args.plot:
        from .figures import save_certify_figure
        save_certify_figure(report, target, out / "certify.png")
    print(f"C1={report.C1:.12g} C2={report.C2:.12g} exact={report.exact} "
          f"certified={ok}")
    print(f"results in {out}")
    return EXIT_OK


def cmd_nikolskii(args: argparse.Namespace) -> int:
    out = _outdir(args, "nikolskii")
    _write(out, "params.json", _params_json(args))
    if args.n_range:
        lo, hi = _parse_range(args.n_range)
        if args.gamma is None:
            raise ValueError("--n-range needs --gamma (use 1 repeated for the plain cross)")
        weights = AnisotropyWeights.parse(args.gamma)
        rows = nikolskii.asymptotic_comparison(weights.nu, weights, args.q, (lo, hi),
                                               restarts=args.restarts,
                                               steps=args.steps, seed=args.seed)
        _write(out, "records.csv", nikolskii.comparison_csv(rows))
        _write(out, "summary.json", json.dumps(
            {"q": args.q, "gamma": str(weights), "nu": weights.nu,
             "ratio_min": min(r["ratio"] for r in rows),
             "ratio_max": max(r["ratio"] for r in rows),
             "columns": {"records.csv": "n,N,M_lower,predicted,ratio"}},
            sort_keys=True, indent=2) + "\n")
        if args.plot:
            from .figures import save_nikolskii_figure
            save_nikolskii_figure(rows, out / "nikolskii.png")
        for r in rows:
            print(f"n={r['n']} N={r['N']} M_lower={r['M_lower']:.6g} ratio={r['ratio']:.4g}")
    else:
        Q = build_frequency_set(args)
        est = nikolskii.nikolskii_constant(Q, args.q, restarts=args.restarts,
                                           steps=args.steps, seed=args.seed,
                                           real=args.real)
        _write(out, "records.csv",
               "q,N,M_lower,M_reference\n"
               f"{args.q!r},{Q.N},{est.M_lower!r},"
               f"{'' if est.M_reference is None else repr(est.M_reference)}\n")
        _write(out, "summary.json", json.dumps(
            {"q": args.q, "N": Q.N, "M_lower": est.M_lower,
             "M_reference": est.M_reference}, sort_keys=True, indent=2) + "\n")
        print(f"M_lower={est.M_lower:.12g}"
              + (f" (reference {est.M_reference:.12g})" if est.M_reference else ""))
    print(f"results in {out}")
    return EXIT_OK


def cmd_entropy(args: argparse.Namespace) -> int:
    Q = build_frequency_set(args)
    cloud = entropy_mod.build_cloud(Q, args.q, budget=args.budget, seed=args.seed,
                                    real_flag=not args.complex)
    if args.k_ladder:
        ks = [int(v) for v in args.k_ladder.split(",")]
    else:
        ks = entropy_mod.default_k_ladder(Q.N)
    estimates = entropy_mod.entropy_ladder(cloud, ks)
    n_param = args.Qn if args.Qn is not None else 1
    est_m = nikolskii.nikolskii_constant(Q, args.q, restarts=8, steps=100,
                                         seed=args.seed).M_lower
    rows, violations = entropy_mod.compare_bound_shape(estimates, args.q, n_param,
                                                       Q.N, est_m)
    out = _outdir(args, "entropy")
    _write(out, "params.json", _params_json(args))
    _write(out, "records.csv", entropy_mod.shape_table_csv(rows))
    _write(out, "summary.json", json.dumps(
        {"q": args.q, "N": Q.N, "cloud_size": cloud.size, "metric": cloud.metric,
         "violations": len(violations),
         "columns": {"records.csv":
                     "k,lower,upper,normalized_lower,baseline_cross,baseline_nikolskii"}},
        sort_keys=True, indent=2) + "\n")
    if args.plot:
        from .figures import save_entropy_figure
        save_entropy_figure(rows, out / "entropy.png")
    for r in rows:
        print(f"k={r['k']} lower={r['lower']:.6g} upper={r['upper']:.6g}")
    print(f"results in {out}")
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError("ranges use the form lo:hi")
    return int(parts[0]), int(parts[1])


def cmd_scaling(args: argparse.Namespace) -> int:
    target = tuple(float(v) for v in args.target.split(","))
    out = _outdir(args, "scaling")
    _write(out, "params.json", _params_json(args))
    search_kwargs = {}
    if args.q != 2.0:
        search_kwargs = {"restarts": args.restarts, "steps": args.steps}
    if args.freq_file:
        sets = [IndexSet.from_text(Path(p).read_text()) for p in args.freq_file]
        records = experiments.arbitrary_Q_study(
            sets, args.q, trials=args.trials, theta=args.theta, seed=args.seed,
            target=target, **search_kwargs)
        csv_text = experiments.ARBITRARY_COLUMNS + "\n" + \
            "\n".join(r.csv_row() for r in records) + "\n"
        _write(out, "records.csv", csv_text)
        censored = any(r.censored for r in records)
        _write(out, "summary.json", json.dumps(
            {"mode": "arbitrary_sets", "censored_any": censored,
             "columns": {"records.csv": experiments.ARBITRARY_COLUMNS}},
            sort_keys=True, indent=2) + "\n")
        for r in records:
            print(f"{r.label}: N={r.N} m_star={r.m_star} censored={r.censored}")
    else:
        if args.d is None:
            raise ValueError("--d is required")
        weights = (AnisotropyWeights.parse(args.gamma) if args.gamma
                   else AnisotropyWeights.ones(args.d))
        if weights.d != args.d:
            raise ValueError(f"--gamma lists {weights.d} weights but --d is {args.d}")
        lo, hi = _parse_range(args.n_range)
        records, ladders = experiments.scaling_study(
            args.q, weights, (lo, hi), generator=args.generator,
            trials=args.trials, theta=args.theta, seed=args.seed,
            real=not args.complex, target=target, **search_kwargs)
        _write(out, "records.csv", experiments.records_csv(records))
        for n, result in ladders.items():
            _write(out, f"ladder_n{n}.csv", result.ladder_csv())
        censored = any(r.censored for r in records)
        _write(out, "summary.json", json.dumps(
            {"mode": "cross_family", "censored_any": censored,
             "columns": {"records.csv": ",".join(experiments.RECORD_COLUMNS),
                         "ladder_n*.csv": "m,successes,trials"}},
            sort_keys=True, indent=2) + "\n")
        if args.plot:
            from .figures import save_scaling_figure
            save_scaling_figure(records, None, out / "scaling.png")
        for r in records:
            print(f"n={r.n} N={r.N} m_star={r.m_star} censored={r.censored}")
    print(f"results in {out}")
    return EXIT_BUDGET if censored else EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    records = experiments.parse_records_csv(Path(args.records).read_text())
    fit = experiments.fit_exponent(records)
    reference = experiments.reference_exponent(records[0].nu, records[0].q)
    out = _outdir(args, "fit")
    _write(out, "params.json", _params_json(args))
    _write(out, "records.csv",
           "w_hat,intercept,residual,n_lo,n_hi,w_reference\n"
           f"{fit.w_hat!r},{fit.intercept!r},{fit.residual!r},"
           f"{fit.n_range[0]},{fit.n_range[1]},{reference!r}\n")
    _write(out, "summary.json", json.dumps(
        {"w_hat": fit.w_hat, "intercept": fit.intercept,
         "residual": fit.residual, "n_range": list(fit.n_range),
         "w_reference": reference}, sort_keys=True, indent=2) + "\n")
    if args.plot:
        from .figures import save_fit_figure
        save_fit_figure(records, fit, out / "fit.png")
    print(f"w_hat={fit.w_hat:.6g} (reference sufficient-condition exponent {reference:g})")
    print(f"results in {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sampdisc",
        description="sampling discretization laboratory for trigonometric polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index-set", help="construct and print a frequency set")
    _add_common(p)
    _add_set_flags(p)
    p.add_argument("--n", dest="Qn", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_index_set)

    p = sub.add_parser("certify", help="two-sided sampling constants for one point set")
    _add_common(p)
    _add_set_flags(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--grid", default=None, help="equispaced per-axis sizes, e.g. 8 or 8,8")
    p.add_argument("--uniform", type=int, default=None, help="m iid uniform points")
    p.add_argument("--subsample", type=int, default=None,
                   help="m points subsampled from a tensor grid")
    p.add_argument("--grid-sizes", default=None, help="parent grid for --subsample")
    p.add_argument("--target", default="0.5,1.5")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--real", action="store_true",
                   help="restrict to real-valued polynomials")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--witnesses", action="store_true",
                   help="embed witness polynomials in summary.json")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("nikolskii", help="uniform-vs-Lq constant estimation")
    _add_common(p)
    _add_set_flags(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-range", default=None, help="growth comparison over n, form lo:hi")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--real", action="store_true")
    p.set_defaults(func=cmd_nikolskii)

    p = sub.add_parser("entropy", help="packing/covering entropy estimates")
    _add_common(p)
    _add_set_flags(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=512, help="cloud sample budget")
    p.add_argument("--k-ladder", default=None, help="comma-separated k values")
    p.add_argument("--complex", action="store_true",
                   help="sample the complex span instead of real-valued polynomials")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("scaling", help="minimal sampling budget across cross parameters")
    _add_common(p)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--gamma", default=None)
    p.add_argument("--n-range", default="1:4")
    p.add_argument("--generator", default="uniform_random",
                   choices=["uniform_random", "equispaced_grid", "subsampled_grid"])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--theta", type=float, default=0.9)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--target", default="0.5,1.5")
    p.add_argument("--complex", action="store_true",
                   help="study the complex span instead of the real subspace")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--steps", type=int, default=150)
    p.add_argument("--freq-file", nargs="*", default=None,
                   help="study these serialized frequency sets instead of crosses")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("fit", help="fit the growth exponent of recorded budgets")
    _add_common(p)
    p.add_argument("--records", required=True, help="records.csv from a scaling run")
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
