"""``matchkern`` command line interface."""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional, Sequence

from matchkern import __version__
from matchkern.matching import Matching, load_matchings, random_matchings
from matchkern.partition import Heuristic, as_partition, partition_count, to_key
from matchkern.zsf import Backend, CapabilityError


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _nu(text: str) -> float:
    if text.lower() in ("inf", "infinity", "heat"):
        return math.inf
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("nu must be positive")
    return value


def _kappa(text: str):
    if text == "auto":
        return "auto"
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("kappa must be positive or 'auto'")
    return value


def _partition(text: str):
    text = text.strip()
    if text.startswith("["):
        return as_partition(json.loads(text))
    sep = "." if "." in text else ","
    return as_partition(int(p) for p in text.split(sep) if p)


def _int_list(text: str) -> List[int]:
    return [int(p) for p in text.split(",") if p]


def _write(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _filter_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nu", type=_nu, default=math.inf, help="smoothness; 'inf' selects the heat kernel")
    p.add_argument("--kappa", type=_kappa, default="auto")
    p.add_argument("--no-degree-correction", action="store_true")


def _matrix_csv(matrix) -> str:
    m = len(matrix)
    lines = ["index," + ",".join(str(i) for i in range(m))]
    for i, row in enumerate(matrix):
        lines.append(f"{i}," + ",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def cmd_kernel(args) -> int:
    from matchkern.kernel import KernelConfig, MatchingKernel, approximation_error

    if args.input:
        with open(args.input) as fh:
            xs = load_matchings(json.load(fh))
    elif args.random:
        xs = random_matchings(args.n, args.random, args.seed)
    else:
        raise ValueError("give --input FILE or --random COUNT")
    if any(x.n != args.n for x in xs):
        raise ValueError(f"all matchings must have size n={args.n}")
    cfg = KernelConfig(
        args.n,
        nu=args.nu,
        kappa=args.kappa,
        truncation_size=args.truncation_size,
        heuristic=args.heuristic,
        degree_correction=not args.no_degree_correction,
        backend=args.backend,
    )
    kernel = MatchingKernel(cfg)
    trunc = cfg.resolved_truncation()
    err = approximation_error(args.n, args.nu, kernel.kappa, cfg.degree_correction, trunc)
    print(
        f"n={args.n} nu={args.nu} kappa={_fmt(kernel.kappa)} terms={len(trunc)} "
        f"backend={cfg.backend.value} degree_correction={cfg.degree_correction} "
        f"predicted_relative_error={_fmt(err)}",
        file=sys.stderr,
    )
    gram = kernel.matrix(xs)
    if args.format == "json":
        text = json.dumps({"n": args.n, "kappa": kernel.kappa, "matrix": gram.tolist()}) + "\n"
    else:
        text = _matrix_csv(gram)
    _write(text, args.output)
    return 0


def cmd_zsf(args) -> int:
    from matchkern._rational import fraction_str
    from matchkern.zsf import zsf_table

    table = zsf_table(args.rho, args.backend)
    lines = ["mu,fraction,float"]
    for mu, v in table.items():
        lines.append(f"{to_key(mu)},{fraction_str(v)},{_fmt(float(v))}")
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_spectrum(args) -> int:
    from matchkern.kernel import KernelConfig, spectral_density_report, spectral_terms

    dc = not args.no_degree_correction
    if args.density:
        lines = ["rho,eigenvalue,log_density"]
        for rho, lam, dens in spectral_density_report(args.n, args.nu, args.kappa, dc):
            lines.append(f"{to_key(rho)},{_fmt(lam)},{_fmt(dens)}")
    else:
        size = args.truncation_size or partition_count(args.n)
        cfg = KernelConfig(args.n, nu=args.nu, kappa=args.kappa, truncation_size=size, degree_correction=dc)
        lines = ["rho,eigenvalue,dimension,weight,log_weight"]
        for t in spectral_terms(cfg):
            lines.append(f"{to_key(t.rho)},{_fmt(float(t.eigenvalue))},{t.dim},{_fmt(t.weight)},{_fmt(t.log_weight)}")
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_approx_error(args) -> int:
    from matchkern.kernel import approximation_curve

    curve = approximation_curve(
        args.n, args.nu, args.kappa, not args.no_degree_correction, args.max_terms, args.heuristic
    )
    lines = ["terms,relative_error"] + [f"{k},{_fmt(e)}" for k, e in curve]
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_bench(args) -> int:
    from matchkern.bench import accel_microbench, format_table, run_benchmark, to_csv

    if args.micro:
        print(f"{'kernel':<26}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
        for row in accel_microbench():
            comp = row.get("compiled", float("nan"))
            print(f"{row['kernel']:<26}{row['pure']:>12.5f}{comp:>14.5f}{row.get('speedup', float('nan')):>10.1f}")
        return 0
    impls = ("compiled", "pure") if args.impl == "both" else (args.impl,)
    cells = run_benchmark(
        _int_list(args.n_list),
        [b for b in args.backend_list.split(",") if b],
        size=args.matrix_size,
        trials=args.trials,
        seed=args.seed,
        impls=impls,
        progress=lambda s: print(s, file=sys.stderr),
    )
    print(format_table(cells))
    if args.output:
        _write(to_csv(cells), args.output)
    return 0


def cmd_oracle(args) -> int:
    from matchkern.oracle import run_checks

    kappa = 1.0 if args.kappa == "auto" and args.n < 2 else args.kappa
    ok = True
    for name, passed, detail in run_checks(args.n, args.nu, kappa, not args.no_degree_correction):
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return 0 if ok else 1


def _read_tree(args):
    from matchkern.phylo import parse_newick

    if args.newick:
        return parse_newick(args.newick)
    if args.input:
        with open(args.input) as fh:
            return parse_newick(fh.read())
    raise ValueError("give --newick STRING or --input FILE")


def _read_matching(args) -> Matching:
    if args.matching:
        data = json.loads(args.matching)
    elif args.input:
        with open(args.input) as fh:
            data = json.load(fh)
    else:
        raise ValueError("give --matching JSON or --input FILE")
    (x,) = load_matchings(data)
    return x


def cmd_tree(args) -> int:
    from matchkern import phylo

    if args.action == "encode":
        _write(json.dumps(phylo.dh_encode(_read_tree(args)).to_list()) + "\n", args.output)
        return 0
    if args.action == "decode":
        _write(phylo.to_newick(phylo.dh_decode(_read_matching(args))) + "\n", args.output)
        return 0
    if args.action == "embed":
        _write(json.dumps(phylo.richman_embed(_read_tree(args)).to_list()) + "\n", args.output)
        return 0
    if args.action == "nni-check":
        trees = [_read_tree(args)] if (args.newick or args.input) else [
            phylo.random_tree(args.leaves, args.seed + i) for i in range(args.trials)
        ]
        ok = True
        moves = 0
        worst = 0
        for t in trees:
            for mv in phylo.nni_moves(t):
                passed, changed, _ = phylo.richman_nni_check(mv)
                ok &= passed
                moves += 1
                worst = max(worst, changed)
        status = "PASS" if ok else "FAIL"
        print(f"{status} embedding: {moves} NNI moves realized by <= 2 transpositions, max changed pairs {worst}")
        return 0 if ok else 1
    if args.action == "counterexample":
        if args.kind == "adjacent-trees":
            c = phylo.far_encodings_of_adjacent_trees(args.n)
            print(f"tree      {phylo.to_newick(c.tree)}")
            print(f"neighbor  {phylo.to_newick(c.neighbor)}")
            print(f"x         {json.dumps(c.x.to_list())}")
            print(f"y         {json.dumps(c.y.to_list())}")
            print(f"nni_adjacent {c.adjacent}")
            print(f"differing_pairs {c.differing}")
            passed = c.adjacent and 2 * c.bound >= args.n - 1
            print(f"{'PASS' if passed else 'FAIL'} quotient distance >= {c.bound} >= (n-1)/2 = {(args.n - 1) / 2:g}")
        else:
            c = phylo.far_trees_of_adjacent_matchings(args.n)
            print(f"x1        {json.dumps(c.x1.to_list())}")
            print(f"x2        {json.dumps(c.x2.to_list())}")
            print(f"sigma     ({1} {2 * args.n - 1})")
            print(f"tree1     {phylo.to_newick(c.tree1)}  height {c.height1}")
            print(f"tree2     {phylo.to_newick(c.tree2)}  height {c.height2}")
            passed = 2 * c.gap >= args.n - 4
            print(f"{'PASS' if passed else 'FAIL'} NNI distance >= height gap {c.gap} >= n/2-2 = {args.n / 2 - 2:g}")
        return 0 if passed else 1
    raise ValueError(args.action)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchkern", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    backends = [b.value for b in Backend]
    heuristics = [h.value for h in Heuristic]

    p = sub.add_parser("kernel", help="Gram matrix of a set of matchings")
    _filter_args(p)
    p.add_argument("--truncation-size", type=int)
    p.add_argument("--heuristic", choices=heuristics, default="max-part")
    p.add_argument("--backend", choices=backends, default="zp")
    p.add_argument("--input", help="JSON file with a list of matchings")
    p.add_argument("--random", type=int, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("zsf", help="zonal spherical function table for one partition")
    p.add_argument("--rho", type=_partition, required=True, help="e.g. 3,2,1")
    p.add_argument("--backend", choices=backends, default="zp")
    p.add_argument("--output")
    p.set_defaults(func=cmd_zsf)

    p = sub.add_parser("spectrum", help="eigenvalues, dimensions and weights per partition")
    _filter_args(p)
    p.add_argument("--truncation-size", type=int)
    p.add_argument("--density", action="store_true", help="emit log(Phi^2 d) per partition instead")
    p.add_argument("--output")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("approx-error", help="relative L2 error against truncation size")
    _filter_args(p)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--heuristic", choices=heuristics, default="max-part")
    p.add_argument("--output")
    p.set_defaults(func=cmd_approx_error)

    p = sub.add_parser("bench", help="time and memory of the backends")
    p.add_argument("--n-list", default="5,6")
    p.add_argument("--backend-list", default="zp,explicit,avg")
    p.add_argument("--matrix-size", type=int, default=100)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--impl", choices=["compiled", "pure", "both"], default="compiled")
    p.add_argument("--micro", action="store_true", help="compare compiled and pure hot loops only")
    p.add_argument("--output", help="CSV file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force spectral checks for small n")
    _filter_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("tree", help="phylogenetic tree encodings and checks")
    p.add_argument("action", choices=["encode", "decode", "embed", "nni-check", "counterexample"])
    p.add_argument("--newick")
    p.add_argument("--matching", help="JSON matching, e.g. [[1,5],[2,3],[4,6],[7,8]]")
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--kind", choices=["adjacent-trees", "adjacent-matchings"], default="adjacent-trees")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--leaves", type=int, default=8)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tree)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
