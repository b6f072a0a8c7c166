"""Compare the compiled extension with the pure-Python fallback.

Prints hot-loop timings for both implementations, then the end-to-end Gram
matrix benchmark for every backend under each implementation.

    python3 benchmarks/compare_impl.py --n-list 5,6 --trials 3
"""
import argparse

from matchkern.bench import accel_microbench, format_table, run_benchmark, to_csv


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-list", default="5,6")
    parser.add_argument("--backend-list", default="zp,explicit,avg")
    parser.add_argument("--matrix-size", type=int, default=100)
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--csv")
    args = parser.parse_args()

    print(f"{'kernel':<26}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for row in accel_microbench():
        print(f"{row['kernel']:<26}{row['pure']:>12.5f}{row.get('compiled', float('nan')):>14.5f}"
              f"{row.get('speedup', float('nan')):>10.1f}")
    print()
    cells = run_benchmark(
        [int(n) for n in args.n_list.split(",")],
        args.backend_list.split(","),
        size=args.matrix_size,
        trials=args.trials,
        impls=("compiled", "pure"),
        progress=print,
    )
    print(format_table(cells))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(to_csv(cells))


if __name__ == "__main__":
    main()
