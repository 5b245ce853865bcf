"""Command-line front end: partition, generate, verify, and benchmark.

Exit codes are a stable contract: 0 on success, 1 when verification fails,
2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from .drawing import DrawingError, parse_drawing
from .engine import find_partition
from .gen import GenConfig, gen_one_planar
from .verify import PartitionFormatError, partition_from_pairs, verify_partition

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


def _read_drawing(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DrawingError(f"cannot read {path}: {exc}") from None
    return parse_drawing(text)


def _format_partition(part, stats_block: str | None) -> str:
    lines = [f"forest {u} {v}" for u, v in part.forest_pairs]
    lines += [f"planar {u} {v}" for u, v in part.planar_pairs]
    if stats_block is not None:
        lines.append("# stats")
        lines.append(stats_block)
    return "\n".join(lines) + "\n"


def _stats_block(p, part, t_parse, timings, t_verify) -> str:
    s = part.stats
    kv = [
        ("n", p.n_real),
        ("m", p.original_edge_count()),
        ("crossing_count", p.n_cross),
        ("forest_size", part.forest_size),
        ("contraction_count", s.contractions),
        ("total_reattach_work", s.reattach_work),
        ("case1a", s.case1a),
        ("case1b", s.case1b),
        ("case1c", s.case1c),
        ("case2", s.case2),
        ("anchors", s.anchors),
        ("t_parse", f"{t_parse:.6f}"),
        ("t_augment", f"{timings.get('augment', 0.0):.6f}"),
        ("t_engine", f"{timings.get('engine', 0.0):.6f}"),
        ("t_verify", f"{t_verify:.6f}"),
    ]
    return "\n".join(f"{k}={v}" for k, v in kv)


def cmd_partition(args) -> int:
    t0 = time.perf_counter()
    p = _read_drawing(args.input)
    t_parse = time.perf_counter() - t0
    timings: dict = {}
    part = find_partition(p, timings=timings)
    t_verify = 0.0
    report = None
    if args.verify:
        t0 = time.perf_counter()
        report = verify_partition(p, part)
        t_verify = time.perf_counter() - t0
    block = (
        _stats_block(p, part, t_parse, timings, t_verify) if args.stats else None
    )
    out = _format_partition(part, block)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if report is not None and not report.all_ok:
        sys.stderr.write(report.to_text() + "\n")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = GenConfig(args.n, args.cross, args.seed)
    p = gen_one_planar(cfg)
    text = p.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_partition_file(path: str):
    forest = []
    planar = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    if line.startswith("# stats"):
                        break
                    continue
                parts = line.split()
                if len(parts) != 3 or parts[0] not in ("forest", "planar"):
                    if "=" in line:
                        continue  # stats block without marker
                    raise PartitionFormatError(
                        f"{path}:{lineno}: malformed line {line!r}"
                    )
                u, v = int(parts[1]), int(parts[2])
                (forest if parts[0] == "forest" else planar).append((u, v))
    except OSError as exc:
        raise PartitionFormatError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise PartitionFormatError(str(exc)) from None
    return forest, planar


def cmd_verify(args) -> int:
    p = _read_drawing(args.input)
    forest, planar = _parse_partition_file(args.partition)
    part = partition_from_pairs(p, forest, planar)
    report = verify_partition(p, part)
    sys.stdout.write(report.to_text() + "\n")
    return EXIT_OK if report.all_ok else EXIT_VERIFY_FAILED


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        sizes.append(int(float(tok)))
    if not sizes:
        raise ValueError("empty size list")
    return sizes


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    rows = []
    for n in sizes:
        t_gen = t_part = t_ver = 0.0
        work = 0
        crossings = 0
        for seed in range(args.seeds):
            t0 = time.perf_counter()
            p = gen_one_planar(GenConfig(n, args.cross, seed))
            t_gen += time.perf_counter() - t0
            timings: dict = {}
            t0 = time.perf_counter()
            part = find_partition(p, timings=timings)
            t_part += time.perf_counter() - t0
            work += part.stats.reattach_work
            crossings += p.n_cross
            if not args.no_verify:
                t0 = time.perf_counter()
                rep = verify_partition(p, part)
                t_ver += time.perf_counter() - t0
                if not rep.all_ok:
                    sys.stderr.write(f"verification failed at n={n} seed={seed}\n")
                    return EXIT_VERIFY_FAILED
        k = args.seeds
        rows.append(
            {
                "n": n,
                "crossings": crossings / k,
                "t_gen": t_gen / k,
                "t_partition": t_part / k,
                "t_verify": t_ver / k,
                "work": work / k,
            }
        )
    header = (
        f"{'n':>9} {'cross':>9} {'gen_s':>9} {'partition_s':>12} "
        f"{'verify_s':>9} {'reattach':>12} {'work/nlogn':>11} {'ratio':>7}"
    )
    sys.stdout.write(header + "\n")
    prev = None
    for row in rows:
        n = row["n"]
        c = row["work"] / (n * math.log2(n)) if n > 1 else 0.0
        ratio = row["t_partition"] / prev if prev else float("nan")
        sys.stdout.write(
            f"{n:>9} {row['crossings']:>9.0f} {row['t_gen']:>9.3f} "
            f"{row['t_partition']:>12.3f} {row['t_verify']:>9.3f} "
            f"{row['work']:>12.0f} {c:>11.3f} "
            + (f"{ratio:>7.2f}" if prev else f"{'-':>7}")
            + "\n"
        )
        prev = row["t_partition"]
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planarsplit",
        description=(
            "Partition the edges of a 1-planar drawing into a planar graph "
            "and a forest."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_part = sub.add_parser("partition", help="compute a partition of a drawing")
    p_part.add_argument("input", help=".1pl drawing file")
    p_part.add_argument("--out", help="write the partition here (default stdout)")
    p_part.add_argument("--verify", action="store_true", help="re-check the output")
    p_part.add_argument("--stats", action="store_true", help="append a stats block")
    p_part.set_defaults(func=cmd_partition)

    p_gen = sub.add_parser("gen", help="generate a random 1-planar drawing")
    p_gen.add_argument("--n", type=int, required=True, help="vertex count (>= 3)")
    p_gen.add_argument(
        "--cross", type=float, default=0.3, help="crossing fraction in [0, 1]"
    )
    p_gen.add_argument("--seed", type=int, default=0, help="64-bit seed")
    p_gen.add_argument("--out", help="write the drawing here (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_ver = sub.add_parser("verify", help="check an externally supplied partition")
    p_ver.add_argument("input", help=".1pl drawing file")
    p_ver.add_argument("partition", help="partition file (forest/planar lines)")
    p_ver.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="scaling benchmark over a size ladder")
    p_bench.add_argument(
        "--sizes", required=True, help="comma-separated sizes, e.g. 1e4,2e4,4e4"
    )
    p_bench.add_argument("--seeds", type=int, default=5, help="seeds per size")
    p_bench.add_argument("--cross", type=float, default=0.3)
    p_bench.add_argument("--no-verify", action="store_true")
    p_bench.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DrawingError, PartitionFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


def script_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
