"""Command line interface: ``hyperrank <subcommand>``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import certify as cert_mod
from .certify import RankShortfall, VerificationFailed, VolumeMismatch, certify_gap
from .gkz import (
    QUADRATIC_MATRIX,
    build_family,
    build_system,
    laurent_solution_names,
    laurent_solutions,
    quadratic_demo,
    series_solution,
)
from .linalg import IntMatrix, format_rat
from .polytope import NotFullRank, normalized_volume
from .toric import toric_generating_set

EXIT_VERIFICATION = 2


def _read_matrix(source: str) -> IntMatrix:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return IntMatrix.parse(text)


def cmd_volume(args) -> int:
    try:
        print(normalized_volume(_read_matrix(args.matrix)))
    except NotFullRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_toric_gb(args) -> int:
    for b in toric_generating_set(_read_matrix(args.matrix)):
        print(b)
    return 0


def cmd_family(args) -> int:
    A, beta = build_family(args.d)
    sys.stdout.write(A.to_text())
    print(" ".join(format_rat(b) for b in beta))
    return 0


def cmd_solutions(args) -> int:
    N = args.series_order if args.series_order is not None else cert_mod.default_series_order()
    if args.d >= 3:
        for name, p in zip(laurent_solution_names(args.d), laurent_solutions(args.d)):
            print(f"{name} = {p}")
    else:
        print("p1 = 1 * x1^(-1) * x2^(2)")
        print("p4 = 1 * x3^(2) * x4^(-1)")
    for i in (1, 2, 3):
        print(f"f{i} = {series_solution(i, N)}")
    return 0


def cmd_demo(args) -> int:
    p = quadratic_demo(args.order)
    print(p)
    return 0


def cmd_system(args) -> int:
    A, beta = build_family(args.d)
    print(build_system(A, beta).describe())
    return 0


def cmd_certify(args) -> int:
    N = args.series_order if args.series_order is not None else cert_mod.default_series_order()
    try:
        cert = certify_gap(args.d, N)
    except (VerificationFailed, RankShortfall, VolumeMismatch) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    if args.json:
        Path(args.json).write_text(cert.to_json(indent=2) + "\n")
    print(cert.to_json(indent=2))
    return 0


REPORT_FIELDS = ["d", "volume", "independence_rank", "gap_lower_bound", "claimed_gap", "upper_bound_reported", "series_order"]


def cmd_report(args) -> int:
    from .plotting import plot_gap_report

    N = args.series_order if args.series_order is not None else cert_mod.default_series_order()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    certs = []
    try:
        for d in range(args.d_min, args.d_max + 1):
            certs.append(certify_gap(d, N))
    except (VerificationFailed, RankShortfall, VolumeMismatch) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    table = out / "gap_report.tsv"
    with table.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=REPORT_FIELDS, delimiter="\t")
        w.writeheader()
        for c in certs:
            row = {k: v for k, v in c.to_dict().items() if k in REPORT_FIELDS}
            row["claimed_gap"] = c.d - 1
            w.writerow(row)
    fig = plot_gap_report(certs, out / "gap_report.png", series_order=N)
    print(table)
    print(fig)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperrank", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="normalized volume of conv(columns, 0)")
    p.add_argument("matrix", nargs="?", default="-", help="matrix file ('-' for stdin)")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("toric-gb", help="binomial generators of the toric ideal")
    p.add_argument("matrix", nargs="?", default="-", help="matrix file ('-' for stdin)")
    p.set_defaults(func=cmd_toric_gb)

    p = sub.add_parser("family", help="print A_d and beta_d")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("system", help="print the operators of H_{A_d}(beta_d)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("solutions", help="print the Laurent solutions and truncated series")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--series-order", type=int, default=None)
    p.set_defaults(func=cmd_solutions)

    p = sub.add_parser("demo", help="worked examples")
    demo = p.add_subparsers(dest="demo", required=True)
    q = demo.add_parser("quadratic", help=f"root series of x1 z^2 + x2 z + x3 (A = {QUADRATIC_MATRIX.to_rows()})")
    q.add_argument("--order", type=int, default=10)
    q.set_defaults(func=cmd_demo)

    p = sub.add_parser("certify", help="certify rank(H_{A_d}(beta_d)) - vol(A_d) >= d - 1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--series-order", type=int, default=None)
    p.add_argument("--json", default=None, help="also write the certificate to this path")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("report", help="certify a range of d; write a TSV table and a PNG figure")
    p.add_argument("--d-min", type=int, default=2)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--series-order", type=int, default=None)
    p.add_argument("--out", default="report")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
