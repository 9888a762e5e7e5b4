#!/usr/bin/env python
"""Sweep the grouped Hamming codebook over an SNR grid and tabulate error rates.

For each Es/N0 point the script simulates BPSK over AWGN, decodes with both
the group rule and the nearest-codeword rule, and prints the analytic union
bounds next to the measured rates.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from sebits.chancode import AwgnConfig, build_grouped_codebook, gep_union_bound, simulate_awgn
from sebits.gaussian import db_to_linear

DEFAULT_CODEBOOK = Path(__file__).resolve().parent.parent / "fixtures" / "tableVIII_codebook.json"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--codebook", default=DEFAULT_CODEBOOK, type=Path)
    parser.add_argument("--db-start", default=0.0, type=float)
    parser.add_argument("--db-stop", default=7.0, type=float)
    parser.add_argument("--db-step", default=0.5, type=float)
    parser.add_argument("--trials", default=200_000, type=int)
    parser.add_argument("--seed", default=0, type=int)
    parser.add_argument("--output", default=None, type=Path)
    args = parser.parse_args()

    with open(args.codebook) as fh:
        obj = json.load(fh)
    cb = build_grouped_codebook(obj["codewords"], obj["groups"])

    header = ["es_n0_db", "group_err", "cw_err", "ml_group_err", "mlg_bound", "ml_bound"]
    rows = []
    db = args.db_start
    while db <= args.db_stop + 1e-9:
        lin = db_to_linear(db)
        res = simulate_awgn(cb, AwgnConfig(es_n0=lin, trials=args.trials, seed=args.seed))
        rows.append(
            [
                db,
                res.group_error_rate,
                res.codeword_error_rate,
                res.ml_group_error_rate,
                gep_union_bound(cb, lin, "MLG"),
                gep_union_bound(cb, lin, "ML"),
            ]
        )
        print(
            f"{db:5.1f} dB  group {res.group_error_rate:.3e}  cw {res.codeword_error_rate:.3e}"
            f"  bound {rows[-1][4]:.3e}"
        )
        db += args.db_step

    writer = csv.writer(open(args.output, "w", newline="") if args.output else sys.stdout)
    writer.writerow(header)
    writer.writerows(rows)


if __name__ == "__main__":
    main()
