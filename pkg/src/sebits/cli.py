"""Command-line front end: JSON in, JSON or CSV out, deterministic seeding.

Exit codes: 0 success, 2 validation error (bad files, bad schemas, bad
values), 3 solver non-convergence, 4 enumeration budget exceeded.  Identical
inputs, flags, and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import chancode, gaussian, measures, optimize, srccode, typicality
from .core import (
    ChannelModel,
    Distribution,
    JointDistribution,
    JointSynonymousPartition,
    SynonymousPartition,
    marginals,
)
from .errors import BudgetExceeded, NonConvergence, ToolkitError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3
EXIT_BUDGET = 4


# ---------------------------------------------------------------------------
# input loading and schema checking
# ---------------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}") from e


def _need(obj: dict, key: str, path: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{path}: missing required key /{key}")
    return obj[key]


def load_distribution(path: str) -> Distribution:
    return Distribution(np.asarray(_need(_load_json(path), "probs", path), dtype=float))


def load_partition(path: str, alphabet_size: int) -> SynonymousPartition:
    blocks = _need(_load_json(path), "blocks", path)
    return SynonymousPartition(tuple(tuple(b) for b in blocks), alphabet_size)


def load_joint(path: str) -> JointDistribution:
    return JointDistribution(np.asarray(_need(_load_json(path), "matrix", path), dtype=float))


def load_channel(path: str) -> ChannelModel:
    return ChannelModel(np.asarray(_need(_load_json(path), "transition", path), dtype=float))


def load_codebook(path: str) -> chancode.GroupedCodebook:
    obj = _load_json(path)
    return chancode.build_grouped_codebook(
        _need(obj, "codewords", path), _need(obj, "groups", path)
    )


SCHEMA_KINDS = ("distribution", "partition", "joint", "channel", "codebook")


def schema_check(path: str, kind: str) -> list[dict]:
    """Structural and semantic validation; returns one violation per finding."""
    violations: list[dict] = []
    obj = _load_json(path)

    def err(pointer: str, message: str):
        violations.append({"pointer": pointer, "message": message})

    if kind == "distribution":
        probs = obj.get("probs")
        if not isinstance(probs, list) or not probs:
            err("/probs", "must be a non-empty array of numbers")
        else:
            try:
                Distribution(np.asarray(probs, dtype=float))
            except (ToolkitError, ValueError) as e:
                err("/probs", str(e))
    elif kind == "partition":
        blocks = obj.get("blocks")
        if not isinstance(blocks, list) or not blocks:
            err("/blocks", "must be a non-empty array of index arrays")
        else:
            size = obj.get("alphabet_size")
            if size is None:
                size = sum(len(b) for b in blocks if isinstance(b, list))
            try:
                SynonymousPartition(tuple(tuple(b) for b in blocks), int(size))
            except (ToolkitError, ValueError, TypeError) as e:
                err("/blocks", str(e))
    elif kind == "joint":
        matrix = obj.get("matrix")
        if not isinstance(matrix, list) or not matrix:
            err("/matrix", "must be a non-empty matrix of numbers")
        else:
            try:
                JointDistribution(np.asarray(matrix, dtype=float))
            except (ToolkitError, ValueError) as e:
                err("/matrix", str(e))
    elif kind == "channel":
        transition = obj.get("transition")
        if not isinstance(transition, list) or not transition:
            err("/transition", "must be a non-empty matrix of numbers")
        else:
            try:
                ChannelModel(np.asarray(transition, dtype=float))
            except (ToolkitError, ValueError) as e:
                err("/transition", str(e))
    elif kind == "codebook":
        codewords = obj.get("codewords")
        groups = obj.get("groups")
        if not isinstance(codewords, list) or not codewords:
            err("/codewords", "must be a non-empty array of binary strings")
        if not isinstance(groups, list) or not groups:
            err("/groups", "must be a non-empty array of index arrays")
        if not violations:
            try:
                cb = chancode.build_grouped_codebook(codewords, groups)
                if "n" in obj and obj["n"] != cb.n:
                    err("/n", f"declared length {obj['n']} but codewords have length {cb.n}")
            except (ToolkitError, ValueError) as e:
                err("/groups", str(e))
    else:
        raise ValidationError(f"unknown schema kind {kind!r}")
    return violations


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_measures(args) -> dict:
    out: dict = {}
    if args.dist:
        d = load_distribution(args.dist)
        out["H"] = measures.entropy(d)
        if args.partition:
            f = load_partition(args.partition, d.alphabet_size)
            out["Hs"] = measures.semantic_entropy(d, f)
    if args.joint:
        j = load_joint(args.joint)
        nu, nv = j.shape
        fu = load_partition(args.u_partition, nu) if args.u_partition else SynonymousPartition.identity(nu)
        fv = load_partition(args.v_partition, nv) if args.v_partition else SynonymousPartition.identity(nv)
        fj = JointSynonymousPartition(fu, fv)
        pu, pv = marginals(j)
        out.update(
            {
                "H_u": measures.entropy(pu),
                "H_v": measures.entropy(pv),
                "H_joint": measures.joint_entropy(j),
                "H_u_given_v": measures.conditional_entropy(j, "u_given_v"),
                "H_v_given_u": measures.conditional_entropy(j, "v_given_u"),
                "I": measures.mutual_information(j),
                "Hs_u": measures.semantic_entropy(pu, fu),
                "Hs_v": measures.semantic_entropy(pv, fv),
                "Hs_joint": measures.semantic_joint_entropy(j, fj),
                "Hs_u_given_v": measures.semantic_conditional_entropy(j, fu, "u_given_v"),
                "Hs_v_given_u": measures.semantic_conditional_entropy(j, fv, "v_given_u"),
                "I_up": measures.up_smi(j, fj),
                "I_down": measures.down_smi(j, fj),
                "I_down_clamped": measures.down_smi(j, fj, clamp=True),
                "I_full": measures.full_smi(j, fj),
            }
        )
    if not out:
        raise ValidationError("measures needs --dist and/or --joint")
    return out


def _cmd_capacity(args) -> dict:
    ch = load_channel(args.channel)
    res = optimize.semantic_capacity(
        ch,
        partition_budget=args.budget,
        tol=args.tol,
        identity_only=args.identity_only,
        threads=args.threads,
    )
    return res.to_json()


def _cmd_rate_distortion(args) -> dict:
    src = load_distribution(args.dist)
    ds = optimize.SemanticDistortionMatrix(
        np.asarray(_need(_load_json(args.distortion), "values", args.distortion), dtype=float)
    )
    res = optimize.semantic_rate_distortion(
        src,
        ds,
        args.d_target,
        partition_budget=args.budget,
        tol=args.tol,
        reconstruction_size=args.reconstruction_size,
    )
    return res.to_json()


def _cmd_huffman(args) -> dict:
    d = load_distribution(args.dist)
    f = load_partition(args.partition, d.alphabet_size) if args.partition else SynonymousPartition.identity(d.alphabet_size)
    code = srccode.build_semantic_huffman(d, f, arity=args.arity)
    lower, upper = srccode.optimal_length_bounds(d, f, arity=args.arity)
    return {
        "codewords": list(code.codewords),
        "arity": code.arity,
        "lengths": code.lengths,
        "avg_length": srccode.average_length(code, d, f),
        "kraft_sum": sum(args.arity ** -l for l in code.lengths),
        "length_bounds": [lower, upper],
    }


def _load_code(path: str) -> srccode.SemanticPrefixCode:
    obj = _load_json(path)
    return srccode.SemanticPrefixCode(
        tuple(_need(obj, "codewords", path)), int(obj.get("arity", 2))
    )


def _read_symbols(path: str) -> list[int]:
    try:
        with open(path) as fh:
            return [int(tok) for tok in fh.read().split()]
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise ValidationError(f"{path}: symbols must be whitespace-separated integers") from e


def _cmd_encode(args) -> str:
    code = _load_code(args.code)
    f_size = sum(len(b) for b in _need(_load_json(args.partition), "blocks", args.partition))
    f = load_partition(args.partition, f_size)
    return srccode.encode_sequence(_read_symbols(args.input), code, f)


def _cmd_decode(args) -> str:
    code = _load_code(args.code)
    f_size = sum(len(b) for b in _need(_load_json(args.partition), "blocks", args.partition))
    f = load_partition(args.partition, f_size)
    try:
        with open(args.input) as fh:
            stream = fh.read().strip()
    except OSError as e:
        raise ValidationError(f"cannot read {args.input}: {e}") from e
    symbols = srccode.decode_sequence(stream, code, f, policy=args.policy, seed=args.seed)
    return " ".join(str(s) for s in symbols)


def _cmd_chancode(args) -> dict:
    cb = load_codebook(args.codebook)
    d_min, spectrum = chancode.min_group_hamming_distance(cb)
    out = {
        "n": cb.n,
        "num_codewords": cb.num_codewords,
        "num_groups": cb.num_groups,
        "group_rate": cb.group_rate,
        "synonymous_rate": cb.synonymous_rate,
        "d_gh_min": d_min,
        "group_spectrum": [
            {"distances": list(k), "count": v} for k, v in sorted(spectrum.items())
        ],
        "classic_spectrum": [
            {"distance": k, "count": v}
            for k, v in chancode.classic_distance_spectrum(cb).items()
        ],
    }
    if args.es_n0 is not None:
        out["mlg_bound"] = chancode.gep_union_bound(cb, args.es_n0, "MLG")
        out["ml_bound"] = chancode.gep_union_bound(cb, args.es_n0, "ML")
    return out


def _cmd_simulate(args) -> tuple[list[str], list[list[float]]]:
    cb = load_codebook(args.codebook)
    header = ["es_n0_db", "group_err", "cw_err", "mlg_bound", "ml_bound"]
    rows = []
    for db in args.es_n0_db:
        lin = gaussian.db_to_linear(db)
        res = chancode.simulate_awgn(cb, chancode.AwgnConfig(lin, args.trials, args.seed))
        rows.append(
            [
                db,
                res.group_error_rate,
                res.codeword_error_rate,
                chancode.gep_union_bound(cb, lin, "MLG"),
                chancode.gep_union_bound(cb, lin, "ML"),
            ]
        )
    return header, rows


def _cmd_typicality(args):
    if args.joint:
        j = load_joint(args.joint)
        nu, nv = j.shape
        fu = load_partition(args.u_partition, nu) if args.u_partition else SynonymousPartition.identity(nu)
        fv = load_partition(args.v_partition, nv) if args.v_partition else SynonymousPartition.identity(nv)
        rep = typicality.estimate_joint_typicality(
            j,
            JointSynonymousPartition(fu, fv),
            n=args.n,
            eps=args.eps,
            trials=args.trials,
            seed=args.seed,
            mode=args.mc_mode,
        )
        return rep.to_json()
    if not args.dist:
        raise ValidationError("typicality needs --dist (exact enumeration) or --joint (Monte Carlo)")
    d = load_distribution(args.dist)
    f = load_partition(args.partition, d.alphabet_size) if args.partition else SynonymousPartition.identity(d.alphabet_size)
    ns = args.sweep if args.sweep else [args.n]
    reports = [typicality.enumerate_typical_sets(d, f, n, args.eps) for n in ns]
    if args.sweep:
        header = ["n", "prob_typical", "set_size", "lower_bound", "upper_bound", "bound_satisfied"]
        rows = [
            [r.n, r.prob_typical, r.set_size, r.lower_bound, r.upper_bound, int(r.bound_satisfied)]
            for r in reports
        ]
        return header, rows
    return reports[0].to_json()


def _cmd_gaussian(args):
    if args.curve:
        params = {"s_values": args.s_values, "p": args.p}
        start, stop, num = args.grid
        grid = np.linspace(start, stop, int(num)).tolist()
        return gaussian.emit_curves(args.curve, params, grid)
    if args.op == "capacity":
        c_s, lower = gaussian.gaussian_semantic_capacity(args.p, args.noise, args.s)
        return {"c_s": c_s, "lower": lower}
    if args.op == "bandlimited":
        c_s, lower = gaussian.bandlimited_semantic_capacity(args.p, args.noise, args.bandwidth, args.s)
        return {"c_s": c_s, "lower": lower}
    if args.op == "entropy":
        return {"Hs": gaussian.gaussian_semantic_entropy(args.noise, args.s)}
    if args.op == "min-energy":
        return {"energy": gaussian.min_energy_per_sebit(args.mu, args.s)}
    if args.op == "rd":
        return {"r_s": gaussian.gaussian_semantic_rd(args.p, args.d_target, args.s)}
    raise ValidationError("gaussian needs --curve or --op")


def _cmd_schema_check(args) -> dict:
    violations = schema_check(args.file, args.kind)
    return {"file": args.file, "kind": args.kind, "violations": violations}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sebits", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    common.add_argument(
        "--error-json", action="store_true", help="emit machine-readable errors on stderr"
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add_parser(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add_parser("measures", help="entropies and mutual-information companions")
    sp.add_argument("--dist")
    sp.add_argument("--partition")
    sp.add_argument("--joint")
    sp.add_argument("--u-partition")
    sp.add_argument("--v-partition")
    sp.set_defaults(fn=_cmd_measures, fmt="json")

    sp = add_parser("capacity", help="semantic channel capacity")
    sp.add_argument("--channel", required=True)
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--identity-only", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(fn=_cmd_capacity, fmt="json")

    sp = add_parser("rate-distortion", help="semantic rate-distortion")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--distortion", required=True, help='JSON {"values": [[...]]}')
    sp.add_argument("--d-target", type=float, required=True)
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--tol", type=float, default=1e-7)
    sp.add_argument("--reconstruction-size", type=int, default=None)
    sp.set_defaults(fn=_cmd_rate_distortion, fmt="json")

    sp = add_parser("huffman", help="semantic Huffman codebook")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--partition")
    sp.add_argument("--arity", type=int, default=2)
    sp.set_defaults(fn=_cmd_huffman, fmt="json")

    sp = add_parser("encode", help="encode whitespace-separated symbol indices")
    sp.add_argument("--code", required=True, help="codebook JSON from `huffman`")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--input", required=True)
    sp.set_defaults(fn=_cmd_encode, fmt="text")

    sp = add_parser("decode", help="decode a digit stream to representatives")
    sp.add_argument("--code", required=True)
    sp.add_argument("--partition", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--policy", choices=["lowest", "random"], default="lowest")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=_cmd_decode, fmt="text")

    sp = add_parser("chancode", help="grouped-codebook distances and bounds")
    sp.add_argument("--codebook", required=True)
    sp.add_argument("--es-n0", type=float, default=None)
    sp.set_defaults(fn=_cmd_chancode, fmt="json")

    sp = add_parser("simulate", help="AWGN Monte Carlo sweep (CSV)")
    sp.add_argument("--codebook", required=True)
    sp.add_argument("--es-n0-db", type=_float_list, required=True)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=_cmd_simulate, fmt="csv")

    sp = add_parser("typicality", help="typical-set enumeration and Monte Carlo probes")
    sp.add_argument("--dist", help="exact enumeration of a single source")
    sp.add_argument("--partition")
    sp.add_argument("--joint", help="Monte Carlo joint probes instead of enumeration")
    sp.add_argument("--u-partition")
    sp.add_argument("--v-partition")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mc-mode", choices=["correlated", "independent"], default="correlated")
    sp.add_argument("--sweep", type=_int_list, default=None, help="comma-separated n values (CSV out)")
    sp.set_defaults(fn=_cmd_typicality, fmt="auto")

    sp = add_parser("gaussian", help="closed-form calculators and figure CSVs")
    sp.add_argument("--curve", choices=list(gaussian.CURVE_KINDS), default=None)
    sp.add_argument("--op", choices=["capacity", "bandlimited", "entropy", "min-energy", "rd"], default=None)
    sp.add_argument("--s-values", type=_float_list, default=[2.0])
    sp.add_argument("--grid", type=_float_list, default=[-2.0, 20.0, 45.0], help="start,stop,points")
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--noise", type=float, default=1.0)
    sp.add_argument("--bandwidth", type=float, default=1.0)
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--d-target", type=float, default=0.25)
    sp.set_defaults(fn=_cmd_gaussian, fmt="auto")

    sp = add_parser("schema-check", help="validate a JSON input file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--kind", choices=list(SCHEMA_KINDS), required=True)
    sp.set_defaults(fn=_cmd_schema_check, fmt="json")

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.fn(args)
    except BudgetExceeded as e:
        _report_error(args, e, EXIT_BUDGET)
        return EXIT_BUDGET
    except NonConvergence as e:
        _report_error(args, e, EXIT_NONCONVERGENCE)
        return EXIT_NONCONVERGENCE
    except (ValidationError, ValueError) as e:
        _report_error(args, e, EXIT_VALIDATION)
        return EXIT_VALIDATION

    if isinstance(result, tuple):  # (header, rows) -> CSV
        _emit(_csv_text(result[0], result[1]), args.output)
    elif isinstance(result, str):
        _emit(result, args.output)
    else:
        _emit(_json_dumps(result), args.output)
    if args.command == "schema-check" and result["violations"]:
        return EXIT_VALIDATION
    return EXIT_OK


def _report_error(args, exc: Exception, code: int):
    if getattr(args, "error_json", False):
        sys.stderr.write(
            _json_dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n"
        )
    else:
        sys.stderr.write(f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
