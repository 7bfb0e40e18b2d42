"""
Command-line front end.

Exit status: 0 success, 1 property refuted, 2 search/verification budget
exceeded, 3 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import product
from pathlib import Path

from .analysis import DEFAULT_CAP_K, DEFAULT_CAP_N, simulate_channel, verify_fcc
from .bits import BitVector
from .codesearch import DEFAULT_NODE_CAP, search_N_irregular, search_N_uniform
from .distmat import build_drm, build_fdm, read_matrix
from .encoders import (
    build_from_dcode,
    build_generic,
    build_hwdf_mod_a,
    build_hwdf_parity,
    build_lambda4,
    encoder_to_descriptor,
    load_encoder,
)
from .errors import ConfigError, FccError, SearchBudgetExceeded
from .funcspace import (
    check_contiguity,
    compute_lambda,
    constant_function,
    function_ball,
    hwdf_lambda_bound,
    lexicographic_rearrangement,
    load_function_table,
    weight_distribution,
    weight_function,
)

EXIT_OK, EXIT_REFUTED, EXIT_BUDGET, EXIT_CONFIG = 0, 1, 2, 3

FN_CHOICES = ("weight", "hwdf", "lexrearr", "constant")
STRATEGY_CHOICES = ("lambda4", "generic", "parity", "mod-a", "dcode")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# -- output -----------------------------------------------------------------------


def emit(record: dict, fmt: str, out, rows: list | None = None):
    """Write a report; ``rows`` (list of dicts) switches to tabular output."""
    if fmt == "json":
        doc = {"schema": 1, **record}
        if rows is not None:
            doc["rows"] = rows
        out.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        out.write("# schema: 1\n")
        table = rows if rows is not None else [record]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(table)
        out.write(buf.getvalue())
        return
    out.write("schema: 1\n")
    for k, v in record.items():
        out.write(f"{k}: {v}\n")
    if rows is not None:
        keys = list(rows[0])
        widths = [max(len(k), *(len(str(r[k])) for r in rows)) for k in keys]
        out.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(r[k]).ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")


def _write_file(path, text: str):
    Path(path).write_text(text)


# -- argument helpers -----------------------------------------------------------------


def _add_function_args(p, multi_k=False):
    p.add_argument("--fn", choices=FN_CHOICES, help="builtin function family")
    p.add_argument("--fn-table", metavar="PATH", help="function table file")
    if multi_k:
        p.add_argument("--k", type=int, nargs="+", help="message length(s)")
    else:
        p.add_argument("--k", type=int, help="message length")
    p.add_argument("--T", type=int, help="threshold of the weight distribution function")


def _add_common(p):
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p.add_argument("--output", metavar="PATH", help="write the main artifact here")
    p.add_argument("--cap-k", type=int, default=DEFAULT_CAP_K, help="exhaustive verification cap on k")
    p.add_argument("--cap-nodes", type=int, default=DEFAULT_NODE_CAP, help="search node cap")


def _function(args, k=None):
    if bool(args.fn) == bool(args.fn_table):
        raise ConfigError("give exactly one of --fn or --fn-table")
    if args.fn_table:
        return load_function_table(args.fn_table)
    k = args.k if k is None else k
    if k is None:
        raise ConfigError(f"--fn {args.fn} needs --k")
    if args.fn == "weight":
        return weight_function(k)
    if args.fn == "hwdf":
        if args.T is None:
            raise ConfigError("--fn hwdf needs --T")
        return weight_distribution(k, args.T)
    if args.fn == "lexrearr":
        return lexicographic_rearrangement(k)
    return constant_function(k)


def _rho(args, f):
    if args.rho is not None:
        return args.rho
    if getattr(args, "t", None) is not None:
        return min(2 * args.t, f.k)
    raise ConfigError("give --rho (or --t for radius 2t)")


def _need_t(args):
    if args.t is None:
        raise ConfigError("--t is required")
    return args.t


# -- commands -----------------------------------------------------------------------


def cmd_ball(args, out):
    f = _function(args)
    if not args.u:
        raise ConfigError("--u is required")
    rho = _rho(args, f)
    ball = sorted(function_ball(f, BitVector.from_str(args.u), rho))
    emit({"u": args.u, "rho": rho, "size": len(ball),
          "ball": " ".join(str(f.labels[i]) for i in ball)}, args.format, out)
    return EXIT_OK


def cmd_lambda(args, out):
    f = _function(args)
    rho = _rho(args, f)
    rec = {"function": f.describe(), "k": f.k, "rho": rho, "lambda": compute_lambda(f, rho)}
    if args.bound:
        if f.family != "weight_distribution" and f.family != "weight":
            raise ConfigError("--bound applies to the weight distribution family only")
        t = _need_t(args)
        rec["bound"] = hwdf_lambda_bound(f.threshold or 1, t)
    emit(rec, args.format, out)
    return EXIT_OK


def cmd_contiguity(args, out):
    f = _function(args)
    rho = _rho(args, f)
    res = check_contiguity(f, rho)
    emit({"function": f.describe(), "rho": rho, "contiguous": res.ok,
          "witness": str(res.witness) if res.witness is not None else "-"}, args.format, out)
    return EXIT_OK if res.ok else EXIT_REFUTED


def _emit_matrix(D, args, out):
    if args.output:
        _write_file(args.output, D.to_text())
    if args.format == "human":
        out.write(D.to_text())
    else:
        emit({"kind": D.kind, "size": D.size, "matrix": D.tolist()}, args.format, out)


def cmd_drm(args, out):
    f = _function(args)
    t = _need_t(args)
    if args.msgs:
        msgs = [BitVector.from_str(m) for m in args.msgs.split(",")]
    else:
        msgs = [BitVector(f.k, i) for i in range(1 << f.k)]
    _emit_matrix(build_drm(f, t, msgs), args, out)
    return EXIT_OK


def cmd_fdm(args, out):
    f = _function(args)
    _emit_matrix(build_fdm(f, _need_t(args)), args, out)
    return EXIT_OK


def cmd_search(args, out):
    if args.uniform == bool(args.matrix):
        raise ConfigError("give exactly one of --uniform (with --M, --d) or --irregular --matrix PATH")
    if args.uniform:
        if args.M is None or args.d is None:
            raise ConfigError("--uniform needs --M and --d")
        cert = search_N_uniform(args.M, args.d, node_cap=args.cap_nodes)
    else:
        cert = search_N_irregular(read_matrix(args.matrix), node_cap=args.cap_nodes)
    if args.output:
        _write_file(args.output, json.dumps(cert.to_dict(), indent=1) + "\n")
    emit({"found_length": cert.found_length, "witness": " ".join(cert.witness.strings()) or "-",
          "infeasibility": cert.infeasibility, "nodes": cert.nodes}, args.format, out)
    return EXIT_OK


def _build(strategy, f, t, args):
    if strategy == "lambda4":
        return build_lambda4(f, t)
    if strategy == "generic":
        return build_generic(f, t, node_cap=args.cap_nodes)
    if strategy in ("parity", "mod-a"):
        if f.family not in ("weight_distribution", "weight"):
            raise ConfigError(f"strategy {strategy} needs --fn hwdf")
        T = f.threshold or 1
        if strategy == "parity":
            return build_hwdf_parity(f.k, T, t)
        return build_hwdf_mod_a(f.k, T, t, node_cap=args.cap_nodes)
    # dcode: exact optimum through the DRM over all messages
    msgs = [BitVector(f.k, i) for i in range(1 << f.k)]
    cert = search_N_irregular(build_drm(f, t, msgs), node_cap=args.cap_nodes)
    return build_from_dcode(f, t, msgs, cert.witness.words)


def cmd_build(args, out):
    f = _function(args)
    t = _need_t(args)
    enc = _build(args.strategy, f, t, args)
    desc = encoder_to_descriptor(enc)
    if args.output:
        _write_file(args.output, json.dumps(desc, indent=1) + "\n")
    rec = {"strategy": enc.strategy, "function": f.describe(), "k": f.k, "t": t, "r": enc.r}
    if enc.extra:
        rec.update(enc.extra)
    status = EXIT_OK
    if f.k <= args.cap_k:
        rep = verify_fcc(enc, cap_k=args.cap_k)
        rec["verified"] = rep.is_fcc
        if not rep.is_fcc:
            rec["violation"] = rep.to_dict()["violation"]
            status = EXIT_REFUTED
    else:
        rec["verified"] = "skipped (k above --cap-k)"
    emit(rec, args.format, out)
    return status


def cmd_verify(args, out):
    enc = load_encoder(args.descriptor)
    rep = verify_fcc(enc, cap_k=args.cap_k, samples=args.samples, seed=args.seed)
    emit({k: v for k, v in _flat(rep.to_dict()).items()}, args.format, out)
    return EXIT_REFUTED if rep.is_fcc is False else EXIT_OK


def cmd_simulate(args, out):
    enc = load_encoder(args.descriptor)
    stats = simulate_channel(enc, samples=args.samples, seed=args.seed, cap_n=args.cap_n)
    emit(_flat(stats.to_dict()), args.format, out)
    return EXIT_REFUTED if stats.failures else EXIT_OK


def _flat(d, prefix=""):
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            out.update(_flat(v, f"{prefix}{k}."))
        else:
            out[f"{prefix}{k}"] = v
    return out


def _N(M, d, cap_nodes):
    try:
        return search_N_uniform(M, d, node_cap=cap_nodes).found_length
    except SearchBudgetExceeded:
        return "cap"


def table_row(f, t, cap_nodes=DEFAULT_NODE_CAP, cap_k=DEFAULT_CAP_K) -> dict:
    """One redundancy-comparison row: best FCC construction vs. ECC on function values."""
    rho = min(2 * t, f.k)
    lam = compute_lambda(f, rho)
    E = f.E
    ns = argparse.Namespace(cap_nodes=cap_nodes)
    best = None
    for strategy in ("parity", "lambda4", "mod-a", "generic"):
        try:
            enc = _build(strategy, f, t, ns)
        except (FccError, ConfigError):
            continue
        if f.k <= cap_k and not verify_fcc(enc, cap_k=cap_k).is_fcc:
            continue
        if best is None or enc.r < best.r:
            best = enc
    row = {
        "function": f.describe(), "k": f.k, "t": t, "lambda": lam,
        "fcc_r": best.r if best else "cap",
        "strategy": best.strategy if best else "-",
        "N_lambda_2t": _N(lam, 2 * t, cap_nodes),
        "E": E,
        "N_E_2t": _N(E, 2 * t, cap_nodes),
        "N_E_2t1": _N(E, 2 * t + 1, cap_nodes),
    }
    chain = [row["fcc_r"], row["N_lambda_2t"], row["N_E_2t"], row["N_E_2t1"]]
    if any(c == "cap" for c in chain):
        row["ordering"] = "n/a"
    else:
        a, b, c, d = chain
        ok = a <= b <= c and (c < d or E == 1)
        row["ordering"] = "holds" if ok else "violated"
    return row


def cmd_table(args, out):
    if not args.t:
        raise ConfigError("--t is required")
    ks = args.k if args.k else [None]
    rows = []
    for k, t in product(ks, args.t):
        rows.append(table_row(_function(args, k), t, args.cap_nodes, args.cap_k))
    emit({"rows": len(rows)}, args.format, out, rows=rows)
    return EXIT_REFUTED if any(r["ordering"] == "violated" for r in rows) else EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fcc", description="Function-correcting code toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, with_fn=True, multi_k=False):
        sp = sub.add_parser(name, help=help)
        if with_fn:
            _add_function_args(sp, multi_k)
        _add_common(sp)
        sp.set_defaults(func=fn)
        return sp

    sp = add("ball", cmd_ball, "function ball around a message")
    sp.add_argument("--u", help="centre message as a binary string")
    sp.add_argument("--rho", type=int)
    sp.add_argument("--t", type=int)

    sp = add("lambda", cmd_lambda, "local bound lambda (max function-ball size)")
    sp.add_argument("--rho", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--bound", action="store_true", help="also print floor(4t/T) + 2")

    sp = add("contiguity", cmd_contiguity, "check the contiguity condition")
    sp.add_argument("--rho", type=int)
    sp.add_argument("--t", type=int)

    sp = add("drm", cmd_drm, "distance requirement matrix")
    sp.add_argument("--t", type=int)
    sp.add_argument("--msgs", help="comma-separated messages (default: all, lexicographic)")

    sp = add("fdm", cmd_fdm, "function distance matrix")
    sp.add_argument("--t", type=int)

    sp = add("search", cmd_search, "exact N(M, d) or N(D) search", with_fn=False)
    sp.add_argument("--uniform", action="store_true")
    sp.add_argument("--irregular", action="store_true")
    sp.add_argument("--M", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--matrix", metavar="PATH")

    sp = add("build", cmd_build, "build and verify an encoder")
    sp.add_argument("--t", type=int)
    sp.add_argument("--strategy", choices=STRATEGY_CHOICES, required=True)

    sp = add("verify", cmd_verify, "verify an encoder descriptor", with_fn=False)
    sp.add_argument("--descriptor", required=True)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)

    sp = add("simulate", cmd_simulate, "inject <= t errors and decode", with_fn=False)
    sp.add_argument("--descriptor", required=True)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--cap-n", type=int, default=DEFAULT_CAP_N)

    sp = add("table", cmd_table, "FCC vs ECC redundancy comparison", multi_k=True)
    sp.add_argument("--t", type=int, nargs="+")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SearchBudgetExceeded as exc:
        print(f"fcc: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FccError, OSError) as exc:
        print(f"fcc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
