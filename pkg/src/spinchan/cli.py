"""Command-line front end.

Subcommands: info, min-entropy, capacity, curve, verify, export-channel.
All numeric output is deterministic for a fixed seed and uses a fixed float
format (17 significant digits), so identical invocations are byte-identical.
Exit codes: 0 success (and all checks passed for ``verify``), 1 failed
check/computation, 2 usage error.
"""

import argparse
import sys

import numpy as np

from . import verify as verify_mod
from .bipartite import curve_csv, entropy_curve
from .channels import (
    build_isotropic,
    build_transpose_depolarizing,
    channel_to_dict,
    check_covariance,
    choi_matrix,
)
from .entropy import LN2, holevo_covariant, min_output_entropy
from .errors import SpinChanError
from .kernels import BACKEND
from .serialize import fmt, json_text
from .tolerances import DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_SIMPLEX_TOL

CHANNELS = ("phi-half", "phi-one", "phi-one-magnetic", "transpose-depolarizing")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinchan",
        description="Isotropic spin channels: entropies, capacities, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    chan = argparse.ArgumentParser(add_help=False)
    chan.add_argument("--channel", choices=CHANNELS, required=True)
    chan.add_argument("--dim", type=int, default=None,
                      help="dimension (required iff --channel transpose-depolarizing)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--output", default="-", help="output path, '-' for stdout")

    units = argparse.ArgumentParser(add_help=False)
    units.add_argument("--units", choices=("nats", "bits"), default="nats")

    p = sub.add_parser("info", parents=[chan, common],
                       help="show channel facts and validity residuals")
    p.add_argument("--format", choices=("json", "text"), default="json")

    for name, helptext in (("min-entropy", "minimum output entropy"),
                           ("capacity", "Holevo capacity via the covariant shortcut")):
        p = sub.add_parser(name, parents=[chan, common, units], help=helptext)
        p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
        p.add_argument("--tol", type=float, default=DEFAULT_SIMPLEX_TOL)
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("curve", parents=[common, units],
                       help="pair-output entropy over the Schmidt simplex")
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", parents=[common],
                       help="run the full verification suite")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--three-fold", action="store_true",
                   help="also probe three channel uses (slower)")

    sub.add_parser("export-channel", parents=[chan, common],
                   help="write the channel-spec JSON")
    return parser


def resolve_channel(args, parser):
    if args.channel == "transpose-depolarizing":
        if args.dim is None:
            parser.error("--dim is required with --channel transpose-depolarizing")
        return build_transpose_depolarizing(args.dim)
    if args.dim is not None:
        parser.error(f"--dim is only valid with transpose-depolarizing, not {args.channel}")
    if args.channel == "phi-half":
        return build_isotropic("half")
    if args.channel == "phi-one":
        return build_isotropic("one", "cartesian")
    return build_isotropic("one", "magnetic")


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _scale_units(report, units):
    """Divide entropy-like fields by ln 2 and relabel *_nats -> *_bits."""
    if units == "nats":
        return report
    out = {}
    for key, value in report.items():
        if key.endswith("_nats"):
            out[key[:-5] + "_bits"] = value / LN2
        else:
            out[key] = value
    return out


def cmd_info(args, parser):
    ch = resolve_channel(args, parser)
    tp, unital = ch.completeness_residuals()
    report = {
        "label": ch.label,
        "dim": ch.dim,
        "kraus_operators": int(len(ch.kraus)),
        "backend": BACKEND,
        "trace_preserving_residual": tp,
        "unital_residual": unital,
    }
    from . import kernels
    report["choi_min_eigenvalue"] = float(kernels.eigvalsh(choi_matrix(ch))[0])
    if ch.generators is not None:
        report["covariance_residual"] = check_covariance(ch, samples=100, seed=args.seed)
    if args.format == "json":
        _write(json_text(report), args.output)
    else:
        lines = [f"{k}: {v if not isinstance(v, float) else fmt(v)}"
                 for k, v in report.items()]
        _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_min_entropy(args, parser):
    ch = resolve_channel(args, parser)
    report = min_output_entropy(ch, restarts=args.restarts, tol=args.tol,
                                seed=args.seed)
    payload = _scale_units(report.to_dict(), args.units)
    if args.format == "json":
        _write(json_text(payload), args.output)
    else:
        key = "min_entropy_nats" if args.units == "nats" else "min_entropy_bits"
        _write(f"{ch.label} {key} {fmt(payload[key])}\n", args.output)
    return 0


def cmd_capacity(args, parser):
    ch = resolve_channel(args, parser)
    report = min_output_entropy(ch, restarts=args.restarts, tol=args.tol,
                                seed=args.seed)
    chi = holevo_covariant(ch, report, seed=args.seed)
    payload = _scale_units({
        "channel": ch.label,
        "dim": ch.dim,
        "chi_nats": chi,
        "min_entropy_nats": report.min_entropy,
        "seed": args.seed,
        "restarts": args.restarts,
    }, args.units)
    if args.format == "json":
        _write(json_text(payload), args.output)
    else:
        key = "chi_nats" if args.units == "nats" else "chi_bits"
        _write(f"{ch.label} {key} {fmt(payload[key])}\n", args.output)
    return 0


def cmd_curve(args, parser):
    if args.grid < 3:
        parser.error("--grid must be >= 3")
    points = entropy_curve(grid=args.grid)
    if args.format == "csv":
        _write(curve_csv(points, units=args.units), args.output)
    else:
        scale = 1.0 if args.units == "nats" else 1.0 / LN2
        key = f"entropy_{args.units}"
        payload = [
            {"lambda1": p.lambda1,
             "eigenvalues": list(p.eigenvalues),
             key: p.entropy_nats * scale}
            for p in points
        ]
        _write(json_text(payload), args.output)
    return 0


def cmd_verify(args, parser):
    results = verify_mod.run_all(seed=args.seed, include_threefold=args.three_fold)
    if args.format == "json":
        _write(json_text(verify_mod.report_dicts(results)), args.output)
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"[{status}] {r.name} residual={fmt(r.residual)} tol={fmt(r.tolerance)}"
            if r.details:
                line += f" ({r.details})"
            lines.append(line)
        npass = sum(r.passed for r in results)
        lines.append(f"{npass}/{len(results)} checks passed")
        _write("\n".join(lines) + "\n", args.output)
    return 0 if all(r.passed for r in results) else 1


def cmd_export_channel(args, parser):
    ch = resolve_channel(args, parser)
    _write(json_text(channel_to_dict(ch)), args.output)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "info": cmd_info,
        "min-entropy": cmd_min_entropy,
        "capacity": cmd_capacity,
        "curve": cmd_curve,
        "verify": cmd_verify,
        "export-channel": cmd_export_channel,
    }
    try:
        return handlers[args.command](args, parser)
    except SpinChanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
