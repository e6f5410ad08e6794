"""Command line entry point: ``nfres {delta,sweep,check,bench}``.

Exit codes: 0 success, 1 usage or validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bench as _bench
from .array_model import ArrayConfig, UserLocation
from .experiment import PRESETS, emit_csv, emit_plot_script, load_spec_file, preset, run_sweep
from .regime import DELTA_HI, DELTA_LO, classify
from .resolution import Method, compute_delta

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--M", type=int, default=0, help="vertical half-extent (default 0, ULA)")
    p.add_argument("--N", type=int, required=True, help="horizontal half-extent")
    p.add_argument("--lambda", dest="lam", type=float, default=0.01, help="wavelength [m]")
    p.add_argument("--d", type=float, default=None, help="element spacing [m], default lambda/2")
    for i in (1, 2):
        p.add_argument(f"--r{i}", type=float, required=True, help=f"range of user {i} [m]")
        p.add_argument(f"--theta{i}", type=float, default=math.pi / 2, help="[rad]")
        p.add_argument(f"--phi{i}", type=float, default=math.pi / 2, help="[rad]")


def _pair(args):
    cfg = ArrayConfig(args.M, args.N, args.lam, args.d)
    u1 = UserLocation(args.r1, args.theta1, args.phi1)
    u2 = UserLocation(args.r2, args.theta2, args.phi2)
    return cfg, u1, u2


def _cmd_delta(args) -> int:
    cfg, u1, u2 = _pair(args)
    res = compute_delta(cfg, u1, u2, args.method)
    print(f"delta={res.delta!r}")
    print(f"method={res.method.value}")
    print(f"warnings={','.join(res.warnings)}")
    return EXIT_OK


def _cmd_check(args) -> int:
    cfg, u1, u2 = _pair(args)
    rep = classify(cfg, u1, u2, args.lo, args.hi)
    bound = "n/a" if rep.remark1_bound is None else repr(rep.remark1_bound)
    print(f"delta={rep.delta!r}")
    print(f"classification={rep.classification.value}")
    print(f"angle_domain_bound={bound}")
    print(f"distance_threshold_m={rep.distance_threshold_m!r}")
    print(f"threshold_margin_m={rep.threshold_margin_m!r}")
    print(f"beta={rep.beta!r}")
    print(f"beta_threshold={rep.beta_threshold!r}")
    print(f"beta_threshold_reachable={str(rep.beta_threshold_reachable).lower()}")
    print(f"equal_angles={str(rep.equal_angles).lower()}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.spec:
        if args.theta is not None or args.phi is not None:
            raise ValueError("--theta/--phi apply to presets only; set angles in the spec file")
        spec = load_spec_file(args.spec)
    else:
        kw = {}
        if args.theta is not None:
            kw["theta"] = args.theta
        if args.phi is not None:
            kw["phi"] = args.phi
        if args.N is not None:
            kw["N"] = args.N
        spec = preset(args.preset, **kw)
    out = args.out or spec.output_path or f"{spec.name}.csv"
    rows = run_sweep(spec, workers=args.workers)
    csv_path = emit_csv(rows, spec, out)
    script = emit_plot_script(spec, csv_path)
    print(f"wrote {csv_path} ({len(rows)} rows)")
    print(f"wrote {script}")
    return EXIT_OK


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "x" in tok:
            m, n = tok.split("x", 1)
            sizes.append((int(m), int(n)))
        else:
            sizes.append((int(tok), int(tok)))
    if not sizes:
        raise ValueError("--sizes is empty")
    return sizes


def _cmd_bench(args) -> int:
    rows = _bench.bench(_parse_sizes(args.sizes), reps=args.reps, seed=args.seed)
    print(_bench.format_table(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nfres", description="Resolution of near-field beamforming.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("delta", help="resolution of one user pair")
    _add_pair_args(p)
    p.add_argument("--method", default="closed_form",
                   choices=[m.value for m in Method] + ["ula"])
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("check", help="regime report for one user pair")
    _add_pair_args(p)
    p.add_argument("--lo", type=float, default=DELTA_LO, help="near-orthogonal cutoff")
    p.add_argument("--hi", type=float, default=DELTA_HI, help="near-degenerate cutoff")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("sweep", help="run a preset or a spec-file sweep")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESETS)
    src.add_argument("--spec", help="key = value spec file")
    p.add_argument("--out", help="CSV path (default <name>.csv)")
    p.add_argument("--theta", type=float, default=None, help="common azimuth [rad], default pi/2")
    p.add_argument("--phi", type=float, default=None, help="common elevation [rad], default pi/2")
    p.add_argument("--N", type=int, default=None, help="override N for presets (default 128)")
    p.add_argument("--workers", type=int, default=1, help="parallel processes")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bench", help="closed form vs oracle timings")
    p.add_argument("--sizes", default="64,128,256,512",
                   help="comma list of K (M=N=K) or MxN")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"nfres: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, IndexError) as exc:
        print(f"nfres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
