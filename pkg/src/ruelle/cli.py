"""``rl``: command-line front end for transfer-operator analyses.

Data goes to stdout as JSON (or CSV for grids); diagnostics go to stderr.
Exit codes: 0 success, 1 analysis error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import config
from .biortho import biorthogonality_verdict, orthogonality_verdict
from .cascade import h_cross_approx
from .laurent import LaurentPoly
from .sampling import elemprop_suite
from .stretched_haar import continuous_eigenbasis, doubling_cycles, stretched_haar_filter
from .transfer import Filter, InvarianceError, SpectrumError, fixed_space, lawton_matrix, spectrum


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class FilterSpec:
    """Where a filter comes from: a preset name, a JSON file, or inline coefficients."""

    preset: str | None = None
    path: str | None = None
    inline: str | None = None
    N: int = 2
    min_deg: int = 0

    def __post_init__(self):
        if sum(x is not None for x in (self.preset, self.path, self.inline)) != 1:
            raise UsageError("exactly one filter source must be given")

    @classmethod
    def from_arg(cls, text: str, N: int = 2, min_deg: int = 0) -> "FilterSpec":
        t = text.strip()
        if t == "haar" or t.startswith("stretched:"):
            return cls(preset=t, N=N, min_deg=min_deg)
        if t.startswith("[") or _looks_numeric(t):
            return cls(inline=t, N=N, min_deg=min_deg)
        return cls(path=t, N=N, min_deg=min_deg)


def _looks_numeric(t: str) -> bool:
    try:
        [complex(x.replace(" ", "")) for x in t.split(",")]
    except ValueError:
        return False
    return True


def parse_filter(spec: FilterSpec) -> Filter:
    """Build a :class:`Filter`; malformed input raises :class:`UsageError`."""
    try:
        if spec.preset is not None:
            if spec.preset == "haar":
                return stretched_haar_filter(1)
            p_text = spec.preset.split(":", 1)[1]
            try:
                p = int(p_text)
            except ValueError:
                raise UsageError(f"bad stretched preset {spec.preset!r}") from None
            return stretched_haar_filter(p)
        if spec.path is not None:
            if not os.path.exists(spec.path):
                raise UsageError(f"no such filter file or preset: {spec.path!r}")
            with open(spec.path) as fh:
                obj = json.load(fh)
            return Filter.from_json_obj(obj)
        coeffs = _parse_inline(spec.inline)
        return Filter(LaurentPoly(spec.min_deg, coeffs), spec.N)
    except UsageError:
        raise
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"invalid filter: {exc}") from exc


def _parse_inline(text: str) -> list[complex]:
    if text.startswith("["):
        items = json.loads(text)
        out = []
        for it in items:
            if isinstance(it, list):
                re, im = it
                out.append(complex(float(re), float(im)))
            else:
                out.append(complex(float(it)))
        return out
    return [complex(x.replace(" ", "")) for x in text.split(",")]


def _num(z: complex, digits: int = 12):
    """JSON-friendly rounding: a float for real values, ``[re, im]`` otherwise."""
    z = complex(z)
    re = round(z.real, digits) + 0.0
    im = round(z.imag, digits) + 0.0
    return re if im == 0.0 else [re, im]


def _filters(args) -> tuple[Filter, Filter]:
    f1 = parse_filter(FilterSpec.from_arg(args.filter, args.N, args.min_deg))
    f2 = f1 if args.filter2 is None else parse_filter(
        FilterSpec.from_arg(args.filter2, args.N, args.min_deg))
    if f1.N != f2.N:
        raise UsageError(f"filters have different scales {f1.N} and {f2.N}")
    return f1, f2


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_verdict(args) -> int:
    f1, f2 = _filters(args)
    if args.filter2 is None:
        report = orthogonality_verdict(f1, args.tol)
    else:
        report = biorthogonality_verdict(f1, f2, args.tol)
    _emit(report.to_json_obj())
    return 0


def cmd_spectrum(args) -> int:
    f1, f2 = _filters(args)
    M = lawton_matrix(f1, f2)
    vals = spectrum(M)
    if args.format == "csv":
        sys.stdout.write("re,im\n")
        for v in vals:
            sys.stdout.write(f"{v.real!r},{v.imag!r}\n")
    else:
        _emit({"N": M.N, "d": M.d, "eigenvalues": [_num(v) for v in vals]})
    return 0


def cmd_fixedspace(args) -> int:
    f1, f2 = _filters(args)
    M = lawton_matrix(f1, f2)
    _emit(fixed_space(M, complex(args.eigenvalue), args.tol).to_json_obj())
    return 0


def cmd_cycles(args) -> int:
    _emit(doubling_cycles(_check_p(args.p)).to_json_obj())
    return 0


def cmd_eigenbasis(args) -> int:
    p = _check_p(args.p)
    _emit({"p": p, "basis": [b.to_json_obj() for b in continuous_eigenbasis(p)]})
    return 0


def cmd_cascade(args) -> int:
    f1, f2 = _filters(args)
    g = h_cross_approx(f1, f2, n=args.n, K=args.K, size=args.grid)
    if args.format == "json":
        _emit({"domain_start": g.domain_start, "step": g.step,
               "values": [[float(v.real), float(v.imag)] for v in g.values]})
    else:
        sys.stdout.write(g.to_csv())
    return 0


def cmd_elemprop(args) -> int:
    results = elemprop_suite(args.seed, args.count, args.tol)
    failures = [{"index": i, "failed": rep.failures} for i, (_, rep) in enumerate(results)
                if not rep.ok]
    worst = max(max(r.integral_identity, r.pairing_identity, r.module_identity,
                    r.iterate_identity) for _, r in results) if results else 0.0
    _emit({"seed": args.seed, "count": args.count, "tol": args.tol,
           "passed": args.count - len(failures), "max_residual": worst,
           "failures": failures})
    return 0 if not failures else 1


def cmd_export(args) -> int:
    f1 = parse_filter(FilterSpec.from_arg(args.filter, args.N, args.min_deg))
    text = json.dumps(f1.to_json_obj()) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_config(args) -> int:
    _emit(config.effective_defaults())
    return 0


def _check_p(p: int) -> int:
    if p < 1 or p % 2 == 0:
        raise UsageError(f"--p must be a positive odd integer, got {p}")
    return p


def build_parser() -> argparse.ArgumentParser:
    try:
        tol_default = config.default_tol()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    D = config.DEFAULTS
    fmt = argparse.ArgumentDefaultsHelpFormatter
    epilog = ("numeric defaults: tol=%g (env %s), n=%d, K=%d, grid=%d, floor_eps=%g"
              % (tol_default, config.ENV_TOL, D["n"], D["K"], D["grid"], D["floor_eps"]))

    parser = argparse.ArgumentParser(
        prog="rl", description="Spectral analysis of wavelet transfer operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def filter_args(sp, second=True):
        sp.add_argument("--filter", required=True,
                        help="'haar', 'stretched:<p>', a JSON file, or inline coefficients")
        if second:
            sp.add_argument("--filter2", default=None,
                            help="dual filter (defaults to --filter)")
        sp.add_argument("--N", type=int, default=2, help="scale for inline filters")
        sp.add_argument("--min-deg", type=int, default=0,
                        help="lowest exponent for inline filters")

    def tol_arg(sp, default=tol_default):
        sp.add_argument("--tol", type=float, default=default,
                        help=f"tolerance (env {config.ENV_TOL} overrides the default)")

    sp = sub.add_parser("verdict", formatter_class=fmt, epilog=epilog,
                        help="orthogonality (one filter) or biorthogonality (two) report")
    filter_args(sp)
    tol_arg(sp)
    sp.set_defaults(func=cmd_verdict)

    sp = sub.add_parser("spectrum", formatter_class=fmt, epilog=epilog, help="eigenvalues of the transfer matrix")
    filter_args(sp)
    sp.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("fixedspace", formatter_class=fmt, epilog=epilog, help="eigenspace basis")
    filter_args(sp)
    tol_arg(sp)
    sp.add_argument("--eigenvalue", type=complex, default=1.0)
    sp.set_defaults(func=cmd_fixedspace)

    sp = sub.add_parser("cycles", formatter_class=fmt, epilog=epilog, help="orbits of k -> 2k mod p")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_cycles)

    sp = sub.add_parser("eigenbasis", formatter_class=fmt, epilog=epilog,
                        help="cycle eigenfunctions of the stretched Haar filter")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_eigenbasis)

    sp = sub.add_parser("cascade", formatter_class=fmt, epilog=epilog,
                        help="grid of the periodized cross product of scaling transforms")
    filter_args(sp)
    sp.add_argument("--n", type=int, default=D["n"], metavar="TERMS",
                    help="partial-product terms")
    sp.add_argument("--K", type=int, default=D["K"], help="periodization terms per side")
    sp.add_argument("--grid", type=int, default=D["grid"], help="samples on [0, 2pi)")
    sp.add_argument("--format", choices=["json", "csv"], default="csv", help="output format")
    sp.set_defaults(func=cmd_cascade)

    sp = sub.add_parser("elemprop", formatter_class=fmt, epilog=epilog,
                        help="randomized check of the elementary operator identities")
    sp.add_argument("--seed", type=int, default=D["seed"])
    sp.add_argument("--count", type=int, default=100)
    tol_arg(sp, 1e-11)
    sp.set_defaults(func=cmd_elemprop)

    sp = sub.add_parser("export", formatter_class=fmt, epilog=epilog, help="write a filter as JSON")
    filter_args(sp, second=False)
    sp.add_argument("--out", default=None, help="output file (stdout if omitted)")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("config", formatter_class=fmt, epilog=epilog, help="print the numeric defaults")
    sp.set_defaults(func=cmd_config)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if getattr(args, "tol", 1.0) <= 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code) if isinstance(exc.code, int) else 2
    except UsageError as exc:
        print(f"rl: usage error: {exc}", file=sys.stderr)
        return 2
    except (InvarianceError, SpectrumError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"rl: analysis error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
