"""Command-line front door: analyze symbols, draw spectral maps, run the
verification suite.

Orders and symbols are given as JSON, inline or as a path to a JSON file.
Payloads never contain timestamps, so identical configs give byte-identical
outputs.  Exit codes: 0 success, 1 verification failure, 2 config error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .fredholm import GridConfig, analyze
from .lattice import CountNotEnumerableError, DimensionMismatchError, OrderSpec
from .spectra import SpectralMap, spectral_picture
from .suite import SuiteReport, run_index_suite, run_spectrum_suite
from .symbols import SymbolExpr, symbol_from_json_dict
from .winding import OriginTooCloseError, StepTooCoarseError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


def _load_json_arg(text: str, what: str) -> dict:
    """Parse inline JSON, or read a JSON file when the argument is a path."""
    text = text.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise ConfigError(f"{what}: not inline JSON and no such file: {text}")
        text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"bad {what} JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ConfigError(f"{what} must be a JSON object")
    return obj


def _parse_order(text: str) -> OrderSpec:
    try:
        return OrderSpec.from_json_dict(_load_json_arg(text, "order"))
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"bad order spec: {e}") from e


def _parse_symbol(text: str) -> SymbolExpr:
    try:
        return symbol_from_json_dict(_load_json_arg(text, "symbol"))
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"bad symbol spec: {e}") from e


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    """Config file values override flags, with a warning per overridden flag."""
    if not args.config:
        return
    cfg = _load_json_arg(args.config, "config")
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ConfigError(f"unknown config key {key!r}")
        flag = "--" + attr.replace("_", "-")
        if any(a == flag or a.startswith(flag + "=") for a in argv):
            print(f"warning: config file overrides {flag}", file=sys.stderr)
        if attr in ("order", "symbol") and isinstance(value, dict):
            value = json.dumps(value)
        setattr(args, attr, value)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _grid_config(args: argparse.Namespace) -> GridConfig:
    return GridConfig(
        grid_per_axis=args.grid,
        samples_per_loop=args.loop_samples,
        min_modulus_tol=args.min_modulus_tol,
    )


def _components_csv(smap: SpectralMap) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "class", "index", "re", "im", "pixel_count"])
    for c in smap.components:
        rep = c.representative
        writer.writerow([
            c.id,
            c.classification,
            "" if c.index is None else c.index,
            "" if rep is None else repr(rep.real),
            "" if rep is None else repr(rep.imag),
            c.pixel_count,
        ])
    return buf.getvalue()


def _suite_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "prediction", "oracle_value", "pass"])
    for c in report.cases:
        writer.writerow([
            c.name,
            json.dumps(c.prediction, sort_keys=True),
            json.dumps(c.oracle_value, sort_keys=True),
            int(c.passed),
        ])
    return buf.getvalue()


def cmd_analyze(args: argparse.Namespace) -> int:
    order = _parse_order(args.order)
    phi = _parse_symbol(args.symbol)
    report = analyze(phi, order, _grid_config(args))
    payload = {"version": __version__, "report": report.to_json_dict()}
    _emit(payload, args.out)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    order = _parse_order(args.order)
    phi = _parse_symbol(args.symbol)
    smap = spectral_picture(
        phi,
        order,
        grid_per_axis=args.grid,
        resolution=args.resolution,
        fatten_px=args.fatten,
        config=_grid_config(args),
        threads=args.threads,
    )
    payload = {"version": __version__, "map": smap.to_json_dict()}

    json_path, ppm_path, csv_path, png_path = args.out, args.ppm, args.csv, args.png
    if args.out_prefix:
        prefix = Path(args.out_prefix)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        json_path = json_path or str(prefix) + ".json"
        ppm_path = ppm_path or str(prefix) + ".ppm"
        csv_path = csv_path or str(prefix) + ".csv"
        png_path = png_path or str(prefix) + ".png"
    _emit(payload, json_path)
    if ppm_path:
        Path(ppm_path).write_text(smap.to_ppm())
    if csv_path:
        Path(csv_path).write_text(_components_csv(smap))
    if png_path:
        from .plotting import save_spectral_figure

        save_spectral_figure(smap, png_path)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    order = _parse_order(args.order)
    config = _grid_config(args)
    reports: list[SuiteReport] = []
    if args.suite in ("index", "all"):
        reports.append(run_index_suite(order, seed=args.seed, n_cases=args.cases, config=config))
    if args.suite in ("spectrum", "all"):
        symbols = None
        if args.symbol:
            symbols = [_parse_symbol(args.symbol)]
        reports.append(
            run_spectrum_suite(
                order,
                symbols=symbols,
                seed=args.seed,
                resolution=args.resolution,
                config=config,
            )
        )
    merged = SuiteReport(
        cases=[c for r in reports for c in r.cases],
        seed=args.seed,
        config={
            "suite": args.suite,
            "sub_configs": [r.config for r in reports],
        },
    ).finalize()
    payload = {"version": __version__, "report": merged.to_json_dict()}

    json_path, csv_path, png_path = args.out, args.csv, args.png
    if args.out_prefix:
        prefix = Path(args.out_prefix)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        json_path = json_path or str(prefix) + ".json"
        csv_path = csv_path or str(prefix) + ".csv"
        png_path = png_path or str(prefix) + ".png"
    _emit(payload, json_path)
    if csv_path:
        Path(csv_path).write_text(_suite_csv(merged))
    if png_path:
        from .plotting import save_suite_figure

        save_suite_figure(merged, png_path)
    return EXIT_OK if merged.all_passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeplab",
        description="Fredholm indices and spectral pictures of Toeplitz "
        "operators over ordered torus duals",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, symbol_required: bool = True) -> None:
        p.add_argument("--order", required=True, help="order spec JSON or path")
        if symbol_required:
            p.add_argument("--symbol", required=True, help="symbol spec JSON or path")
        p.add_argument("--config", help="JSON config file; overrides flags")
        p.add_argument("--grid", type=int, default=None, help="grid points per axis")
        p.add_argument("--loop-samples", type=int, default=256,
                       help="initial samples per winding loop")
        p.add_argument("--min-modulus-tol", type=float, default=1e-6,
                       help="symbol invertibility cutoff")
        p.add_argument("--out", "--json", dest="out", default=None,
                       help="write JSON here instead of stdout")

    p_analyze = sub.add_parser("analyze", help="Fredholm report for one symbol")
    common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_spectrum = sub.add_parser("spectrum", help="classified spectral raster")
    common(p_spectrum)
    p_spectrum.add_argument("--resolution", type=int, default=512)
    p_spectrum.add_argument("--fatten", type=int, default=2, help="mask dilation in px")
    p_spectrum.add_argument("--threads", type=int, default=1)
    p_spectrum.add_argument("--ppm", default=None, help="write the P3 pixmap here")
    p_spectrum.add_argument("--csv", default=None, help="write the component table here")
    p_spectrum.add_argument("--png", default=None, help="write the matplotlib figure here")
    p_spectrum.add_argument("--out-prefix", default=None,
                            help="write .json/.ppm/.csv/.png under this prefix")
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_verify = sub.add_parser("verify", help="run the oracle suite")
    common(p_verify, symbol_required=False)
    p_verify.add_argument("--symbol", default=None,
                          help="optional symbol for the spectrum suite")
    p_verify.add_argument("--suite", choices=["index", "spectrum", "all"], default="all")
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.add_argument("--cases", type=int, default=20)
    p_verify.add_argument("--resolution", type=int, default=256)
    p_verify.add_argument("--csv", default=None, help="write the case table here")
    p_verify.add_argument("--png", default=None, help="write the summary figure here")
    p_verify.add_argument("--out-prefix", default=None,
                          help="write .json/.csv/.png under this prefix")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args, argv)
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DimensionMismatchError, CountNotEnumerableError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (OriginTooCloseError, StepTooCoarseError, ArithmeticError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
