"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 data error (invalid parameters,
symbols outside the alphabet, missing files, numeric faults).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, calibrate, codec36
from .errors import CipherError
from .keystream import (
    GeneratorParams,
    Mode,
    derive_subkey,
    generate,
    keystream_to_bytes,
    keystream_to_text,
)
from .session import run_loopback_demo

DEFAULTS = {
    "key": "4",
    "timestamps": "1..6",
    "nonce": "2..21",
    "seed": "4",
    "mode": "canonical",
    "modulus": "35",
    "u": "3",
    "u1": "2",
}

_CONFIG_KEYS = set(DEFAULTS)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def parse_int_list(spec: str) -> list[int]:
    """Parse "1,2,3" and "2..21" forms, mixed freely."""
    values = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            raise UsageError(f"empty element in list {spec!r}")
        if ".." in token:
            lo_text, _, hi_text = token.partition("..")
            try:
                lo, hi = int(lo_text), int(hi_text)
            except ValueError:
                raise UsageError(f"bad range {token!r}") from None
            if hi < lo:
                raise UsageError(f"descending range {token!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(token))
            except ValueError:
                raise UsageError(f"bad integer {token!r}") from None
    return values


def load_config(path: str) -> dict[str, str]:
    """Read a line-oriented key=value file; '#' starts a comment."""
    settings = {}
    text = Path(path).read_text(encoding="ascii")
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line.strip()!r}")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown setting {key!r}")
        settings[key] = value
    return settings


def add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="key=value settings file")
    parser.add_argument("--key", type=int, help="generator key (positive integer)")
    parser.add_argument("--timestamps", metavar="LIST", help="e.g. 1..6 or 1,2,5")
    parser.add_argument("--nonce", metavar="LIST", help="e.g. 2..21 (elements >= 2)")
    parser.add_argument("--seed", type=int, help="seed value feeding the start state")
    parser.add_argument("--mode", choices=["canonical", "literal"])
    parser.add_argument("--u", type=int, help="literal-mode numerator input")
    parser.add_argument("--u1", type=int, help="literal-mode denominator input")
    parser.add_argument("--modulus", type=int, help="output modulus (default 35)")


def build_params(args: argparse.Namespace) -> GeneratorParams:
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(load_config(args.config))
    overrides = {
        "key": args.key,
        "timestamps": args.timestamps,
        "nonce": args.nonce,
        "seed": args.seed,
        "mode": args.mode,
        "modulus": args.modulus,
        "u": args.u,
        "u1": args.u1,
    }
    for key, value in overrides.items():
        if value is not None:
            settings[key] = str(value)
    return GeneratorParams(
        key_r=int(settings["key"]),
        timestamps=parse_int_list(settings["timestamps"]),
        nonce=parse_int_list(settings["nonce"]),
        seed_t1=int(settings["seed"]),
        modulus=int(settings["modulus"]),
        mode=Mode(settings["mode"]),
        literal_u=int(settings["u"]),
        literal_u1=int(settings["u1"]),
    )


def _read_text_arg(args: argparse.Namespace) -> str:
    if args.text is not None:
        return args.text
    return sys.stdin.read().strip()


def cmd_keystream(args) -> int:
    params = build_params(args)
    stream = generate(params) if args.length is None else derive_subkey(params, args.length)
    if args.format == "binary":
        sys.stdout.buffer.write(keystream_to_bytes(stream))
    else:
        print(keystream_to_text(stream))
    return 0


def cmd_encrypt(args) -> int:
    params = build_params(args)
    text = _read_text_arg(args)
    values = codec36.text_to_values(text)
    subkey = derive_subkey(params, len(values))
    cipher = codec36.encrypt(values, subkey)
    print(keystream_to_text(cipher) if args.values else codec36.values_to_text(cipher))
    return 0


def cmd_decrypt(args) -> int:
    params = build_params(args)
    text = _read_text_arg(args)
    values = codec36.text_to_values(text)
    subkey = derive_subkey(params, len(values))
    plain = codec36.decrypt(values, subkey)
    print(keystream_to_text(plain) if args.values else codec36.values_to_text(plain))
    return 0


def _parse_grid(spec: str, params: GeneratorParams) -> list[GeneratorParams]:
    """Each grid point is TSxNONCE, the list lengths to time."""
    from dataclasses import replace

    points = []
    for token in spec.split(","):
        ts_text, sep, nonce_text = token.strip().lower().partition("x")
        if not sep:
            raise UsageError(f"bad grid point {token!r}, expected TSxNONCE")
        try:
            ts_len, nonce_len = int(ts_text), int(nonce_text)
        except ValueError:
            raise UsageError(f"bad grid point {token!r}") from None
        if ts_len < 1 or nonce_len < 1:
            raise UsageError(f"grid point {token!r} must be positive")
        points.append(
            replace(
                params,
                timestamps=tuple(range(1, ts_len + 1)),
                nonce=tuple(range(2, nonce_len + 2)),
            )
        )
    return points


def cmd_analyze(args) -> int:
    params = build_params(args)
    lags = parse_int_list(args.lag)
    grid = _parse_grid(args.grid, params) if args.grid else []
    report = analysis.build_report(params, lags=lags, grid=grid)
    print(analysis.report_text(report))
    print()
    print(analysis.report_keyvalues(report))
    if args.outdir:
        from . import figures

        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "report.kv").write_text(analysis.report_keyvalues(report) + "\n", "ascii")
        written = [str(outdir / "report.kv")]
        written.append(figures.save_histogram_figure(report, outdir / "histogram.png"))
        stream = generate(params)
        for lag in sorted(report.serial):
            written.append(
                figures.save_serial_figure(stream, lag, outdir / f"serial_lag{lag}.png")
            )
        if report.timing:
            written.append(figures.save_timing_figure(report, outdir / "timing.png"))
        print()
        for path in written:
            print(f"wrote {path}")
    return 0


def cmd_calibrate(args) -> int:
    if args.fixture:
        path = Path(args.fixture)
        if not path.exists():
            raise CipherError(f"fixture file not found: {path}")
        fixture_text = path.read_text("ascii")
    else:
        fixture_text = calibrate.default_fixture_text()
    fixture_values = calibrate.normalize_fixture(fixture_text)
    if not fixture_values:
        raise CipherError("fixture contains no values")
    params = build_params(args)
    results = calibrate.run_sweep(fixture_values, params)
    rendered = calibrate.render_sweep(results, len(fixture_values))
    print(rendered)
    if args.outdir:
        from . import figures

        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "calibration.txt").write_text(rendered + "\n", "ascii")
        figures.save_calibration_figure(results, outdir / "calibration.png")
        print()
        print(f"wrote {outdir / 'calibration.txt'}")
        print(f"wrote {outdir / 'calibration.png'}")
    return 0


def cmd_session_demo(args) -> int:
    params = build_params(args)
    initiator_lines, responder_lines = run_loopback_demo(
        params.key_r, params, [args.message], corrupt_nonce=args.corrupt_nonce
    )
    for line in initiator_lines:
        print(f"initiator | {line}")
    for line in responder_lines:
        print(f"responder | {line}")
    return 0


def make_parser() -> _Parser:
    parser = _Parser(prog="tfcipher", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keystream", help="derive and print a keystream")
    add_param_flags(p)
    p.add_argument("--length", type=int, help="truncate or cycle to this many values")
    p.add_argument("--format", choices=["text", "binary"], default="text")
    p.set_defaults(func=cmd_keystream)

    p = sub.add_parser("encrypt", help="encrypt alphabet text with the derived subkey")
    add_param_flags(p)
    p.add_argument("text", nargs="?", help="plaintext; read from stdin when omitted")
    p.add_argument("--values", action="store_true", help="print decimal values, not characters")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt alphabet text with the derived subkey")
    add_param_flags(p)
    p.add_argument("text", nargs="?", help="ciphertext; read from stdin when omitted")
    p.add_argument("--values", action="store_true", help="print decimal values, not characters")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="measure stream quality and print a report")
    add_param_flags(p)
    p.add_argument("--lag", default="1", metavar="LIST", help="serial-correlation lags")
    p.add_argument("--grid", metavar="PTS", help="timing grid, e.g. 5x400,5x800,5x1600")
    p.add_argument("--outdir", metavar="DIR", help="also write report.kv and figures here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("calibrate", help="sweep generator variants against the fixture")
    add_param_flags(p)
    p.add_argument("--fixture", metavar="FILE", help="override the packaged reference sequence")
    p.add_argument("--outdir", metavar="DIR", help="also write the table and figure here")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("session-demo", help="run the two-party handshake over loopback")
    add_param_flags(p)
    p.add_argument("--message", default="asks", help="alphabet text to exchange")
    p.add_argument(
        "--corrupt-nonce", action="store_true", help="corrupt the ACK echo to show the ERR path"
    )
    p.set_defaults(func=cmd_session_demo)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tfcipher: error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"tfcipher: error: {exc}", file=sys.stderr)
        return 2
    except CipherError as exc:
        print(f"tfcipher: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
