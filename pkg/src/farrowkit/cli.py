"""Command-line front end.

Subcommands
-----------
coeffs       segment coefficients for explicit sample windows (CSV rows)
design-diff  differentiator taps (CSV, one tap per line)
delay        fractional-delay a signal file by mu samples
resample     rational P/Q rate conversion of a signal file
analyze      impulse/frequency/group-delay reports (CSV + PNG)
bench        the full four-kind comparison matrix (one CSV+PNG per figure)

Exit codes: 0 success, 2 usage (argparse), 3 invalid configuration value,
4 unreadable input file, 5 malformed signal data.  Relative output paths
can be redirected with the FARROWKIT_OUTPUT_DIR environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import analysis, plots
from .differentiators import (
    DEFAULT_PASSBAND_EDGE,
    DifferentiatorSpec,
    design_differentiator,
)
from .engine import FarrowResampler, ResamplerConfig
from .signal_io import SignalFormatError, read_signal, write_signal
from .splines import (
    InterpolatorKind,
    SampleWindow,
    segment_coeffs,
    solve_constraint_system,
)

EXIT_OK = 0
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_FORMAT = 5

_KINDS = {k.value: k for k in InterpolatorKind}

BENCH_MU_SWEEP = (0.1, 0.25, 0.5, 0.75, 0.9)


def _parse_kind(text: str) -> InterpolatorKind:
    try:
        return _KINDS[text.lower()]
    except KeyError:
        raise ValueError(
            f"unknown kind {text!r}; choose from {', '.join(_KINDS)}"
        ) from None


def _parse_ratio(text: str) -> tuple[int, int]:
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError(f"ratio must be written P/Q, got {text!r}")
    try:
        p, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"ratio terms must be integers, got {text!r}") from None
    if p <= 0 or q <= 0:
        raise ValueError(f"ratio terms must be positive, got {text!r}")
    return p, q


def _out_path(path: str) -> str:
    base = os.environ.get("FARROWKIT_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _parse_window(text: str, kind: InterpolatorKind) -> SampleWindow:
    vals = [float(v) for v in text.split(",") if v.strip() != ""]
    if len(vals) > 8:
        raise ValueError(f"window takes at most 8 values, got {len(vals)}")
    vals += [0.0] * (8 - len(vals))
    return SampleWindow(*vals)


def _cmd_coeffs(args: argparse.Namespace) -> int:
    kind = _parse_kind(args.kind)
    windows: list[SampleWindow] = []
    if args.window:
        windows.extend(_parse_window(w, kind) for w in args.window)
    if args.input:
        for line in open(args.input, "r", encoding="ascii"):
            if line.strip():
                windows.append(_parse_window(line, kind))
    if not windows:
        raise ValueError("no windows given; use --window and/or --input")
    rows = []
    for w in windows:
        c = solve_constraint_system(kind, w) if args.via_solve else segment_coeffs(kind, w)
        rows.append(",".join(repr(v) for v in c.a))
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(_out_path(args.out), "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_design_diff(args: argparse.Namespace) -> int:
    filt = design_differentiator(
        DifferentiatorSpec(args.order, args.degree, args.passband)
    )
    text = "\n".join(repr(float(v)) for v in filt.taps) + "\n"
    if args.out:
        with open(_out_path(args.out), "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _make_engine(args: argparse.Namespace, **mode) -> FarrowResampler:
    cfg = ResamplerConfig(
        kind=_parse_kind(args.kind),
        diff_order=args.diff_order,
        diff2_order=args.diff2_order,
        **mode,
    )
    return FarrowResampler(cfg)


def _run_stream(args: argparse.Namespace, eng: FarrowResampler) -> int:
    x = read_signal(args.input, args.input_format)
    values, transient = eng.process(x)
    if not args.keep_transient:
        values = values[~transient]
    write_signal(values, _out_path(args.output), args.output_format)
    return EXIT_OK


def _cmd_delay(args: argparse.Namespace) -> int:
    eng = _make_engine(args, mu=args.mu)
    return _run_stream(args, eng)


def _cmd_resample(args: argparse.Namespace) -> int:
    eng = _make_engine(args, ratio=_parse_ratio(args.ratio))
    return _run_stream(args, eng)


def _write_csv(path: str, header: list[str], columns: list[np.ndarray]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _cmd_analyze(args: argparse.Namespace) -> int:
    kind = _parse_kind(args.kind)
    out = _out_path(args.out)
    fig_path = os.path.splitext(out)[0] + ".png"
    label = kind.value

    if args.mu is not None:
        s = analysis.group_delay(kind, args.diff_order, args.mu, nfft=args.nfft)
        _write_csv(out, ["freq_fd", "mag_db", "group_delay"],
                   [s.freq_fd, s.magnitude_db, s.group_delay])
        if not args.no_figure:
            plots.render_group_delay_figure({f"{label} mu={args.mu}": s}, fig_path)
        return EXIT_OK

    h = analysis.impulse_response(
        kind, args.diff_order, args.oversample, args.diff2_order
    )
    if args.impulse:
        t = (np.arange(len(h.samples)) - h.origin) / h.oversample
        _write_csv(out, ["t", "h"], [t, h.samples])
        if not args.no_figure:
            plots.render_impulse_figure({label: h}, fig_path)
        return EXIT_OK

    s = analysis.frequency_response(h, args.nfft)
    _write_csv(out, ["freq_fd", "mag_db", "group_delay"],
               [s.freq_fd, s.magnitude_db, s.group_delay])
    if not args.no_figure:
        plots.render_spectrum_figure({label: s}, fig_path)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    out_dir = _out_path(args.out_dir)
    os.makedirs(out_dir, exist_ok=True)
    kinds = list(InterpolatorKind)

    responses = {
        k.value: analysis.impulse_response(k, args.diff_order, args.oversample)
        for k in kinds
    }
    spectra = {
        label: analysis.frequency_response(h, args.nfft)
        for label, h in responses.items()
    }

    # impulse comparison: shared time axis over +-4 input samples
    ref = responses[kinds[0].value]
    t = (np.arange(len(ref.samples)) - ref.origin) / ref.oversample
    keep = np.abs(t) <= 4.0
    cols = [t[keep]]
    header = ["t"]
    for label, h in responses.items():
        th = (np.arange(len(h.samples)) - h.origin) / h.oversample
        cols.append(np.interp(t[keep], th, h.samples))
        header.append(label)
    _write_csv(os.path.join(out_dir, "impulse.csv"), header, cols)
    plots.render_impulse_figure(responses, os.path.join(out_dir, "impulse.png"))

    ref_s = spectra[kinds[0].value]
    header = ["freq_fd"] + [label for label in spectra]
    cols = [ref_s.freq_fd] + [s.magnitude_db for s in spectra.values()]
    _write_csv(os.path.join(out_dir, "frequency.csv"), header, cols)
    plots.render_spectrum_figure(spectra, os.path.join(out_dir, "frequency.png"))

    delays: dict[str, analysis.SpectrumAnalysis] = {}
    for k in (InterpolatorKind.LP3, InterpolatorKind.HS3):
        for mu in BENCH_MU_SWEEP:
            delays[f"{k.value} mu={mu}"] = analysis.group_delay(
                k, args.gd_diff_order, mu, nfft=args.nfft
            )
    first = next(iter(delays.values()))
    header = ["freq_fd"] + list(delays)
    cols = [first.freq_fd] + [d.group_delay for d in delays.values()]
    _write_csv(os.path.join(out_dir, "group_delay.csv"), header, cols)
    plots.render_group_delay_figure(delays, os.path.join(out_dir, "group_delay.png"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="farrowkit",
        description="Farrow-structure resampling and response analysis.",
        epilog=(
            "exit codes: 0 ok, 2 usage, 3 invalid configuration, "
            "4 unreadable file, 5 malformed signal data"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_engine_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--kind", required=True, help="lp3 | hs3 | hs5 | hs7")
        p.add_argument("--diff-order", type=int, default=32,
                       help="first-derivative FIR order (even)")
        p.add_argument("--diff2-order", type=int, default=None,
                       help="second-derivative FIR order (hs7; defaults to --diff-order)")

    def add_stream_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="input signal file")
        p.add_argument("output", help="output signal file")
        p.add_argument("--input-format", choices=("f64", "csv", "wav16", "wav32"),
                       default=None, help="override format inferred from extension")
        p.add_argument("--output-format", choices=("f64", "csv", "wav16", "wav32"),
                       default=None)
        p.add_argument("--keep-transient", action="store_true",
                       help="keep outputs emitted before the pipeline filled")

    p = sub.add_parser("coeffs", help="segment coefficients for sample windows")
    p.add_argument("--kind", required=True)
    p.add_argument("--window", action="append", default=[],
                   help="comma-separated s_n,s_nm1,s_nm2,s_nm3[,d1_nm1,d1_nm2"
                        "[,d2_nm1,d2_nm2]]; repeatable")
    p.add_argument("--input", default=None, help="CSV file of windows, one per line")
    p.add_argument("--via-solve", action="store_true",
                   help="use the constraint-system solver instead of the closed form")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("design-diff", help="design a differentiator FIR")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, default=1, choices=(1, 2))
    p.add_argument("--passband", type=float, default=DEFAULT_PASSBAND_EDGE,
                   help="matched band edge as a fraction of Nyquist")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=_cmd_design_diff)

    p = sub.add_parser("delay", help="fractional-delay a signal file")
    p.add_argument("--mu", type=float, required=True, help="fractional delay in [0, 1)")
    add_engine_flags(p)
    add_stream_flags(p)
    p.set_defaults(func=_cmd_delay)

    p = sub.add_parser("resample", help="rational P/Q rate conversion")
    p.add_argument("--ratio", required=True, help="P/Q, e.g. 160/147")
    add_engine_flags(p)
    add_stream_flags(p)
    p.set_defaults(func=_cmd_resample)

    p = sub.add_parser("analyze", help="impulse/frequency/group-delay reports")
    add_engine_flags(p)
    p.add_argument("--oversample", type=int, default=8, help="interpolation factor P")
    p.add_argument("--nfft", type=int, default=8192)
    p.add_argument("--impulse", action="store_true",
                   help="emit t,h rows instead of the spectrum")
    p.add_argument("--mu", type=float, default=None,
                   help="analyze the fractional-delay system at this mu instead")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--no-figure", action="store_true",
                   help="skip the PNG companion figure")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bench", help="full comparison matrix across kinds")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--diff-order", type=int, default=32)
    p.add_argument("--gd-diff-order", type=int, default=48,
                   help="differentiator order for the group-delay figure")
    p.add_argument("--oversample", type=int, default=8)
    p.add_argument("--nfft", type=int, default=8192)
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SignalFormatError as exc:
        print(f"farrowkit: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        print(f"farrowkit: cannot read {exc.filename}", file=sys.stderr)
        return EXIT_IO
    except (IsADirectoryError, PermissionError, OSError) as exc:
        print(f"farrowkit: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"farrowkit: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
