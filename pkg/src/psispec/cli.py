"""Command-line pipeline: sample, spectrum, fit, reconstruct, analytic.

All commands write CSV (with ``#`` metadata comments) or JSON to ``--out``
(default standard output) at 17 significant digits, so identical
configurations produce byte-identical files.

Exit codes: 0 success; 2 usage or domain error; 3 data-format error;
4 I/O error.
"""

import functools
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from .errors import (
    DataFormatError,
    DegenerateInputError,
    DomainError,
    ResourceError,
)
from .powerlaw import DEFAULT_BAND, fit_power_law
from .prime_series import (
    FlucSeries,
    fluctuation_at,
    psi_series,
    smooth_part,
)
from .spectral import PowerSpectrum, ar_psd, burg_fit, remove_mean, welch_psd
from .zeta import analytic_spectrum, bundled_zeros_path, load_zeros, psi_fluc_from_zeros


@dataclass
class RunConfig:
    """Parsed invocation of one subcommand."""

    command: str
    n_samples: int = 0
    x_start: int = 2
    method: str = "mem"
    mem_order: int = 1
    welch_segment: int | None = None
    band: tuple[float, float] = DEFAULT_BAND
    n_freq: int = 512
    f_lo: float = 1e-4
    zeros_path: Path | None = None
    n_zeros: int | None = None
    output_path: str = "-"
    seed: int | None = None
    synthetic: str | None = None
    ar_coeff: float = 0.9
    input_csv: Path | None = None
    spectrum_csv: Path | None = None


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _emit(output_path: str, text: str) -> None:
    if output_path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(output_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {output_path}: {exc}") from exc


def _parse_band(_ctx, _param, value: str) -> tuple[float, float]:
    parts = value.split(":")
    if len(parts) != 2:
        raise click.UsageError(f"--band expects 'f_min:f_max', got {value!r}")
    try:
        f_min, f_max = float(parts[0]), float(parts[1])
    except ValueError:
        raise click.UsageError(f"--band expects two decimals, got {value!r}")
    return f_min, f_max


def _translate_errors(fn):
    """Map library exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, DegenerateInputError, ResourceError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(2)
        except DataFormatError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(4)

    return wrapper


# ---------------------------------------------------------------------------
# Input hooks (round-trip re-ingestion of emitted CSV)
# ---------------------------------------------------------------------------


def _read_rows(path, expected_header: str) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except FileNotFoundError as exc:
        raise DataFormatError(f"input file not found: {path}") from exc
    n_cols = len(expected_header.split(","))
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line
            if header != expected_header:
                raise DataFormatError(
                    f"{path}: line {lineno}: expected header "
                    f"{expected_header!r}, got {header!r}"
                )
            continue
        parts = line.split(",")
        if len(parts) != n_cols:
            raise DataFormatError(
                f"{path}: line {lineno}: expected {n_cols} fields, got {len(parts)}"
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise DataFormatError(
                f"{path}: line {lineno}: non-numeric field in {line!r}"
            ) from exc
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    return np.asarray(rows, dtype=np.float64)


def read_sample_csv(path) -> FlucSeries:
    """Re-ingest a ``sample`` CSV into a FlucSeries (test/round-trip hook)."""
    table = _read_rows(path, "x,psi,smooth,fluc")
    x = table[:, 0]
    if x[0] != round(x[0]) or (x.size > 1 and not np.all(np.diff(x) == 1.0)):
        raise DataFormatError(
            f"{path}: x column must be consecutive integers with step 1"
        )
    return FlucSeries(
        x_start=int(x[0]), n=x.size, dx=1.0, values=table[:, 3].copy()
    )


def read_spectrum_csv(path) -> PowerSpectrum:
    """Re-ingest a ``spectrum`` CSV (test hook for ``fit``)."""
    table = _read_rows(path, "f,P")
    freqs = table[:, 0]
    if np.any(np.diff(freqs) <= 0):
        raise DataFormatError(f"{path}: frequencies must be strictly ascending")
    return PowerSpectrum(
        freqs=freqs,
        power=table[:, 1].copy(),
        nyquist=float(freqs[-1]),
        estimator={"method": "file", "path": str(path)},
    )


# ---------------------------------------------------------------------------
# Pipeline pieces shared by spectrum/fit
# ---------------------------------------------------------------------------


def _synthetic_series(kind: str, n: int, seed: int | None, ar_coeff: float):
    rng = np.random.default_rng(seed)
    eps = rng.standard_normal(n)
    if kind == "white":
        return eps
    if kind == "ar1":
        out = np.empty(n)
        prev = 0.0
        for t in range(n):
            prev = ar_coeff * prev + eps[t]
            out[t] = prev
        return out
    raise DomainError(f"unknown synthetic signal {kind!r} (use white or ar1)")


def _pipeline_series(config: RunConfig) -> np.ndarray:
    """Demeaned series the estimators run on."""
    if config.input_csv is not None:
        series = read_sample_csv(config.input_csv)
        return remove_mean(series)
    if config.synthetic is not None:
        raw = _synthetic_series(
            config.synthetic, config.n_samples, config.seed, config.ar_coeff
        )
        return remove_mean(raw)
    if config.n_samples < 2:
        raise DomainError(
            f"spectral estimation needs at least 2 samples, got {config.n_samples}"
        )
    psi = psi_series(config.n_samples, x_start=config.x_start)
    fluc = psi.values - smooth_part(psi.x)
    return remove_mean(fluc)


def _estimate_spectrum(config: RunConfig, series: np.ndarray) -> PowerSpectrum:
    if config.method == "mem":
        model = burg_fit(series, order=config.mem_order)
        return ar_psd(model, n_freq=config.n_freq, f_min=config.f_lo)
    if config.method == "welch":
        return welch_psd(series, segment_len=config.welch_segment)
    raise DomainError(f"unknown method {config.method!r} (use mem or welch)")


def _spectrum_text(config: RunConfig, spectrum: PowerSpectrum) -> str:
    lines = ["# psispec spectrum"]
    for key, value in spectrum.estimator.items():
        lines.append(f"# {key}={value}")
    if config.synthetic is not None:
        lines.append(f"# synthetic={config.synthetic} seed={config.seed}")
    elif config.input_csv is None:
        lines.append(f"# x_start={config.x_start}")
    lines.append("f,P")
    for f, p in zip(spectrum.freqs, spectrum.power):
        lines.append(f"{_fmt(f)},{_fmt(p)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Command bodies (click-independent, testable directly)
# ---------------------------------------------------------------------------


def cmd_sample(config: RunConfig) -> None:
    if config.n_samples < 1:
        raise DomainError(f"need at least one sample, got {config.n_samples}")
    if config.x_start < 2:
        raise DomainError("smooth part is undefined at x = 1; start at x >= 2")
    psi = psi_series(config.n_samples, x_start=config.x_start)
    smooth = smooth_part(psi.x)
    fluc = psi.values - smooth
    lines = [
        "# psispec sample",
        f"# n={config.n_samples} x_start={config.x_start} dx=1",
        "x,psi,smooth,fluc",
    ]
    xs = psi.x
    for i in range(psi.n):
        lines.append(
            f"{_fmt(xs[i])},{_fmt(psi.values[i])},{_fmt(smooth[i])},{_fmt(fluc[i])}"
        )
    _emit(config.output_path, "\n".join(lines) + "\n")


def cmd_spectrum(config: RunConfig) -> None:
    series = _pipeline_series(config)
    spectrum = _estimate_spectrum(config, series)
    _emit(config.output_path, _spectrum_text(config, spectrum))


def cmd_fit(config: RunConfig) -> None:
    if config.spectrum_csv is not None:
        spectrum = read_spectrum_csv(config.spectrum_csv)
    else:
        spectrum = _estimate_spectrum(config, _pipeline_series(config))
    f_min, f_max = config.band
    fit = fit_power_law(spectrum, f_min=f_min, f_max=f_max)
    _emit(config.output_path, json.dumps(fit.as_dict(), indent=2) + "\n")


def cmd_reconstruct(config: RunConfig) -> None:
    if config.n_samples < 2:
        raise DomainError(
            f"need a range of at least 2 integers, got n={config.n_samples}"
        )
    zeros_path = config.zeros_path or bundled_zeros_path()
    zeros = load_zeros(zeros_path)
    n_zeros = zeros.count if config.n_zeros is None else config.n_zeros
    # half-integer points strictly inside [x_start, x_start + n - 1]
    points = config.x_start + 0.5 + np.arange(config.n_samples - 1)
    direct = fluctuation_at(points)
    recon = psi_fluc_from_zeros(points, zeros, n_zeros)
    lines = [
        "# psispec reconstruct",
        f"# zeros={zeros.source} K={n_zeros}",
        f"# x_start={config.x_start} n={config.n_samples}",
        "x,fluc_direct,fluc_zeros,abs_err",
    ]
    for i in range(points.size):
        err = abs(direct[i] - recon[i])
        lines.append(
            f"{_fmt(points[i])},{_fmt(direct[i])},{_fmt(recon[i])},{_fmt(err)}"
        )
    _emit(config.output_path, "\n".join(lines) + "\n")


def cmd_analytic(config: RunConfig) -> None:
    f_min, f_max = config.band
    spectrum = analytic_spectrum(f_min, f_max, n_freq=config.n_freq)
    lines = [
        "# psispec analytic",
        f"# band=[{_fmt(f_min)},{_fmt(f_max)}] n_freq={config.n_freq}",
        "f,P_analytic",
    ]
    for f, p in zip(spectrum.freqs, spectrum.power):
        lines.append(f"{_fmt(f)},{_fmt(p)}")
    _emit(config.output_path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# click wiring
# ---------------------------------------------------------------------------


@click.group()
@click.version_option()
def main():
    """Power spectrum of the fluctuation of Chebyshev's psi function."""


_OUT = click.option(
    "--out", "output_path", default="-", show_default=True,
    help="Output file path, or '-' for standard output.",
)
_BAND = click.option(
    "--band", default="1e-3:1e-1", show_default=True, callback=_parse_band,
    help="Frequency band as f_min:f_max (cycles per sample unit).",
)


@main.command()
@click.option("--n", "n_samples", type=int, required=True, help="Grid points.")
@click.option("--x-start", type=int, default=2, show_default=True)
@_OUT
@_translate_errors
def sample(n_samples, x_start, output_path):
    """Emit x,psi,smooth,fluc on the integer grid."""
    cmd_sample(RunConfig(
        command="sample", n_samples=n_samples, x_start=x_start,
        output_path=output_path,
    ))


@main.command()
@click.option("--n", "n_samples", type=int, default=0, help="Grid points.")
@click.option("--x-start", type=int, default=2, show_default=True)
@click.option("--method", type=click.Choice(["mem", "welch"]), default="mem",
              show_default=True)
@click.option("--order", "mem_order", type=int, default=1, show_default=True,
              help="Autoregressive order for the mem method.")
@click.option("--segment", "welch_segment", type=int, default=None,
              help="Welch segment length (power of two; default: largest "
                   "power of two <= n/8).")
@click.option("--n-freq", type=int, default=512, show_default=True,
              help="Frequency points for the mem log grid.")
@click.option("--f-lo", type=float, default=1e-4, show_default=True,
              help="Lowest frequency of the mem log grid.")
@click.option("--input", "input_csv", type=click.Path(path_type=Path),
              default=None, help="Re-ingest a sample CSV instead of sieving.")
@click.option("--synthetic", type=click.Choice(["white", "ar1"]), default=None,
              help="Replace the fluctuation series with a seeded test signal.")
@click.option("--ar-coeff", type=float, default=0.9, show_default=True,
              help="Coefficient of the ar1 synthetic signal.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for synthetic signals.")
@_OUT
@_translate_errors
def spectrum(n_samples, x_start, method, mem_order, welch_segment, n_freq,
             f_lo, input_csv, synthetic, ar_coeff, seed, output_path):
    """Emit the one-sided power spectral density of the fluctuation."""
    cmd_spectrum(RunConfig(
        command="spectrum", n_samples=n_samples, x_start=x_start,
        method=method, mem_order=mem_order, welch_segment=welch_segment,
        n_freq=n_freq, f_lo=f_lo, input_csv=input_csv, synthetic=synthetic,
        ar_coeff=ar_coeff, seed=seed, output_path=output_path,
    ))


@main.command()
@click.option("--n", "n_samples", type=int, default=0, help="Grid points.")
@click.option("--x-start", type=int, default=2, show_default=True)
@click.option("--method", type=click.Choice(["mem", "welch"]), default="mem",
              show_default=True)
@click.option("--order", "mem_order", type=int, default=1, show_default=True)
@click.option("--segment", "welch_segment", type=int, default=None)
@click.option("--n-freq", type=int, default=512, show_default=True)
@click.option("--f-lo", type=float, default=1e-4, show_default=True)
@_BAND
@click.option("--spectrum-csv", type=click.Path(path_type=Path), default=None,
              help="Fit a previously emitted (or external) f,P table instead "
                   "of running the pipeline.")
@click.option("--synthetic", type=click.Choice(["white", "ar1"]), default=None)
@click.option("--ar-coeff", type=float, default=0.9, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_OUT
@_translate_errors
def fit(n_samples, x_start, method, mem_order, welch_segment, n_freq, f_lo,
        band, spectrum_csv, synthetic, ar_coeff, seed, output_path):
    """Fit P(f) = a*f^b over a band; emit the JSON report."""
    if not 0.0 < band[0] < band[1] <= 0.5:
        raise DomainError(
            f"fit band must lie within (0, 0.5], got [{band[0]}, {band[1]}]"
        )
    cmd_fit(RunConfig(
        command="fit", n_samples=n_samples, x_start=x_start, method=method,
        mem_order=mem_order, welch_segment=welch_segment, n_freq=n_freq,
        f_lo=f_lo, band=band, spectrum_csv=spectrum_csv, synthetic=synthetic,
        ar_coeff=ar_coeff, seed=seed, output_path=output_path,
    ))


@main.command()
@click.option("--n", "n_samples", type=int, required=True,
              help="Range length; evaluation happens at the n-1 half-integer "
                   "points inside [x-start, x-start + n - 1].")
@click.option("--x-start", type=int, default=2, show_default=True)
@click.option("--zeros", "zeros_path", type=click.Path(path_type=Path),
              default=None,
              help="Zero-ordinate table (default: bundled 2000-zero table).")
@click.option("--K", "n_zeros", type=int, default=None,
              help="Zeros to keep in the truncated sum (default: all).")
@_OUT
@_translate_errors
def reconstruct(n_samples, x_start, zeros_path, n_zeros, output_path):
    """Cross-validate the sieve route against the zero-sum route."""
    cmd_reconstruct(RunConfig(
        command="reconstruct", n_samples=n_samples, x_start=x_start,
        zeros_path=zeros_path, n_zeros=n_zeros, output_path=output_path,
    ))


@main.command()
@_BAND
@click.option("--n-freq", type=int, default=512, show_default=True)
@_OUT
@_translate_errors
def analytic(band, n_freq, output_path):
    """Emit the asymptotic spectrum 2*ln^2(f/(2 pi))/f^2 over a band."""
    cmd_analytic(RunConfig(
        command="analytic", band=band, n_freq=n_freq, output_path=output_path,
    ))


if __name__ == "__main__":
    main()
