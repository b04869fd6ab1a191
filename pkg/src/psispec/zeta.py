"""The zero-sum side of the explicit formula, for cross-validation.

Under the Riemann hypothesis the fluctuation of psi admits the exact
representation (conjugate zero pairs combined into a real form)

    psi_fluc(x) = -2 sqrt(x) sum_k [cos(t_k ln x)/2 + t_k sin(t_k ln x)]
                                   / (1/4 + t_k^2),

with t_k the ordinates of the nontrivial zeros.  Truncations of this sum,
together with the asymptotic spectrum ``P(f) = 2 ln^2(f/(2 pi)) / f^2`` of
the fluctuation, provide an independent check on the prime-side pipeline.
"""

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import DataFormatError, DomainError

TWO_PI = 2.0 * math.pi

#: Ordinates in the bundled table (first consecutive zeros, ascending).
BUNDLED_ZERO_COUNT = 2000


@dataclass(frozen=True, eq=False)
class ZetaZeros:
    """Ascending positive ordinates of nontrivial zeros, with provenance."""

    ordinates: np.ndarray
    source: str

    @property
    def count(self) -> int:
        return int(self.ordinates.size)


@dataclass(frozen=True, eq=False)
class AnalyticSpectrum:
    """The asymptotic density ``2 ln^2(f/(2 pi)) / f^2`` on a grid."""

    freqs: np.ndarray
    power: np.ndarray


def bundled_zeros_path() -> Path:
    """Path of the zero table shipped with the package."""
    return Path(resources.files(__package__) / "data" / "zeta_zeros_2000.txt")


def load_zeros(path) -> ZetaZeros:
    """Parse a zero table: one decimal ordinate per line, ascending.

    Blank lines and ``#`` comments are skipped.  Violations (non-numeric,
    nonpositive, non-ascending, or a first ordinate at or below 14) raise
    :class:`DataFormatError` naming the offending line.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError as exc:
        raise DataFormatError(f"zeros file not found: {path}") from exc
    ordinates = []
    prev = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            t = float(line)
        except ValueError as exc:
            raise DataFormatError(
                f"{path}: line {lineno}: not a decimal ordinate: {line!r}"
            ) from exc
        if not math.isfinite(t) or t <= 0.0:
            raise DataFormatError(
                f"{path}: line {lineno}: ordinate must be positive, got {line}"
            )
        if prev is None and t <= 14.0:
            raise DataFormatError(
                f"{path}: line {lineno}: first ordinate must exceed 14, got {line}"
            )
        if prev is not None and t <= prev:
            raise DataFormatError(
                f"{path}: line {lineno}: ordinates must be strictly ascending "
                f"({line} after {prev})"
            )
        ordinates.append(t)
        prev = t
    if not ordinates:
        raise DataFormatError(f"{path}: no ordinates found")
    return ZetaZeros(
        ordinates=np.asarray(ordinates, dtype=np.float64), source=str(path)
    )


def psi_fluc_from_zeros(x, zeros: ZetaZeros, n_zeros: int):
    """Truncated zero-sum reconstruction of the fluctuation at ``x``.

    Uses the first ``n_zeros`` ordinates; accepts a scalar or an array of
    points ``x >= 2``.  Terms are accumulated from the largest ordinate
    down with compensated summation, since they decay like ``1/t_k``.
    """
    if n_zeros < 0:
        raise DomainError(f"zero count must be nonnegative, got {n_zeros}")
    if n_zeros > zeros.count:
        raise DomainError(
            f"requested {n_zeros} zeros but the table holds {zeros.count}"
        )
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(arr < 2.0):
        raise DomainError("reconstruction is defined for x >= 2 only")
    t_desc = zeros.ordinates[:n_zeros][::-1].copy()
    out = _kernels.zero_pair_sum(arr, t_desc)
    if np.isscalar(x) or getattr(x, "ndim", 1) == 0:
        return float(out[0])
    return out


def zero_density_avg(t):
    """Average density of zero ordinates near height ``t``:
    ``(1/(2 pi)) ln(t/(2 pi))``.  Positive and meaningful for t > 2 pi."""
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise DomainError("zero density requires t > 0")
    out = np.log(arr / TWO_PI) / TWO_PI
    if np.isscalar(t) or getattr(t, "ndim", 1) == 0:
        return float(out)
    return out


def analytic_fourier_mag(f):
    """Magnitude ``ln(f/(2 pi)) / sqrt(1/4 + f^2)`` of the stationary-phase
    transform of the fluctuation.  Exposed for ``f >= 2 pi`` only; the
    asymptotic derivation does not cover lower frequencies."""
    arr = np.asarray(f, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise DomainError("frequency must be positive")
    if np.any(arr < TWO_PI):
        raise DomainError(
            "analytic transform magnitude is valid for f >= 2*pi only"
        )
    out = np.log(arr / TWO_PI) / np.sqrt(0.25 + arr * arr)
    if np.isscalar(f) or getattr(f, "ndim", 1) == 0:
        return float(out)
    return out


def analytic_psd(f):
    """Asymptotic one-sided density ``2 ln^2(f/(2 pi)) / f^2``."""
    arr = np.asarray(f, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise DomainError("frequency must be positive")
    lg = np.log(arr / TWO_PI)
    out = 2.0 * lg * lg / (arr * arr)
    if np.isscalar(f) or getattr(f, "ndim", 1) == 0:
        return float(out)
    return out


def analytic_spectrum(
    f_min: float, f_max: float, n_freq: int = 512
) -> AnalyticSpectrum:
    """The asymptotic density sampled on a log grid over [f_min, f_max]."""
    if not 0.0 < f_min < f_max:
        raise DomainError(
            f"need 0 < f_min < f_max, got [{f_min}, {f_max}]"
        )
    if n_freq < 2:
        raise DomainError(f"need at least two frequency points, got {n_freq}")
    freqs = np.logspace(math.log10(f_min), math.log10(f_max), n_freq)
    # pin the endpoints: 10**log10(x) can land one ulp off x
    freqs[0] = f_min
    freqs[-1] = f_max
    return AnalyticSpectrum(freqs=freqs, power=analytic_psd(freqs))
