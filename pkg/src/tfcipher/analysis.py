"""Empirical quality measurements for generated keystreams.

None of these prove anything about the scheme; they quantify what the
stream actually looks like: residue frequencies and their chi-square
distance from uniform, serial correlation at chosen lags (the feedback
construction makes successor dependence the first thing to check),
avalanche fractions under single-element parameter perturbations, and
wall-clock scaling of the generator against the work size
``|timestamps| * |nonce|``.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

from .buckets import DEFAULT_TABLE, RelationshipTable
from .errors import EmptyInput, LengthMismatch, TooShort, ValueOutOfRange, ZeroVariance
from .keystream import GeneratorParams, generate


def frequency_histogram(values: Sequence[int], modulus: int) -> list[int]:
    """Count occurrences of each residue in [0, modulus)."""
    counts = [0] * modulus
    for v in values:
        if not 0 <= v < modulus:
            raise ValueOutOfRange(f"stream value {v} outside [0, {modulus})")
        counts[v] += 1
    return counts


def chi_square_uniform(counts: Sequence[int]) -> float:
    """Chi-square statistic of ``counts`` against the uniform distribution."""
    total = sum(counts)
    if not counts or total == 0:
        raise EmptyInput("chi-square needs at least one observation")
    expected = total / len(counts)
    return sum((observed - expected) ** 2 / expected for observed in counts)


def serial_correlation(values: Sequence[int], lag: int = 1) -> float:
    """Pearson correlation between the stream and itself shifted by ``lag``.

    Raises :class:`TooShort` when fewer than two pairs exist and
    :class:`ZeroVariance` when either side is constant (the correlation
    is undefined there, not zero).
    """
    if lag < 1:
        raise TooShort(f"lag must be at least 1, got {lag}")
    if len(values) - lag < 2:
        raise TooShort(f"stream of {len(values)} values is too short for lag {lag}")
    xs = list(values[:-lag])
    ys = list(values[lag:])
    try:
        return statistics.correlation(xs, ys)
    except statistics.StatisticsError as exc:
        raise ZeroVariance(f"correlation undefined at lag {lag}: {exc}") from exc


def avalanche(
    base: GeneratorParams,
    perturbed: GeneratorParams,
    table: RelationshipTable = DEFAULT_TABLE,
) -> float:
    """Fraction of positions where the two derived streams differ."""
    ks_a = generate(base, table)
    ks_b = generate(perturbed, table)
    if len(ks_a) != len(ks_b):
        raise LengthMismatch(f"stream lengths differ: {len(ks_a)} vs {len(ks_b)}")
    return sum(1 for a, b in zip(ks_a, ks_b) if a != b) / len(ks_a)


class TimingSample(NamedTuple):
    n: int
    seconds: float


def timing_scaling(
    param_grid: Sequence[GeneratorParams],
    repeats: int = 5,
    table: RelationshipTable = DEFAULT_TABLE,
) -> list[TimingSample]:
    """Median wall-clock time of ``generate`` per grid point.

    ``n`` is the work size ``|timestamps| * |nonce|``.  The median over
    ``repeats`` runs smooths scheduler noise; runs are sequential on one
    thread so samples stay comparable.
    """
    samples = []
    for params in param_grid:
        times = []
        for _ in range(max(repeats, 1)):
            start = time.perf_counter()
            generate(params, table)
            times.append(time.perf_counter() - start)
        samples.append(TimingSample(len(params.timestamps) * len(params.nonce), statistics.median(times)))
    return samples


#: Perturbations measured by the standard report: bump the key, the first
#: timestamp, and the first nonce element by one each.
PERTURBATION_NAMES = ("key", "timestamp", "nonce")


def perturb(params: GeneratorParams, which: str) -> GeneratorParams:
    if which == "key":
        return replace(params, key_r=params.key_r + 1)
    if which == "timestamp":
        bumped = (params.timestamps[0] + 1,) + params.timestamps[1:]
        return replace(params, timestamps=bumped)
    if which == "nonce":
        bumped = (params.nonce[0] + 1,) + params.nonce[1:]
        return replace(params, nonce=bumped)
    raise ValueError(f"unknown perturbation {which!r}")


@dataclass
class AnalysisReport:
    modulus: int
    length: int
    histogram: list[int]
    chi_square: float
    serial: dict[int, float | None]
    avalanche: dict[str, float]
    timing: list[TimingSample]

    @property
    def avalanche_fraction(self) -> float:
        """Headline sensitivity: fraction changed when the key moves by one."""
        return self.avalanche["key"]


def build_report(
    params: GeneratorParams,
    lags: Sequence[int] = (1,),
    grid: Sequence[GeneratorParams] = (),
    repeats: int = 5,
    table: RelationshipTable = DEFAULT_TABLE,
) -> AnalysisReport:
    stream = generate(params, table)
    histogram = frequency_histogram(stream, params.modulus)
    serial: dict[int, float | None] = {}
    for lag in lags:
        try:
            serial[lag] = serial_correlation(stream, lag)
        except ZeroVariance:
            serial[lag] = None
    fractions = {
        name: avalanche(params, perturb(params, name), table) for name in PERTURBATION_NAMES
    }
    return AnalysisReport(
        modulus=params.modulus,
        length=len(stream),
        histogram=histogram,
        chi_square=chi_square_uniform(histogram),
        serial=serial,
        avalanche=fractions,
        timing=timing_scaling(grid, repeats, table),
    )


def _timing_ratios(samples: Sequence[TimingSample]) -> list[tuple[int, int, float]]:
    """Time ratios for every pair of samples whose sizes differ exactly 2x."""
    ratios = []
    ordered = sorted(samples)
    for small in ordered:
        for big in ordered:
            if big.n == 2 * small.n and small.seconds > 0:
                ratios.append((small.n, big.n, big.seconds / small.seconds))
    return ratios


def report_text(report: AnalysisReport) -> str:
    """Human-oriented rendering, one finding per line."""
    lines = [
        f"stream length         : {report.length}",
        f"modulus               : {report.modulus}",
        f"chi-square vs uniform : {report.chi_square:.4f}  ({report.modulus} bins)",
    ]
    occupied = sum(1 for c in report.histogram if c)
    lines.append(f"residues occupied     : {occupied}/{report.modulus}")
    for lag in sorted(report.serial):
        value = report.serial[lag]
        shown = "undefined (zero variance)" if value is None else f"{value:+.4f}"
        lines.append(f"serial corr, lag {lag:<4} : {shown}")
    for name in PERTURBATION_NAMES:
        lines.append(f"avalanche ({name:<9}) : {report.avalanche[name]:.4f}")
    for sample in report.timing:
        lines.append(f"generate n={sample.n:<8} : {sample.seconds * 1e3:.3f} ms median")
    for small_n, big_n, ratio in _timing_ratios(report.timing):
        lines.append(f"time ratio {big_n}/{small_n} : {ratio:.2f}")
    return "\n".join(lines)


def report_keyvalues(report: AnalysisReport) -> str:
    """Machine-readable key=value rendering."""
    lines = [f"length={report.length}", f"modulus={report.modulus}"]
    lines += [f"histogram.{v}={c}" for v, c in enumerate(report.histogram)]
    lines.append(f"chi_square={report.chi_square!r}")
    for lag in sorted(report.serial):
        value = report.serial[lag]
        lines.append(f"serial_correlation.lag{lag}={'undefined' if value is None else repr(value)}")
    for name in PERTURBATION_NAMES:
        lines.append(f"avalanche.{name}={report.avalanche[name]!r}")
    lines.append(f"avalanche_fraction={report.avalanche_fraction!r}")
    for sample in report.timing:
        lines.append(f"timing.n{sample.n}={sample.seconds!r}")
    for small_n, big_n, ratio in _timing_ratios(report.timing):
        lines.append(f"timing_ratio.{big_n}_over_{small_n}={ratio!r}")
    return "\n".join(lines)
