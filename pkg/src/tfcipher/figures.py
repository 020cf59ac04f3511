"""Figure rendering for the report paths; all output goes to files."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import AnalysisReport
from .calibrate import VariantResult

_DPI = 150


def _save(fig, path: str | os.PathLike) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return str(path)


def save_histogram_figure(report: AnalysisReport, path: str | os.PathLike) -> str:
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(range(report.modulus), report.histogram, width=0.85, color="#39618f")
    ax.axhline(report.length / report.modulus, color="#b0413e", lw=1.0, ls="--",
               label="uniform expectation")
    ax.set_xlabel("residue")
    ax.set_ylabel("count")
    ax.set_title(f"residue frequencies (n={report.length}, chi2={report.chi_square:.2f})")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def save_serial_figure(stream: Sequence[int], lag: int, path: str | os.PathLike) -> str:
    fig, ax = plt.subplots(figsize=(3.6, 3.4))
    ax.scatter(stream[:-lag], stream[lag:], s=8, alpha=0.5, color="#39618f")
    ax.set_xlabel("value[i]")
    ax.set_ylabel(f"value[i+{lag}]")
    ax.set_title(f"successor plot, lag {lag}")
    return _save(fig, path)


def save_timing_figure(report: AnalysisReport, path: str | os.PathLike) -> str:
    sizes = [s.n for s in report.timing]
    times = [s.seconds * 1e3 for s in report.timing]
    fig, ax = plt.subplots(figsize=(4.4, 3.2))
    ax.plot(sizes, times, "o-", color="#39618f")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("work size |timestamps| x |nonce|")
    ax.set_ylabel("median generate time (ms)")
    ax.set_title("generator scaling")
    ax.grid(True, which="both", lw=0.3, alpha=0.5)
    return _save(fig, path)


def save_calibration_figure(results: Sequence[VariantResult], path: str | os.PathLike) -> str:
    labels = [r.variant.label for r in results]
    matches = [r.match_len for r in results]
    fig, ax = plt.subplots(figsize=(7, 0.42 * len(results) + 1.2))
    ax.barh(range(len(results)), matches, color="#39618f")
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels(labels, fontsize=7, family="monospace")
    ax.invert_yaxis()
    ax.set_xlabel("matching prefix length vs fixture")
    ax.set_title("variant sweep")
    return _save(fig, path)
