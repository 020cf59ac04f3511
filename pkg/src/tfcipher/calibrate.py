"""Variant sweep against the stored reference output sequence.

The published run of this scheme cannot be reproduced verbatim: its loop
bounds, parameter lists, and printed value count disagree with each
other, and the printed sequence contains obvious typesetting damage
(merged tokens, stray leading zeros).  Instead of guessing, this module
enumerates the readings the source leaves open and documents how far
each one matches:

* engine: canonical equations vs the literal transcription,
* the sign of the theta term in coefficient ``a`` (the prose and the
  code disagree),
* whether the nonce step ``gamma - 1`` is halved (the code halves it,
  the prose does not),
* integer vs real division of ``u / u1`` (literal engine only).

Each variant's transcript is compared by longest common prefix with the
normalized fixture.  The sweep never fails; it reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .buckets import DEFAULT_TABLE, RelationshipTable
from .errors import NumericFault
from .keystream import GeneratorParams, _canonical_stream, _literal_stream

FIXTURE_RESOURCE = "reference_sequence.txt"


def default_fixture_text() -> str:
    return (resources.files("tfcipher") / "_data" / FIXTURE_RESOURCE).read_text("ascii")


def normalize_fixture(text: str) -> list[int]:
    """Parse the fixture's verbatim form into comparable integers.

    Comment lines are dropped; each remaining whitespace-separated token
    is stripped of surrounding punctuation (the source ends in dots) and
    kept when what remains is a decimal number.  Leading zeros carry no
    meaning ("04" is 4).  Merged tokens are kept as printed.
    """
    values = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        for token in line.split():
            token = token.strip(".,;")
            if token.isdigit():
                values.append(int(token))
    return values


@dataclass(frozen=True)
class Variant:
    engine: str  # "canonical" | "literal"
    theta_term: str  # "prose" (1-theta) | "code" (theta-1)
    gamma_step: str  # "full" (g-1) | "half" ((g-1)/2)
    u_division: str | None  # literal only: "int" | "real"

    @property
    def label(self) -> str:
        parts = [
            self.engine,
            "a-term=(1-th)" if self.theta_term == "prose" else "a-term=(th-1)",
            "step=(g-1)" if self.gamma_step == "full" else "step=(g-1)/2",
        ]
        if self.u_division is not None:
            parts.append(f"div={self.u_division}")
        return "  ".join(parts)


@dataclass(frozen=True)
class VariantResult:
    variant: Variant
    produced: int
    match_len: int
    note: str = ""


def all_variants() -> list[Variant]:
    out = []
    for theta_term in ("prose", "code"):
        for gamma_step in ("full", "half"):
            out.append(Variant("canonical", theta_term, gamma_step, None))
    for theta_term in ("prose", "code"):
        for gamma_step in ("full", "half"):
            for u_division in ("int", "real"):
                out.append(Variant("literal", theta_term, gamma_step, u_division))
    return out


def common_prefix_len(a: Sequence[int], b: Sequence[int]) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def run_variant(
    variant: Variant, params: GeneratorParams, table: RelationshipTable = DEFAULT_TABLE
) -> tuple[list[int], str]:
    """Transcript of one variant, plus a note when it faulted early."""
    if variant.engine == "canonical":
        return (
            _canonical_stream(params, table, variant.theta_term, variant.gamma_step),
            "",
        )
    try:
        stream = _literal_stream(
            params.key_r,
            params.literal_u if params.literal_u is not None else 3,
            params.literal_u1 if params.literal_u1 is not None else 2,
            params.seed_t1,
            params.modulus,
            variant.theta_term,
            variant.gamma_step,
            variant.u_division or "int",
        )
        return stream, ""
    except NumericFault as fault:
        return fault.partial, f"numeric fault at step {fault.step}"


def run_sweep(
    fixture_values: Sequence[int],
    params: GeneratorParams,
    table: RelationshipTable = DEFAULT_TABLE,
) -> list[VariantResult]:
    results = []
    for variant in all_variants():
        stream, note = run_variant(variant, params, table)
        results.append(
            VariantResult(variant, len(stream), common_prefix_len(stream, fixture_values), note)
        )
    return results


def best_result(results: Sequence[VariantResult]) -> VariantResult:
    """Longest match wins; ties keep sweep order."""
    best = results[0]
    for result in results[1:]:
        if result.match_len > best.match_len:
            best = result
    return best


def render_sweep(results: Sequence[VariantResult], fixture_len: int) -> str:
    width = max(len(r.variant.label) for r in results)
    lines = [
        f"{'variant':<{width}}  produced  match  note",
        "-" * (width + 24),
    ]
    for r in results:
        lines.append(f"{r.variant.label:<{width}}  {r.produced:>8}  {r.match_len:>5}  {r.note}")
    best = best_result(results)
    lines.append("")
    lines.append(
        f"best match: {best.variant.label} "
        f"({best.match_len} of {fixture_len} fixture values)"
    )
    return "\n".join(lines)
