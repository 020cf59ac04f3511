"""Feedback-mode keystream derivation.

The generator turns ``(key, timestamps, nonce, seed)`` into a sequence of
residues by iterating a quadratic recurrence whose coefficients change
with the stream itself: each output value selects a bucket rule, the rule
fixes the weight ratio theta and the u-ratio, and together with the key,
the current timestamp ``m`` and the current nonce element ``gamma`` they
produce the next value.  Two engines are provided:

``canonical``
    Cleaned-up arithmetic.  Buckets are re-resolved from the current
    value every step, the result is floored and reduced with a Euclidean
    modulus, so every output lies in ``[0, modulus)``.

``literal``
    A bit-faithful transcription of the original C routine, kept for
    reference and calibration: fixed loop bounds (m = 1..5, g = 2..23),
    integer division of ``u / u1``, truncation toward zero on every
    assignment to ``t``, C-style remainder that may go negative, the
    carried ``t3`` state seeded as 0.0 at first use, and the duplicated
    emit after each inner loop (23 values per outer pass, 115 total).
    Float subexpressions follow the source shapes in double precision.

The unused step constant of the underlying numerical scheme is kept for
fidelity; nothing reads it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from .buckets import DEFAULT_TABLE, RelationshipTable, lookup_bucket, theta
from .errors import InvalidParams, NumericFault, ValueOutOfRange

#: Time-step constant of the underlying numerical scheme; inert.
DELT = 1.0

#: Literal-engine loop bounds, fixed by the transcribed routine.
LITERAL_TIMESTAMP_RANGE = range(1, 6)
LITERAL_NONCE_RANGE = range(2, 24)


class Mode(str, Enum):
    CANONICAL = "canonical"
    LITERAL = "literal"


@dataclass(frozen=True)
class GeneratorParams:
    """Full input of a keystream derivation.

    ``timestamps`` are the session's interval multipliers, ``nonce`` the
    variable-length space-step list that doubles as IV.  ``seed_t1``
    feeds the starting value ``trunc(seed_t1 / 0.3)``.  Literal mode
    additionally needs the two integers ``literal_u`` / ``literal_u1``
    that the transcribed routine reads once up front.
    """

    key_r: int
    timestamps: tuple[int, ...]
    nonce: tuple[int, ...]
    seed_t1: int = 4
    modulus: int = 35
    mode: Mode = Mode.CANONICAL
    literal_u: int | None = None
    literal_u1: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "timestamps", tuple(self.timestamps))
        object.__setattr__(self, "nonce", tuple(self.nonce))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.key_r < 1:
            raise InvalidParams(f"key_r must be positive, got {self.key_r}")
        if self.seed_t1 < 1:
            raise InvalidParams(f"seed_t1 must be positive, got {self.seed_t1}")
        if self.modulus < 2:
            raise InvalidParams(f"modulus must be at least 2, got {self.modulus}")
        if not self.timestamps:
            raise InvalidParams("timestamps must be non-empty")
        if any(m < 1 for m in self.timestamps):
            raise InvalidParams("timestamps must all be positive")
        if not self.nonce:
            raise InvalidParams("nonce must be non-empty")
        if any(g < 2 for g in self.nonce):
            raise InvalidParams("nonce elements must be at least 2")
        if self.mode is Mode.LITERAL:
            if self.literal_u is None or self.literal_u1 is None:
                raise InvalidParams("literal mode requires literal_u and literal_u1")
            if self.literal_u1 == 0:
                raise InvalidParams("literal_u1 must be nonzero")


class Coefficients(NamedTuple):
    a: float
    b: float
    c: float
    theta: float


def coefficients(
    key_r: int, gamma: int, m: int, theta_value: float, mode: Mode = Mode.CANONICAL
) -> Coefficients:
    """Quadratic coefficients for one step.

    Canonical: with common factor ``F = key_r * (gamma - 1) * m**2``,
    ``a = 1 + F*(1 - theta)``, ``b = F*theta``, ``c = -F``, which sum to
    one exactly.  Literal follows the transcribed source instead: the
    nonce step is halved and the sign of the theta term is flipped.
    """
    if mode is Mode.CANONICAL:
        f = key_r * (gamma - 1) * m * m
        return Coefficients(1.0 + f * (1.0 - theta_value), f * theta_value, -float(f), theta_value)
    x = float(gamma - 1) / 2
    y = float(m) ** 2
    z = theta_value - 1
    a = 1 + (((key_r * x) * y) * z)
    b = (theta_value * key_r) * (x * y)
    c = -((key_r * x) * y)
    return Coefficients(a, b, c, theta_value)


def _initial_t(seed_t1: int, domain: int) -> int:
    return math.trunc(seed_t1 / 0.3) % domain


def _step_canonical(
    t: int,
    key_r: int,
    modulus: int,
    gamma: int,
    m: int,
    table: RelationshipTable,
    theta_term: str = "prose",
    gamma_step: str = "full",
) -> int:
    """One canonical iteration; variant knobs exist for the calibration sweep."""
    rule = lookup_bucket(table, t)
    th = theta(rule)
    step = (gamma - 1) if gamma_step == "full" else (gamma - 1) / 2
    f = key_r * step * m * m
    theta_factor = (1.0 - th) if theta_term == "prose" else (th - 1.0)
    a = 1.0 + f * theta_factor
    b = f * th
    c = -float(f)
    ratio = 1.0 / rule.u_delta_frac
    t_real = a + b * ratio + c * ratio * ratio
    return math.floor(t_real) % modulus


def step_canonical(
    t: int,
    params: GeneratorParams,
    gamma: int,
    m: int,
    table: RelationshipTable = DEFAULT_TABLE,
) -> int:
    """Advance the canonical recurrence once from value ``t``."""
    return _step_canonical(t, params.key_r, params.modulus, gamma, m, table)


def _canonical_stream(
    params: GeneratorParams,
    table: RelationshipTable,
    theta_term: str = "prose",
    gamma_step: str = "full",
) -> list[int]:
    t = _initial_t(params.seed_t1, table.domain_size)
    out = []
    for m in params.timestamps:
        for gamma in params.nonce:
            t = _step_canonical(
                t, params.key_r, params.modulus, gamma, m, table, theta_term, gamma_step
            )
            out.append(t)
    return out


def _c_div(a: int, b: int) -> int:
    """C integer division: quotient truncated toward zero."""
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _c_rem(a: int, b: int) -> int:
    """C remainder; takes the sign of the dividend."""
    return a - _c_div(a, b) * b


def _literal_stream(
    key_r: int,
    u: int,
    u1: int,
    seed_t1: int,
    modulus: int,
    theta_term: str = "code",
    gamma_step: str = "half",
    u_division: str = "int",
) -> list[int]:
    """Transcribed engine; the knobs select the calibration variants.

    Defaults reproduce the source exactly.  Raises :class:`NumericFault`
    carrying the partial output when ``t`` reaches zero and the feedback
    ratio divides by zero.
    """
    if u1 == 0:
        raise InvalidParams("literal_u1 must be nonzero")
    out: list[int] = []
    t = math.trunc(seed_t1 / 0.3)
    t3 = 0.0
    if u_division == "int":
        quotient: float | int = _c_div(u, u1)
    else:
        quotient = u / u1
    for m in LITERAL_TIMESTAMP_RANGE:
        for g in LITERAL_NONCE_RANGE:
            t2 = 0.6 * t
            denom = t - t2
            if denom == 0.0:
                raise NumericFault(
                    f"feedback ratio divides by zero at t={t}", step=len(out), partial=out
                )
            t3 = (t - t3) / denom
            x = float(g - 1)
            if gamma_step == "half":
                x = x / 2
            y = float(m) ** 2
            z = (t3 - 1) if theta_term == "code" else (1 - t3)
            a = 1 + (((key_r * x) * y) * z)
            b = (t3 * key_r) * (x * y)
            c = -((key_r * x) * y)
            t = math.trunc(a + b * quotient + c * (float(quotient) ** 2))
            out.append(_c_rem(t, modulus))
        out.append(_c_rem(t, modulus))
    return out


def generate(params: GeneratorParams, table: RelationshipTable = DEFAULT_TABLE) -> list[int]:
    """Derive the full keystream for ``params``.

    Canonical output has one value per (timestamp, nonce) pair, iterating
    timestamps outermost; literal output is always 115 values.
    """
    if params.mode is Mode.CANONICAL:
        return _canonical_stream(params, table)
    assert params.literal_u is not None and params.literal_u1 is not None
    return _literal_stream(
        params.key_r, params.literal_u, params.literal_u1, params.seed_t1, params.modulus
    )


def derive_subkey(
    params: GeneratorParams, length: int, table: RelationshipTable = DEFAULT_TABLE
) -> list[int]:
    """First ``length`` stream values, cycling the base stream if needed."""
    if length < 0:
        raise InvalidParams(f"length must be non-negative, got {length}")
    if length == 0:
        return []
    base = generate(params, table)
    return [base[i % len(base)] for i in range(length)]


def keystream_to_text(values: Sequence[int]) -> str:
    return " ".join(str(v) for v in values)


def keystream_from_text(text: str) -> list[int]:
    return [int(tok) for tok in text.split()]


def keystream_to_bytes(values: Sequence[int]) -> bytes:
    for v in values:
        if not 0 <= v <= 255:
            raise ValueOutOfRange(f"value {v} does not fit in one byte")
    return bytes(values)


def keystream_from_bytes(data: bytes) -> list[int]:
    return list(data)
