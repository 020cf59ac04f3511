"""Bucket table mapping stream values to the fractions that drive each step.

Every recurrence step looks up the current value ``t`` in a table of
inclusive ranges.  The matched row supplies two fractions for the ``t``
side (``t_delta_frac`` and ``t_w_frac``, i.e. the seed and weight values
expressed as fractions of ``t``) and one for the ``u`` side
(``u_delta_frac``).  The nonlinearity of the whole generator comes from
this lookup: as the stream wanders across ranges, the coefficients of the
quadratic recurrence change with it.

The compiled-in :data:`DEFAULT_TABLE` covers 0..35 in seven rows.  Custom
tables can be loaded from plain text, one rule per line::

    t_lo  t_hi  t_delta_frac  t_w_frac  u_value  u_delta_frac
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InvalidParams, OutOfRange


@dataclass(frozen=True)
class BucketRule:
    """One table row: an inclusive ``t`` range and its fractions."""

    t_lo: int
    t_hi: int
    t_delta_frac: float
    t_w_frac: float
    u_value: int
    u_delta_frac: float

    def __post_init__(self) -> None:
        if self.t_lo > self.t_hi:
            raise InvalidParams(f"rule range inverted: {self.t_lo}..{self.t_hi}")
        for name in ("t_delta_frac", "t_w_frac", "u_delta_frac"):
            frac = getattr(self, name)
            if not 0.0 < frac < 1.0:
                raise InvalidParams(f"{name} must lie strictly in (0,1), got {frac}")
        if self.t_delta_frac > self.t_w_frac:
            raise InvalidParams(
                f"t_delta_frac {self.t_delta_frac} exceeds t_w_frac {self.t_w_frac}"
            )

    def contains(self, t: int) -> bool:
        return self.t_lo <= t <= self.t_hi


class RelationshipTable:
    """Ordered, disjoint set of :class:`BucketRule` ranges."""

    def __init__(self, rules) -> None:
        rules = tuple(rules)
        if not rules:
            raise InvalidParams("table needs at least one rule")
        for prev, cur in zip(rules, rules[1:]):
            if cur.t_lo <= prev.t_hi:
                raise InvalidParams(
                    f"rule ranges must ascend without overlap: "
                    f"{prev.t_lo}..{prev.t_hi} then {cur.t_lo}..{cur.t_hi}"
                )
        self.rules = rules

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __eq__(self, other) -> bool:
        return isinstance(other, RelationshipTable) and self.rules == other.rules

    @property
    def upper_bound(self) -> int:
        """Largest value any rule covers."""
        return self.rules[-1].t_hi

    @property
    def domain_size(self) -> int:
        """Number of residues needed to index the table from zero."""
        return self.upper_bound + 1

    def lookup(self, t: int) -> BucketRule:
        for rule in self.rules:
            if rule.contains(t):
                return rule
        raise OutOfRange(f"no rule covers t={t}")


def lookup_bucket(table: RelationshipTable, t: int) -> BucketRule:
    """Return the unique rule whose range contains ``t``."""
    return table.lookup(t)


def theta(rule: BucketRule) -> float:
    """Weight ratio (1 - t_w_frac) / (1 - t_delta_frac) of a rule.

    Both numerator fractions scale with the same ``t``, so the ratio form
    is identical to the point form for every nonzero ``t`` and stays
    defined at ``t = 0``.  It lies in (0, 1] because the weight fraction
    never falls below the delta fraction.
    """
    return (1.0 - rule.t_w_frac) / (1.0 - rule.t_delta_frac)


def parse_table(text: str) -> RelationshipTable:
    """Parse a table from its plain-text form.

    Blank lines and ``#`` comments are ignored.  Raises
    :class:`InvalidParams` on malformed rows.
    """
    rules = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        if len(fields) != 6:
            raise InvalidParams(f"line {lineno}: expected 6 fields, got {len(fields)}")
        try:
            rules.append(
                BucketRule(
                    t_lo=int(fields[0]),
                    t_hi=int(fields[1]),
                    t_delta_frac=float(fields[2]),
                    t_w_frac=float(fields[3]),
                    u_value=int(fields[4]),
                    u_delta_frac=float(fields[5]),
                )
            )
        except ValueError as exc:
            raise InvalidParams(f"line {lineno}: {exc}") from exc
    return RelationshipTable(rules)


def load_table(path: str | os.PathLike) -> RelationshipTable:
    with open(path, "r", encoding="ascii") as fh:
        return parse_table(fh.read())


DEFAULT_TABLE = RelationshipTable(
    [
        BucketRule(0, 5, 0.3, 0.6, 3, 0.3),
        BucketRule(6, 10, 0.4, 0.6, 2, 0.4),
        BucketRule(11, 15, 0.5, 0.7, 5, 0.5),
        BucketRule(16, 20, 0.6, 0.7, 1, 0.6),
        BucketRule(21, 25, 0.7, 0.8, 7, 0.7),
        BucketRule(26, 30, 0.8, 0.8, 4, 0.8),
        BucketRule(31, 35, 0.9, 0.9, 6, 0.9),
    ]
)
