"""Per-curve weak-key census: N_B and C_B at a list of bounds.

N_B is log2 of the number of alpha in F_p* whose order is at most B, and C_B
is log2 of the worst-case implicit exponentiations needed to test one key
against B. When p - 1 is only partly factored both are computed from the
known divisors and are lower bounds (flagged with ">=").
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Literal, Sequence, Union

from .ecgroup import CurveParams, OrderOnlyEntry
from .factorization import (
    EffortBudget,
    PartialFactorization,
    bsgs_cost,
    divisors_up_to,
    factor_bounded,
    reduce_divisor_set,
    weak_key_count,
)

DEFAULT_BOUNDS = (2**32, 2**64, 2**128, 2**160)
Format = Literal["text", "csv", "json"]
Entry = Union[CurveParams, OrderOnlyEntry]


@dataclass(frozen=True)
class CensusEntry:
    bound: int
    weak_keys: int
    cost: int
    complete: bool

    @property
    def n_log2(self) -> float:
        return math.log2(self.weak_keys)

    @property
    def c_log2(self) -> float:
        return math.log2(self.cost)


@dataclass
class CensusRow:
    curve_name: str
    b_p: int
    b_pm: int | None
    entries: dict[int, CensusEntry] = field(default_factory=dict)
    factorization: PartialFactorization | None = field(default=None, repr=False, compare=False)

    def n(self, bound: int) -> float:
        return self.entries[bound].n_log2

    def c(self, bound: int) -> float:
        return self.entries[bound].c_log2

    def complete(self, bound: int) -> bool:
        return self.entries[bound].complete

    @property
    def bounds(self) -> list[int]:
        return sorted(self.entries)


def round1(x: float) -> Decimal:
    """One decimal, halves rounded away from zero."""
    return Decimal(repr(x)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def bound_label(bound: int) -> str:
    """``32`` for 2^32, the decimal bound otherwise."""
    if bound & (bound - 1) == 0:
        return str(bound.bit_length() - 1)
    return str(bound)


def census_row(
    entry: Entry,
    bounds: Sequence[int] = DEFAULT_BOUNDS,
    effort: EffortBudget = EffortBudget(),
    hints: Iterable[tuple[int, int]] = (),
) -> CensusRow:
    if not bounds:
        raise ValueError("need at least one bound")
    if list(bounds) != sorted(set(bounds)):
        raise ValueError("bounds must be strictly ascending")
    p = entry.p
    f = factor_bounded(p - 1, effort, list(entry.known_pm1_factors) + list(hints))
    row = CensusRow(entry.name, p.bit_length(), f.largest_prime_bits(), factorization=f)
    for bound in bounds:
        divisors = divisors_up_to(f, bound)
        row.entries[bound] = CensusEntry(
            bound,
            weak_key_count(f, bound),
            bsgs_cost(reduce_divisor_set(divisors)),
            divisors.complete,
        )
    return row


def sort_rows(rows: Iterable[CensusRow]) -> list[CensusRow]:
    """Ascending C at the largest bound, ties by curve name."""
    rows = list(rows)
    if not rows:
        return rows
    top = max(rows[0].bounds)
    return sorted(rows, key=lambda r: (r.c(top), r.curve_name))


def _cell(value: float, complete: bool) -> str:
    text = str(round1(value))
    return text if complete else "≥" + text


def _flags(row: CensusRow) -> str:
    return "".join("1" if row.complete(b) else "0" for b in row.bounds)


def emit_table(rows: Iterable[CensusRow], fmt: Format = "text") -> str:
    rows = list(rows)
    bounds = rows[0].bounds if rows else list(DEFAULT_BOUNDS)
    for r in rows:
        if r.bounds != bounds:
            raise ValueError("rows were computed with different bounds")
    rows = sort_rows(rows)
    labels = [bound_label(b) for b in bounds]

    if fmt == "json":
        out = []
        for r in rows:
            out.append(
                {
                    "curve": r.curve_name,
                    "b_p": r.b_p,
                    "b_pm": r.b_pm,
                    "entries": [
                        {
                            "bound": lab,
                            "N": float(round1(r.n(b))),
                            "C": float(round1(r.c(b))),
                            "complete": r.complete(b),
                        }
                        for b, lab in zip(bounds, labels)
                    ],
                }
            )
        return json.dumps(out, indent=1)

    header = ["curve", "b_p", "b_pm"]
    for lab in labels:
        header += [f"N_{lab}", f"C_{lab}"]
    body = []
    for r in rows:
        cells = [r.curve_name, str(r.b_p), "?" if r.b_pm is None else str(r.b_pm)]
        for b in bounds:
            ok = r.complete(b)
            cells += [_cell(r.n(b), ok), _cell(r.c(b), ok)]
        body.append(cells)

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header + ["complete_flags"])
        for r, cells in zip(rows, body):
            w.writerow(cells + [_flags(r)])
        return buf.getvalue()

    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max(len(c[i]) for c in [header] + body) for i in range(len(header))]
    lines = []
    for cells in [header] + body:
        first = cells[0].ljust(widths[0])
        rest = (c.rjust(w) for c, w in zip(cells[1:], widths[1:]))
        lines.append("  ".join([first, *rest]))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))
