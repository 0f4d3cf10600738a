"""Closed-form upper bounds on the real Waring rank of a monomial."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import comb, prod
from typing import Iterable

from .generators import ExponentSeq, as_exponents

__all__ = [
    "BoundsRow",
    "ub_hm",
    "ub_ckov",
    "ub_bt",
    "bounds_table",
    "table_to_csv",
    "table_to_json",
    "TABLE_SEQUENCES",
]

CSV_COLUMNS = ("exponents", "UB_BT", "UB_CKOV", "UB_HM")

# the comparison rows shipped as a convenience default for `waring table`
TABLE_SEQUENCES = (
    (3, 3, 3),
    (4, 3, 3),
    (4, 4, 3),
    (4, 4, 4),
    (5, 5, 5, 5),
    (7, 7, 7, 7, 7),
    (10, 9, 8, 7, 6, 5, 4),
    (7, 7, 7, 7, 7, 7, 7),
)


def _seq(a) -> tuple:
    a = as_exponents(a)
    if len(a) < 2:
        raise ValueError(f"need at least two exponents, got {a}")
    return a


def ub_hm(a) -> int:
    """(prod(a_i + 1) - prod(a_i - 1)) / 2, the size of the constructed point set."""
    a = _seq(a)
    return (prod(x + 1 for x in a) - prod(x - 1 for x in a)) // 2


def ub_ckov(a) -> int:
    """prod over all but the smallest exponent of (a_i + min a)."""
    a = sorted(_seq(a), reverse=True)
    return prod(x + a[-1] for x in a[:-1])


def ub_bt(a) -> int:
    """Twice the generic rank C(n+d, n)/(n+1), rounded up."""
    a = _seq(a)
    n, d = len(a) - 1, sum(a)
    return 2 * (-(-comb(n + d, n) // (n + 1)))


@dataclass(frozen=True)
class BoundsRow:
    a: tuple
    ub_bt: int
    ub_ckov: int
    ub_hm: int

    def label(self) -> str:
        return ",".join(map(str, self.a))

    def to_json(self) -> dict:
        return {"exponents": list(self.a), "UB_BT": self.ub_bt, "UB_CKOV": self.ub_ckov, "UB_HM": self.ub_hm}


def bounds_table(seqs: Iterable) -> list[BoundsRow]:
    rows = []
    for a in seqs:
        a = a.a if isinstance(a, ExponentSeq) else _seq(a)
        rows.append(BoundsRow(a, ub_bt(a), ub_ckov(a), ub_hm(a)))
    return rows


def table_to_csv(rows: Iterable[BoundsRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow((r.label(), r.ub_bt, r.ub_ckov, r.ub_hm))
    return buf.getvalue()


def table_to_json(rows: Iterable[BoundsRow]) -> str:
    return json.dumps([r.to_json() for r in rows])
