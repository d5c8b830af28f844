"""Published values bundled with the package (energies in eV, radii in Bohr)."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Optional

ENERGY = "energy_eV"
MEAN_R = "mean_r_over_aB"


@dataclass(frozen=True)
class ReferenceRow:
    table: int
    kind: str
    D: int
    l: int
    n: int
    value: float
    sigma: Optional[float]


def load_reference():
    text = resources.files("dimhydrogen").joinpath("data/paper_tables.csv").read_text("utf-8")
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(ReferenceRow(
            table=int(rec["table"]),
            kind=rec["kind"],
            D=int(rec["D"]),
            l=int(rec["l"]),
            n=int(rec["n"]),
            value=float(rec["value"]),
            sigma=float(rec["sigma"]) if rec["sigma"] else None,
        ))
    return rows


def lookup_energy(D, l, n, rows=None):
    """Most precise published energy for (D, l, n), or None."""
    matches = [r for r in (rows or load_reference()) if r.kind == ENERGY and (r.D, r.l, r.n) == (D, l, n)]
    return matches[-1] if matches else None
