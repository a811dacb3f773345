"""Named scalar time series (ledgers) with CSV persistence."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


@dataclass
class Ledger:
    """A named family of scalar functionals sampled along a common index
    (affine parameter or time), plus run metadata."""

    name: str
    index_name: str
    index: np.ndarray
    columns: Dict[str, np.ndarray]
    units: Optional[Dict[str, str]] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = np.asarray(self.index, float)
        n = self.index.size
        for key, col in self.columns.items():
            col = np.asarray(col, float)
            if col.size != n:
                raise ValueError(f"ledger column {key!r} length {col.size} != index length {n}")
            self.columns[key] = col

    def __len__(self) -> int:
        return self.index.size

    def column(self, key: str) -> np.ndarray:
        return self.columns[key]

    def header_fields(self):
        units = self.units or {}
        fields = [f"{self.index_name} [{units.get(self.index_name, '1')}]"]
        fields += [f"{k} [{units.get(k, '1')}]" for k in self.columns]
        return fields

    def write_csv(self, path: str):
        """Write the ledger with round-trip-exact decimal floats."""
        if len(self) == 0:
            raise ValueError("refusing to write an empty ledger")
        cols = [self.index] + list(self.columns.values())
        tmp = path + ".tmp"
        with open(tmp, "w", newline="") as fh:
            fh.write(",".join(self.header_fields()) + "\n")
            for i in range(len(self)):
                fh.write(",".join(repr(float(c[i])) for c in cols) + "\n")
        os.replace(tmp, path)


def emit_series(ledger: Ledger, path: str):
    """CSV export: header with unit annotations, fixed column order,
    full-precision floats."""
    ledger.write_csv(path)
