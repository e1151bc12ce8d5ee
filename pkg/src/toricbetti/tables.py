from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Mapping


class Provenance(Enum):
    PRINTED_FORMULA = "PrintedFormula"
    NUMERATOR_RECONSTRUCTION = "NumeratorReconstruction"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers k_{p,q} for p = 0..r and q = 0..2.

    Missing cells read as zero.  Entries are never negative.
    """

    r: int
    entries: Mapping[tuple[int, int], int]
    provenance: Provenance

    def __post_init__(self):
        clean = {}
        for (p, q), v in self.entries.items():
            if v < 0:
                raise ValueError(f"negative table entry k_{{{p},{q}}} = {v}")
            if p > self.r and v:
                raise ValueError(f"nonzero entry beyond p = r: k_{{{p},{q}}}")
            if v:
                clean[(p, q)] = v
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def rows(self) -> range:
        return range(3)

    def row(self, q: int) -> list[int]:
        return [self[p, q] for p in range(self.r + 1)]

    def numerator(self) -> list[int]:
        """Coefficients of sum_p (-1)^p sum_q k_{p,q} t^(p+q), degrees 0..r+3."""
        coeffs = [0] * (self.r + 4)
        for (p, q), v in self.entries.items():
            coeffs[p + q] += (-1) ** p * v
        return coeffs

    def same_entries(self, other: BettiTable) -> bool:
        return self.r == other.r and dict(self.entries) == dict(other.entries)

    def format(self) -> str:
        """Text layout with q rows and p columns, zeros shown as '.'."""
        cols = list(range(self.r + 1))
        cells = [[str(self[p, q]) if self[p, q] else "." for p in cols] for q in self.rows]
        widths = [max(len(str(p)), *(len(row[p]) for row in cells)) for p in cols]
        head = "   | " + " ".join(str(p).rjust(w) for p, w in zip(cols, widths))
        lines = [head, "-" * len(head)]
        for q, row in zip(self.rows, cells):
            lines.append(f"{q:>2} | " + " ".join(c.rjust(w) for c, w in zip(row, widths)))
        return "\n".join(lines)

    __str__ = format
