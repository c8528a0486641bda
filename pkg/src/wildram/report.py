"""Classification records shared by the filtration, genus and CLI layers."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction


class Status(enum.Enum):
    FORMULA_ONLY = "formula-only"
    ORACLE_CONFIRMED = "oracle-confirmed"
    UNDETERMINED = "undetermined"
    DISCREPANCY = "discrepancy"

    @property
    def exit_code(self):
        return {
            Status.FORMULA_ONLY: 0,
            Status.ORACLE_CONFIRMED: 0,
            Status.UNDETERMINED: 2,
            Status.DISCREPANCY: 3,
        }[self]


def _jump_to_json(j):
    j = Fraction(j)
    return int(j) if j.denominator == 1 else f"{j.numerator}/{j.denominator}"


def _jump_from_json(v):
    return Fraction(v) if isinstance(v, int) else Fraction(v)


@dataclass
class RamReport:
    """Full classification record for an extension, compositum or cover."""

    group: str
    case: str
    upper_jumps: tuple = ()
    lower_jumps: tuple = ()
    orders: tuple = ()
    different_degree: int | None = None
    genus: int | None = None
    status: Status = Status.FORMULA_ONLY
    notes: tuple = ()

    def __post_init__(self):
        self.upper_jumps = tuple(Fraction(j) for j in self.upper_jumps)
        self.lower_jumps = tuple(Fraction(j) for j in self.lower_jumps)
        self.orders = tuple(int(o) for o in self.orders)
        self.notes = tuple(self.notes)
        for seq in (self.upper_jumps, self.lower_jumps):
            assert all(a < b for a, b in zip(seq, seq[1:])), "jumps must increase"

    def with_notes(self, *extra):
        self.notes = self.notes + tuple(extra)
        return self

    def to_json_dict(self):
        return {
            "group": self.group,
            "case": self.case,
            "upper_jumps": [_jump_to_json(j) for j in self.upper_jumps],
            "lower_jumps": [_jump_to_json(j) for j in self.lower_jumps],
            "orders": list(self.orders),
            "different_degree": self.different_degree,
            "genus": self.genus,
            "status": self.status.value,
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(", ", ": ")) + "\n"

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            group=d["group"],
            case=d["case"],
            upper_jumps=tuple(_jump_from_json(v) for v in d["upper_jumps"]),
            lower_jumps=tuple(_jump_from_json(v) for v in d["lower_jumps"]),
            orders=tuple(d["orders"]),
            different_degree=d["different_degree"],
            genus=d["genus"],
            status=Status(d["status"]),
            notes=tuple(d["notes"]),
        )

    def to_text(self):
        lines = [
            f"group:            {self.group}",
            f"case:             {self.case}",
            f"upper jumps:      {_fmt_jumps(self.upper_jumps)}",
            f"lower jumps:      {_fmt_jumps(self.lower_jumps)}",
            f"filtration orders: {list(self.orders) if self.orders else '-'}",
            f"different degree: {self.different_degree if self.different_degree is not None else '-'}",
        ]
        if self.genus is not None:
            lines.append(f"genus:            {self.genus}")
        lines.append(f"status:           {self.status.value}")
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


def _fmt_jumps(js):
    if not js:
        return "-"
    return ", ".join(str(int(j)) if j.denominator == 1 else str(j) for j in js)
