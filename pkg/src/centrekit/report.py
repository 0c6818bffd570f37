"""Uniform result records for law checks.

Every suite emits one record per law instance (law name, grades, sets),
with a witness and both sides kept when the instance fails.  Reports
render as text or JSON and parse back losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class LawRecord:
    law: str
    grades: tuple[str, ...] = ()
    sets: tuple[str, ...] = ()
    ok: bool = True
    witness: str | None = None
    lhs: str | None = None
    rhs: str | None = None
    note: str = ""

    def line(self) -> str:
        head = "pass" if self.ok else "FAIL"
        bits = [f"{head}  {self.law}"]
        if self.grades:
            bits.append("grades=" + ",".join(self.grades))
        if self.sets:
            bits.append("sets=" + ",".join(self.sets))
        if not self.ok:
            if self.witness is not None:
                bits.append(f"witness={self.witness}")
            if self.lhs is not None:
                bits.append(f"lhs={self.lhs}")
            if self.rhs is not None:
                bits.append(f"rhs={self.rhs}")
        if self.note:
            bits.append(f"note={self.note}")
        return "  ".join(bits)

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "grades": list(self.grades),
            "sets": list(self.sets),
            "ok": self.ok,
            "witness": self.witness,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "note": self.note,
        }

    @staticmethod
    def from_dict(d: dict) -> "LawRecord":
        return LawRecord(
            law=d["law"],
            grades=tuple(d["grades"]),
            sets=tuple(d["sets"]),
            ok=d["ok"],
            witness=d["witness"],
            lhs=d["lhs"],
            rhs=d["rhs"],
            note=d["note"],
        )


@dataclass
class Report:
    title: str
    records: list[LawRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def add(self, record: LawRecord) -> None:
        self.records.append(record)

    def failures(self) -> list[LawRecord]:
        return [r for r in self.records if not r.ok]

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.records:
            if prefix:
                r = LawRecord(
                    law=f"{prefix}{r.law}",
                    grades=r.grades,
                    sets=r.sets,
                    ok=r.ok,
                    witness=r.witness,
                    lhs=r.lhs,
                    rhs=r.rhs,
                    note=r.note,
                )
            self.records.append(r)

    def compare(self, law, grades, sets, f, g, note="") -> LawRecord:
        """Record pointwise equality of two FinFns with a common domain."""
        if f.dom != g.dom:
            raise ValueError(f"{law}: domains differ: {f.dom.name} vs {g.dom.name}")
        rec = LawRecord(law=law, grades=tuple(grades), sets=tuple(sets), note=note)
        for tok in f.dom:
            if f(tok) != g(tok):
                rec.ok = False
                rec.witness = tok
                rec.lhs = f(tok)
                rec.rhs = g(tok)
                break
        self.records.append(rec)
        return rec

    def summary(self) -> str:
        bad = len(self.failures())
        verdict = "OK" if bad == 0 else f"{bad} failing"
        return f"{self.title}: {len(self.records)} checks, {verdict}"

    def to_text(self, failures_only: bool = True) -> str:
        lines = [self.summary()]
        for r in self.records:
            if r.ok and failures_only:
                continue
            lines.append("  " + r.line())
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"title": self.title, "ok": self.ok, "records": [r.to_dict() for r in self.records]},
            indent=2,
            sort_keys=False,
        )

    @staticmethod
    def from_json(text: str) -> "Report":
        data = json.loads(text)
        rep = Report(data["title"])
        for d in data["records"]:
            rep.add(LawRecord.from_dict(d))
        return rep
