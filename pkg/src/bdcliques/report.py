"""Verification reports and their line-delimited JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

SCHEMA = "bdcliques.report/1"


@dataclass
class Case:
    id: str
    passed: bool
    values: dict[str, Any] = field(default_factory=dict)
    counterexample: str | None = None


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any]
    citations: list[str]
    cases: list[Case] = field(default_factory=list)
    runtime: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def add(self, id: str, passed: bool, counterexample: str | None = None, **values: Any) -> Case:
        if not passed and counterexample is None:
            # failures always carry something to reproduce them from
            counterexample = json.dumps(values, sort_keys=True, default=str)
        case = Case(id, bool(passed), values, counterexample)
        self.cases.append(case)
        return case

    def group(self, prefix: str) -> list[Case]:
        return [c for c in self.cases if c.id.startswith(prefix)]

    # serialisation ------------------------------------------------------------

    def to_records(self, timing: bool = False) -> list[dict[str, Any]]:
        head: dict[str, Any] = {
            "schema": SCHEMA,
            "kind": "report",
            "suite": self.suite,
            "params": self.params,
            "citations": self.citations,
            "passed": self.passed,
            "cases": len(self.cases),
            "failures": len(self.failures),
        }
        if timing and self.runtime is not None:
            head["runtime"] = round(self.runtime, 3)
        recs = [head]
        for c in self.cases:
            rec: dict[str, Any] = {"schema": SCHEMA, "kind": "case", "suite": self.suite,
                                   "id": c.id, "passed": c.passed, "values": c.values}
            if c.counterexample is not None:
                rec["counterexample"] = c.counterexample
            recs.append(rec)
        return recs

    def to_jsonl(self, timing: bool = False) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.to_records(timing))


def from_records(records: Iterable[dict[str, Any]]) -> list[VerificationReport]:
    reports: list[VerificationReport] = []
    for rec in records:
        if rec.get("schema") != SCHEMA:
            raise ValueError(f"unknown schema {rec.get('schema')!r}")
        if rec["kind"] == "report":
            reports.append(VerificationReport(rec["suite"], rec["params"], list(rec["citations"]),
                                              runtime=rec.get("runtime")))
        elif rec["kind"] == "case":
            if not reports or reports[-1].suite != rec["suite"]:
                raise ValueError("case record without a preceding report header")
            reports[-1].cases.append(Case(rec["id"], rec["passed"], rec["values"],
                                          rec.get("counterexample")))
        else:
            raise ValueError(f"unknown record kind {rec['kind']!r}")
    return reports


def parse_jsonl(lines: Iterable[str]) -> list[VerificationReport]:
    return from_records(json.loads(line) for line in lines if line.strip())


def render_table(rows: list[list[Any]], header: list[str]) -> str:
    cells = [[str(x) for x in header]] + [[str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def summarize(report: VerificationReport) -> Iterator[str]:
    status = "PASS" if report.passed else "FAIL"
    extra = f" in {report.runtime:.2f}s" if report.runtime is not None else ""
    yield (f"[{status}] {report.suite}: {len(report.cases) - len(report.failures)}"
           f"/{len(report.cases)} cases{extra}  ({', '.join(report.citations)})")
    for case in report.failures[:20]:
        yield f"    FAIL {case.id}: {case.values}  counterexample={case.counterexample}"
    if len(report.failures) > 20:
        yield f"    ... {len(report.failures) - 20} more failures"
