"""Deterministic sweep reports with JSON and CSV serialization.

Canonical bytes exclude per-cell elapsed times, so reports from repeated
runs with the same inputs and seed compare byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ReportCell:
    params: tuple[tuple[str, object], ...]
    status: str  # "pass" | "fail" | "expected-fail" | "skip"
    outcome: tuple[tuple[str, object], ...]
    elapsed: float = 0.0

    @classmethod
    def of(cls, params: dict, status: str, outcome: dict, elapsed: float = 0.0):
        return cls(
            tuple(sorted(params.items())),
            status,
            tuple(sorted(outcome.items())),
            elapsed,
        )

    def as_dict(self, include_elapsed: bool = False) -> dict:
        d = {
            "params": dict(self.params),
            "status": self.status,
            "outcome": dict(self.outcome),
        }
        if include_elapsed:
            d["elapsed"] = self.elapsed
        return d


@dataclass(frozen=True)
class SweepReport:
    command: str
    params: tuple[tuple[str, object], ...]
    cells: tuple[ReportCell, ...]
    version: str
    seed: int | None = None

    @classmethod
    def of(cls, command, params: dict, cells, version, seed=None):
        return cls(command, tuple(sorted(params.items())), tuple(cells), version, seed)

    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "expected-fail": 0, "skip": 0}
        for cell in self.cells:
            counts[cell.status] += 1
        return counts

    def ok(self) -> bool:
        return self.summary()["fail"] == 0

    def as_dict(self, include_elapsed: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": self.version,
            "command": self.command,
            "params": dict(self.params),
            "seed": self.seed,
            "summary": self.summary(),
            "cells": [c.as_dict(include_elapsed) for c in self.cells],
        }

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps(
            self.as_dict(include_elapsed), sort_keys=True, indent=2
        ) + "\n"

    def to_csv(self) -> str:
        keys_p = sorted({k for c in self.cells for k, _ in c.params})
        keys_o = sorted({k for c in self.cells for k, _ in c.outcome})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys_p + ["status"] + keys_o)
        for c in self.cells:
            p, o = dict(c.params), dict(c.outcome)
            writer.writerow(
                [p.get(k, "") for k in keys_p]
                + [c.status]
                + [o.get(k, "") for k in keys_o]
            )
        return buf.getvalue()
