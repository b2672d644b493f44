"""Machine-readable reports and plot-data emission."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .bounds import BoundReport

HISTOGRAM_HEADER = ("theta_bin", "empirical_mass", "st_mass")


def form_descriptor(form, label=""):
    if form is None:
        return None
    return {"k": form.k, "N": form.N, "Q": form.Q, "squarefree_level": form.squarefree_level,
            "elliptic": form.elliptic, "label": label}


@dataclass
class ReportDocument:
    tool_version: str
    form: Optional[dict]
    command: str
    inputs: dict
    bounds: list = field(default_factory=list)
    empirical: dict = field(default_factory=dict)
    timing: Optional[dict] = None

    def add(self, report: BoundReport):
        self.bounds.append(report)
        return report

    @property
    def all_satisfied(self):
        """True iff every flag that was evaluated is true."""
        return all(b.satisfied is not False for b in self.bounds)

    def to_dict(self):
        return {"tool_version": self.tool_version, "form": self.form, "command": self.command,
                "inputs": self.inputs, "bounds": [b.to_dict() for b in self.bounds],
                "empirical": self.empirical, "timing": self.timing}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d):
        return cls(d["tool_version"], d["form"], d["command"], d["inputs"],
                   [BoundReport.from_dict(b) for b in d["bounds"]], d["empirical"], d["timing"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def load_schema():
    with resources.files("satotate").joinpath("data/report.schema.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def validate_report(payload):
    """Validate a report dict against the shipped schema (needs ``jsonschema``)."""
    import jsonschema

    jsonschema.validate(payload, load_schema())


def write_histogram_csv(path, edges, empirical, st_mass):
    """Rows are bin centres with empirical and Sato-Tate mass per bin."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(HISTOGRAM_HEADER) + "\n")
        for lo, hi, e, s in zip(edges[:-1], edges[1:], empirical, st_mass):
            fh.write(f"{(lo + hi) / 2:.17g},{e:.17g},{s:.17g}\n")
