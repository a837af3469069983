"""Audit reports: verdicts, violation lists, and deterministic JSON emission."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# a check is inconclusive when fewer admissible configurations survive
MIN_ADMISSIBLE = 100


@dataclass(frozen=True)
class Violation:
    witness: dict
    lhs: float
    rhs: float
    gap: float

    def to_json(self) -> dict:
        return {"witness": self.witness, "lhs": self.lhs, "rhs": self.rhs,
                "gap": self.gap}


@dataclass
class CheckReport:
    """Outcome of one audit over one space at one curvature and bound.

    ``verdict`` is ``fail`` exactly when violations beyond tolerance exist,
    ``inconclusive`` when fewer than the minimum number of admissible
    configurations survived, ``pass`` otherwise.
    """

    space: str
    k: float
    bound: str  # "below" | "above" | "none"
    variant: str
    samples: int
    admissible: int
    seed: int
    tolerance: float
    violations: list[Violation] = field(default_factory=list)
    verdict: str = PASS
    notes: dict = field(default_factory=dict)
    # per-comparison trace (witness, lhs, rhs, gap) for CSV export; not
    # part of the JSON schema
    sample_rows: list = field(default_factory=list, repr=False)

    @classmethod
    def conclude(cls, *, space, k, bound, variant, samples, admissible, seed,
                 tolerance, violations, notes=None,
                 min_admissible=MIN_ADMISSIBLE) -> "CheckReport":
        if admissible < min_admissible:
            verdict = INCONCLUSIVE
        elif violations:
            verdict = FAIL
        else:
            verdict = PASS
        return cls(space=space, k=k, bound=bound, variant=variant, samples=samples,
                   admissible=admissible, seed=seed, tolerance=tolerance,
                   violations=list(violations), verdict=verdict, notes=notes or {})

    def to_json(self) -> dict:
        doc = {
            "space": self.space,
            "k": self.k,
            "bound": self.bound,
            "variant": self.variant,
            "samples": self.samples,
            "admissible": self.admissible,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": [v.to_json() for v in self.violations],
            "verdict": self.verdict,
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc

    def dumps(self) -> str:
        return dumps_report(self.to_json())


def dumps_report(doc) -> str:
    """Key-sorted, newline-terminated JSON; byte-identical for equal inputs."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
