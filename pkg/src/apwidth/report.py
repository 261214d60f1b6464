"""Aggregated results of randomized or exhaustive sweeps.

Reports serialize to CSV and JSON.  Sweep reports are a single record of
parameters, trial count, observed maximum, bound, violation count, and
seed; tabulated reports carry explicit rows and emit them as the CSV body.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

__all__ = ["ExperimentReport"]


@dataclass(frozen=True)
class ExperimentReport:
    kind: str
    params: Mapping[str, Any]
    trials: int
    observed_max: int
    bound: int
    violations: int
    seed: int
    histogram: Mapping[int, int] = field(default_factory=dict)
    rows: tuple[Mapping[str, Any], ...] = ()
    row_fields: tuple[str, ...] = ()

    def to_json(self) -> str:
        payload: dict[str, Any] = {
            "kind": self.kind,
            "params": dict(self.params),
            "trials": self.trials,
            "observed_max": self.observed_max,
            "bound": self.bound,
            "violations": self.violations,
            "seed": self.seed,
            "histogram": [[k, self.histogram[k]] for k in sorted(self.histogram)],
        }
        if self.rows:
            payload["rows"] = [dict(r) for r in self.rows]
        return json.dumps(payload, sort_keys=True)

    def to_csv(self) -> str:
        if self.rows:
            fields = self.row_fields or tuple(self.rows[0].keys())
            lines = [",".join(fields)]
            for row in self.rows:
                lines.append(",".join(_cell(row[f]) for f in fields))
            return "\n".join(lines)
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        header = "parameters,trials,observed_max,bound,violations,seed"
        record = (
            f"{params},{self.trials},{self.observed_max},"
            f"{self.bound},{self.violations},{self.seed}"
        )
        return f"{header}\n{record}"


def _cell(value: Any) -> str:
    return "" if value is None else str(value)
