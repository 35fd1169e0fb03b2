# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import pandas as pd

from pcli_lab.logger import init_logger

logger = init_logger(__name__)

CSV_COLUMNS = [
    "experiment",
    "label",
    "kappa",
    "k",
    "measured",
    "bound",
    "margin",
    "pass",
]


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    label: str
    kappa: Optional[float]
    k: Optional[int]
    measured: float
    bound: float
    margin: float
    passed: bool
    tolerance: float = 0.0

    @classmethod
    def at_least(
        cls,
        experiment: str,
        label: str,
        kappa: Optional[float],
        k: Optional[int],
        measured: float,
        bound: float,
        tolerance: float = 0.0,
    ) -> "ReportRow":
        """Passes when ``measured`` is not below ``bound``."""
        return cls.with_margin(
            experiment,
            label,
            kappa,
            k,
            measured,
            bound,
            measured - bound,
            tolerance,
        )

    @classmethod
    def at_most(
        cls,
        experiment: str,
        label: str,
        kappa: Optional[float],
        k: Optional[int],
        measured: float,
        bound: float,
        tolerance: float = 0.0,
    ) -> "ReportRow":
        """Passes when ``measured`` does not exceed ``bound``."""
        return cls.with_margin(
            experiment,
            label,
            kappa,
            k,
            measured,
            bound,
            bound - measured,
            tolerance,
        )

    @classmethod
    def with_margin(
        cls,
        experiment: str,
        label: str,
        kappa: Optional[float],
        k: Optional[int],
        measured: float,
        bound: float,
        margin: float,
        tolerance: float = 0.0,
    ) -> "ReportRow":
        margin = float(margin)
        # NaN margins fail
        passed = not math.isnan(margin) and margin >= -tolerance
        return cls(
            experiment=experiment,
            label=label,
            kappa=None if kappa is None else float(kappa),
            k=None if k is None else int(k),
            measured=float(measured),
            bound=float(bound),
            margin=margin,
            passed=passed,
            tolerance=float(tolerance),
        )

    def sort_key(self):
        return (
            self.experiment,
            self.label,
            self.kappa is not None,
            self.kappa or 0.0,
            self.k is not None,
            self.k or 0,
        )


@dataclass
class ExperimentReport:
    rows: List[ReportRow] = field(default_factory=list)
    # auxiliary tables written next to the main CSV as <stem>.<name>.csv
    extras: Dict[str, pd.DataFrame] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> List[ReportRow]:
        return [row for row in self.sorted_rows() if not row.passed]

    def sorted_rows(self) -> List[ReportRow]:
        return sorted(self.rows, key=ReportRow.sort_key)

    def extend(self, rows: Iterable[ReportRow]) -> None:
        self.rows.extend(rows)

    def merge(self, other: "ExperimentReport") -> "ExperimentReport":
        extras = dict(self.extras)
        extras.update(other.extras)
        return ExperimentReport(rows=self.rows + other.rows, extras=extras)

    def to_frame(self) -> pd.DataFrame:
        records = [
            (
                row.experiment,
                row.label,
                row.kappa,
                row.k,
                row.measured,
                row.bound,
                row.margin,
                row.passed,
            )
            for row in self.sorted_rows()
        ]
        frame = pd.DataFrame(records, columns=CSV_COLUMNS)
        frame["k"] = frame["k"].astype("Int64")
        return frame

    def to_csv(self, path: Optional[str] = None) -> str:
        text = self.to_frame().to_csv(index=False)
        if path is not None:
            with open(path, "w") as file:
                file.write(text)
            stem = path[:-4] if path.endswith(".csv") else path
            for name, frame in sorted(self.extras.items()):
                frame.to_csv(f"{stem}.{name}.csv", index=False)
            logger.info(f"Wrote {len(self.rows)} rows to {path}")
        return text
