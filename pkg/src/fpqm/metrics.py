"""Accuracy and reduction scoring of finished interview sessions.

Per respondent i over n attributes, with indicator I (1 = predicted) and
correctness K (1 = matches the withheld truth):

* accuracy rate  AR_i = sum(K*I) / sum(I), defined as 1 when nothing was
  predicted (no prediction is ever wrong);
* reduction rate RR_i = sum(I) / n, the share of questions saved;
* F_beta combines them with beta weighting accuracy, default beta = 0.5.

Aggregates are plain means and population standard deviations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import DataError, Dataset
from .influence import OpCounter
from .session import SessionResult


@dataclass(frozen=True)
class EvaluationReport:
    correctness: tuple[tuple[int, ...], ...]
    ar: tuple[float, ...]
    rr: tuple[float, ...]
    f: tuple[float, ...]
    aar: float
    sar: float
    arr: float
    srr: float
    af: float
    sf: float
    beta: float

    def to_dict(self) -> dict:
        return {
            "correctness": [list(row) for row in self.correctness],
            "ar": list(self.ar),
            "rr": list(self.rr),
            "f": list(self.f),
            "aar": self.aar,
            "sar": self.sar,
            "arr": self.arr,
            "srr": self.srr,
            "af": self.af,
            "sf": self.sf,
            "beta": self.beta,
        }


def _truth_rows(truth: Dataset | np.ndarray) -> np.ndarray:
    rows = truth.rows if isinstance(truth, Dataset) else np.asarray(truth, dtype=np.int64)
    if rows.ndim != 2:
        raise DataError("truth must be a 2-d matrix")
    return rows


def evaluate(
    results: Sequence[SessionResult],
    truth: Dataset | np.ndarray,
    beta: float = 0.5,
    counter: OpCounter | None = None,
) -> EvaluationReport:
    """Score session results against the true answer rows.

    The correctness matrix is filled cell by cell (the counter tallies one
    visit per cell), then each respondent's rates and F score follow, then
    the aggregates.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    rows = _truth_rows(truth)
    m, n = rows.shape
    if m == 0:
        raise DataError("cannot evaluate zero respondents")
    if len(results) != m:
        raise DataError(f"{len(results)} results for {m} truth rows")
    for r in results:
        if len(r.final_values) != n:
            raise DataError("result width does not match truth width")

    correctness = []
    for i in range(m):
        k_row = []
        for j in range(n):
            if counter is not None:
                counter.cell_visits += 1
            k_row.append(1 if results[i].final_values[j] == int(rows[i, j]) else 0)
        correctness.append(tuple(k_row))

    ar, rr, f = [], [], []
    b2 = beta * beta
    for i in range(m):
        hits = 0
        predicted = 0
        for j in range(n):
            if results[i].indicators[j] == 1:
                predicted += 1
                hits += correctness[i][j]
        ar_i = 1.0 if predicted == 0 else hits / predicted
        rr_i = predicted / n
        denom = b2 * ar_i + rr_i
        f_i = 0.0 if denom == 0 else (1 + b2) * ar_i * rr_i / denom
        ar.append(ar_i)
        rr.append(rr_i)
        f.append(f_i)

    return EvaluationReport(
        correctness=tuple(correctness),
        ar=tuple(ar),
        rr=tuple(rr),
        f=tuple(f),
        aar=float(np.mean(ar)),
        sar=float(np.std(ar)),
        arr=float(np.mean(rr)),
        srr=float(np.std(rr)),
        af=float(np.mean(f)),
        sf=float(np.std(f)),
        beta=float(beta),
    )


def per_respondent_series(report: EvaluationReport) -> list[tuple[int, float, float, float]]:
    """Rows of (1-based respondent id, AR, RR, F)."""
    return [
        (i + 1, report.ar[i], report.rr[i], report.f[i])
        for i in range(len(report.ar))
    ]


def series_csv(report: EvaluationReport) -> str:
    lines = ["respondent,accuracy_rate,reduction_rate,f_score"]
    for rid, ar, rr, f in per_respondent_series(report):
        lines.append(f"{rid},{ar!r},{rr!r},{f!r}")
    return "\n".join(lines) + "\n"


def report_json(report: EvaluationReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"))
