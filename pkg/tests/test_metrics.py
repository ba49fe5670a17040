"""Evaluation scoring: golden values, conventions, and a vectorized oracle."""

from fractions import Fraction

import numpy as np
import pytest

from fpqm import OpCounter, evaluate, run_batch
from fpqm.dataset import DataError
from fpqm.metrics import per_respondent_series, report_json, series_csv
from fpqm.session import SessionResult

TOL = 1e-12

# frozen from the worked example at sigma 0.8, beta 0.5:
#   respondent 1 predicted 4 with 2 right, respondent 2 predicted 3, all right
F1 = Fraction(20, 37)   # 1.25 * (1/2) * (4/5) / (0.25/2 + 4/5)
F2 = Fraction(15, 17)   # 1.25 * 1 * (3/5) / (1/4 + 3/5)


def oracle_report(results, truth, beta):
    """Matrix-form reimplementation used as an independent check."""
    truth = np.asarray(truth)
    final = np.array([r.final_values for r in results])
    ind = np.array([r.indicators for r in results])
    k = (final == truth).astype(int)
    predicted = ind.sum(axis=1)
    ar = np.where(predicted == 0, 1.0, (k * ind).sum(axis=1) / np.maximum(predicted, 1))
    rr = predicted / truth.shape[1]
    b2 = beta * beta
    denom = b2 * ar + rr
    f = np.where(denom == 0, 0.0, (1 + b2) * ar * rr / np.where(denom == 0, 1.0, denom))
    return {
        "k": k, "ar": ar, "rr": rr, "f": f,
        "aar": ar.mean(), "sar": ar.std(), "arr": rr.mean(),
        "srr": rr.std(), "af": f.mean(), "sf": f.std(),
    }


@pytest.fixture(scope="module")
def golden(linear_model, test_ds):
    results = [run_batch(linear_model, [int(v) for v in row], 0.8) for row in test_ds.rows]
    return results, evaluate(results, test_ds, 0.5)


class TestGoldenValues:
    def test_correctness_matrix(self, golden):
        _, report = golden
        assert report.correctness == ((0, 1, 1, 1, 0), (1, 1, 1, 1, 1))

    def test_per_respondent_rates(self, golden):
        _, report = golden
        assert report.ar == (0.5, 1.0)
        assert report.rr == (0.8, 0.6)
        assert abs(report.f[0] - float(F1)) < TOL
        assert abs(report.f[1] - float(F2)) < TOL

    def test_aggregates(self, golden):
        _, report = golden
        assert report.aar == 0.75
        assert report.arr == pytest.approx(0.7, abs=TOL)
        assert report.sar == 0.25
        assert abs(report.srr - 0.1) < TOL
        assert abs(report.af - float((F1 + F2) / 2)) < TOL
        assert abs(report.sf - float((F2 - F1) / 2)) < TOL

    def test_af_matches_published_rounding(self, golden):
        _, report = golden
        assert abs(report.af - 0.7114) < 5e-5

    def test_against_oracle(self, golden):
        results, report = golden
        want = oracle_report(results, np.array([r for r in TEST_TRUTH]), 0.5)
        assert np.array_equal(np.array(report.correctness), want["k"])
        for name in ("ar", "rr", "f"):
            assert np.allclose(getattr(report, name), want[name], atol=TOL)
        for name in ("aar", "sar", "arr", "srr", "af", "sf"):
            assert abs(getattr(report, name) - want[name]) < TOL


TEST_TRUTH = [[1, 1, 0, 1, 0], [1, 0, 1, 1, 0]]


class TestConventions:
    def test_no_predictions_counts_as_accurate(self, linear_model, test_ds):
        results = [run_batch(linear_model, [int(v) for v in r], 1.01) for r in test_ds.rows]
        report = evaluate(results, test_ds, 0.5)
        assert report.ar == (1.0, 1.0)
        assert report.rr == (0.0, 0.0)
        assert report.f == (0.0, 0.0)
        assert (report.aar, report.arr, report.af) == (1.0, 0.0, 0.0)

    def test_beta_weighting_moves_f(self, golden, test_ds):
        results, _ = golden
        heavier_recall = evaluate(results, test_ds, 2.0)
        lighter = evaluate(results, test_ds, 0.25)
        assert heavier_recall.af != lighter.af

    def test_beta_must_be_positive(self, golden, test_ds):
        results, _ = golden
        with pytest.raises(ValueError):
            evaluate(results, test_ds, 0.0)

    def test_cell_visit_counter(self, golden, test_ds):
        results, _ = golden
        counter = OpCounter()
        evaluate(results, test_ds, 0.5, counter)
        assert counter.cell_visits == test_ds.n_rows * test_ds.n_attributes == 10


class TestValidation:
    def test_row_count_mismatch(self, golden, test_ds):
        results, _ = golden
        with pytest.raises(DataError):
            evaluate(results[:1], test_ds, 0.5)

    def test_width_mismatch(self, test_ds):
        narrow = SessionResult((0,), (0,), (1.0,), (1,))
        with pytest.raises(DataError):
            evaluate([narrow, narrow], test_ds, 0.5)

    def test_zero_respondents(self):
        with pytest.raises(DataError):
            evaluate([], np.zeros((0, 3), dtype=int), 0.5)


class TestExports:
    def test_series_rows(self, golden):
        _, report = golden
        series = per_respondent_series(report)
        assert series[0][0] == 1 and series[1][0] == 2
        assert series[0][1:] == (report.ar[0], report.rr[0], report.f[0])

    def test_csv_shape(self, golden):
        _, report = golden
        lines = series_csv(report).strip().split("\n")
        assert lines[0] == "respondent,accuracy_rate,reduction_rate,f_score"
        assert len(lines) == 3
        assert lines[1].startswith("1,0.5,0.8,")

    def test_json_canonical(self, golden):
        _, report = golden
        text = report_json(report)
        assert text == report_json(report)
        import json

        doc = json.loads(text)
        assert doc["aar"] == 0.75
        assert doc["beta"] == 0.5
