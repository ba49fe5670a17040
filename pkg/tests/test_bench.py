"""Synthetic generation, scaling measurements, and the method comparison."""

import json

import numpy as np
import pytest

from fpqm.bench import (
    BudgetError,
    SynthSpec,
    compare_methods,
    node_envelope,
    scaling_run,
    synth_generate,
)

STAR_SPEC = SynthSpec(
    n=10,
    domain_sizes=(2,) * 9 + (6,),
    m=400,
    dependency_plan=tuple((9, j, 1.0) for j in range(9)),
    seed=7,
)


class TestSynthSpec:
    def test_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            SynthSpec(
                n=3,
                domain_sizes=(2, 2, 2),
                m=10,
                dependency_plan=((0, 1, 0.5), (1, 2, 0.5), (2, 0, 0.5)),
            )

    def test_double_incoming_edge_rejected(self):
        with pytest.raises(ValueError, match="more than one"):
            SynthSpec(
                n=3,
                domain_sizes=(2, 2, 2),
                m=10,
                dependency_plan=((0, 2, 0.5), (1, 2, 0.5)),
            )

    def test_determinism_range_checked(self):
        with pytest.raises(ValueError, match="determinism"):
            SynthSpec(n=2, domain_sizes=(2, 2), m=10, dependency_plan=((0, 1, 1.5),))

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            SynthSpec(n=3, domain_sizes=(2, 2), m=10)
        with pytest.raises(ValueError):
            SynthSpec(n=2, domain_sizes=(2, 1), m=10)
        with pytest.raises(ValueError):
            SynthSpec(n=2, domain_sizes=(2, 2), m=0)


class TestGeneration:
    def test_seed_reproducibility(self):
        spec = SynthSpec(
            n=4, domain_sizes=(3, 2, 4, 2), m=50,
            dependency_plan=((0, 1, 0.7), (1, 2, 0.4)), seed=123,
        )
        t1, e1 = synth_generate(spec)
        t2, e2 = synth_generate(spec)
        assert np.array_equal(t1.rows, t2.rows)
        assert np.array_equal(e1.rows, e2.rows)

    def test_different_seed_differs(self):
        base = dict(n=4, domain_sizes=(3, 2, 4, 2), m=50,
                    dependency_plan=((0, 1, 0.7),))
        t1, _ = synth_generate(SynthSpec(seed=1, **base))
        t2, _ = synth_generate(SynthSpec(seed=2, **base))
        assert not np.array_equal(t1.rows, t2.rows)

    def test_full_determinism_is_functional(self):
        spec = SynthSpec(
            n=3, domain_sizes=(4, 3, 2), m=200,
            dependency_plan=((0, 1, 1.0), (1, 2, 1.0)), seed=5,
        )
        train, test = synth_generate(spec)
        for rows in (train.rows, test.rows):
            for src, tgt in ((0, 1), (1, 2)):
                mapping = {}
                for r in rows:
                    mapping.setdefault(int(r[src]), set()).add(int(r[tgt]))
                assert all(len(v) == 1 for v in mapping.values())

    def test_shapes_and_schema(self):
        spec = SynthSpec(n=3, domain_sizes=(2, 3, 2), m=25, seed=0)
        train, test = synth_generate(spec)
        assert train.rows.shape == test.rows.shape == (25, 3)
        assert [a.name for a in train.schema] == ["a0", "a1", "a2"]
        assert train.schema[1].domain == ("v0", "v1", "v2")


class TestEnvelopeAndBudget:
    def test_envelope_formula(self):
        # sorted domains 3,2,2,2,2: level widths 1, 3, 6, 12, 24
        assert node_envelope((2, 3, 2, 2, 2)) == 46
        assert node_envelope((2, 2)) == 3
        assert node_envelope((4,)) == 1

    def test_envelope_bounds_real_tree(self, linear_model):
        assert linear_model.rule_count <= node_envelope((2, 3, 2, 2, 2))

    def test_budget_refusal_names_estimate(self):
        spec = SynthSpec(n=8, domain_sizes=(6,) * 8, m=10, seed=0)
        estimate = node_envelope(spec.domain_sizes)
        with pytest.raises(BudgetError, match=str(estimate)):
            scaling_run([spec], node_budget=1000)


class TestScalingRun:
    def test_counters_and_outputs(self):
        specs = [
            SynthSpec(n=4, domain_sizes=(2, 3, 2, 2), m=40,
                      dependency_plan=((0, 1, 0.9),), seed=11),
            SynthSpec(n=5, domain_sizes=(2,) * 5, m=60,
                      dependency_plan=((0, 1, 1.0), (1, 2, 1.0)), seed=12),
        ]
        report = scaling_run(specs, sigma=0.8, beta=0.5)
        assert len(report.rows) == 2
        for row, spec in zip(report.rows, specs):
            sizes = spec.domain_sizes
            expected = sum(sizes) ** 2 - sum(k * k for k in sizes)
            assert row.selection_probes == expected
            assert row.session_visits == spec.n * spec.m
            assert row.scoring_cells == spec.n * spec.m
            assert row.rule_count <= row.envelope
        doc = json.loads(report.to_json())
        assert len(doc["rows"]) == 2
        csv_text = report.to_csv()
        assert csv_text.splitlines()[0].startswith("n,m,domain_sizes")

    def test_timing_free_output_is_deterministic(self):
        spec = SynthSpec(n=3, domain_sizes=(2, 2, 2), m=30, seed=3)
        a = scaling_run([spec]).to_json(with_timings=False)
        b = scaling_run([spec]).to_json(with_timings=False)
        assert a == b
        assert "seconds" not in a


class TestComparison:
    def test_star_plan_favours_influence_tree(self):
        train, test = synth_generate(STAR_SPEC)
        report = compare_methods(train, test, sigma=0.8, beta=0.5)
        assert report.fpqm.arr > report.baseline.arr
        assert report.fpqm.aar >= 0.95
        assert report.fpqm.arr == pytest.approx(0.9)

    def test_report_dict_shape(self, train_ds, test_ds):
        report = compare_methods(train_ds, test_ds)
        doc = report.to_dict()
        assert set(doc) == {"sigma", "beta", "fpqm", "baseline"}
        assert doc["fpqm"]["aar"] == 0.75
