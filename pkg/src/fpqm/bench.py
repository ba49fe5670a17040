"""Synthetic workloads: seeded generators, scaling measurements, comparisons.

Generated datasets follow a dependency plan, a list of (source, target,
determinism) edges.  Each target attribute copies a fixed random relabeling
of its source with probability ``determinism`` and draws uniformly
otherwise; attributes without an incoming edge are uniform.  Everything is
drawn from one seeded generator, so a spec reproduces its data exactly.

The scaling harness also cross-checks the analytical operation counts: the
selection pass probes exactly sum over ordered attribute pairs of
N_a * N_t probabilities, a session touches n nodes, and evaluation visits
m * n cells.
"""

from __future__ import annotations

import graphlib
import json
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baseline import build_forest, simulate_assessment
from .dataset import Attribute, Dataset
from .influence import OpCounter, best_split
from .metrics import EvaluationReport, evaluate
from .model import BuildConfig, build
from .session import Session, run_batch

DEFAULT_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic questionnaire population."""

    n: int
    domain_sizes: tuple[int, ...]
    m: int
    dependency_plan: tuple[tuple[int, int, float], ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain_sizes", tuple(self.domain_sizes))
        object.__setattr__(
            self,
            "dependency_plan",
            tuple((int(s), int(t), float(d)) for s, t, d in self.dependency_plan),
        )
        if self.n < 2:
            raise ValueError("need at least two attributes")
        if len(self.domain_sizes) != self.n:
            raise ValueError("domain_sizes length must equal n")
        if any(k < 2 for k in self.domain_sizes):
            raise ValueError("every domain needs at least two labels")
        if self.m < 1:
            raise ValueError("need at least one row")
        targets = set()
        for s, t, d in self.dependency_plan:
            if not (0 <= s < self.n and 0 <= t < self.n) or s == t:
                raise ValueError(f"bad dependency edge ({s}, {t})")
            if not 0.0 <= d <= 1.0:
                raise ValueError(f"determinism {d} outside [0, 1]")
            if t in targets:
                raise ValueError(f"attribute {t} has more than one incoming edge")
            targets.add(t)
        self._topo_order()  # raises on cycles

    def _topo_order(self) -> list[int]:
        sorter: graphlib.TopologicalSorter = graphlib.TopologicalSorter()
        for j in range(self.n):
            sorter.add(j)
        for s, t, _ in self.dependency_plan:
            sorter.add(t, s)
        try:
            return list(sorter.static_order())
        except graphlib.CycleError:
            raise ValueError("dependency plan contains a cycle") from None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "domain_sizes": list(self.domain_sizes),
            "m": self.m,
            "dependency_plan": [list(e) for e in self.dependency_plan],
            "seed": self.seed,
        }


def synth_generate(spec: SynthSpec) -> tuple[Dataset, Dataset]:
    """Draw a (train, test) pair of m rows each from one seeded stream."""
    rng = np.random.default_rng(spec.seed)
    incoming = {t: (s, d) for s, t, d in spec.dependency_plan}
    relabel = {
        (s, t): rng.integers(0, spec.domain_sizes[t], size=spec.domain_sizes[s])
        for s, t, _ in spec.dependency_plan
    }
    order = spec._topo_order()
    schema = tuple(
        Attribute(
            name=f"a{j}",
            domain=tuple(f"v{k}" for k in range(spec.domain_sizes[j])),
            index=j,
        )
        for j in range(spec.n)
    )

    def draw_rows() -> np.ndarray:
        rows = np.zeros((spec.m, spec.n), dtype=np.int64)
        for j in order:
            uniform = rng.integers(0, spec.domain_sizes[j], size=spec.m)
            if j in incoming:
                s, det = incoming[j]
                mapped = relabel[(s, j)][rows[:, s]]
                follow = rng.random(spec.m) < det
                rows[:, j] = np.where(follow, mapped, uniform)
            else:
                rows[:, j] = uniform
        return rows

    return Dataset(schema, draw_rows()), Dataset(schema, draw_rows())


def node_envelope(domain_sizes: Sequence[int]) -> int:
    """Upper bound on tree nodes: per level, the product of the largest domains."""
    sizes = sorted(domain_sizes, reverse=True)
    total, level_width = 0, 1
    for k in range(len(sizes)):
        total += level_width
        level_width *= sizes[k]
    return total


class BudgetError(RuntimeError):
    """A workload's estimated tree size exceeds the configured node budget."""


@dataclass(frozen=True)
class ScalingRow:
    spec: SynthSpec
    envelope: int
    rule_count: int
    selection_probes: int
    session_visits: int
    scoring_cells: int
    aar: float
    arr: float
    af: float
    build_seconds: float
    session_seconds: float
    eval_seconds: float

    def to_dict(self, with_timings: bool = True) -> dict:
        doc = {
            "n": self.spec.n,
            "m": self.spec.m,
            "domain_sizes": list(self.spec.domain_sizes),
            "seed": self.spec.seed,
            "envelope": self.envelope,
            "rule_count": self.rule_count,
            "selection_probes": self.selection_probes,
            "session_visits": self.session_visits,
            "scoring_cells": self.scoring_cells,
            "aar": self.aar,
            "arr": self.arr,
            "af": self.af,
        }
        if with_timings:
            doc.update(
                build_seconds=self.build_seconds,
                session_seconds=self.session_seconds,
                eval_seconds=self.eval_seconds,
            )
        return doc


_CSV_COLUMNS = [
    "n", "m", "domain_sizes", "seed", "envelope", "rule_count",
    "selection_probes", "session_visits", "scoring_cells", "aar", "arr", "af",
    "build_seconds", "session_seconds", "eval_seconds",
]


@dataclass(frozen=True)
class ScalingReport:
    rows: tuple[ScalingRow, ...]
    sigma: float
    beta: float

    def to_json(self, with_timings: bool = True) -> str:
        doc = {
            "sigma": self.sigma,
            "beta": self.beta,
            "rows": [r.to_dict(with_timings) for r in self.rows],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def to_csv(self, with_timings: bool = True) -> str:
        cols = _CSV_COLUMNS if with_timings else _CSV_COLUMNS[:-3]
        lines = [",".join(cols)]
        for r in self.rows:
            doc = r.to_dict(with_timings)
            doc["domain_sizes"] = "x".join(str(k) for k in doc["domain_sizes"])
            lines.append(",".join(repr(doc[c]) if isinstance(doc[c], float) else str(doc[c]) for c in cols))
        return "\n".join(lines) + "\n"


def _expected_selection_probes(domain_sizes: Sequence[int]) -> int:
    total = sum(domain_sizes)
    return total * total - sum(k * k for k in domain_sizes)


def scaling_run(
    specs: Sequence[SynthSpec],
    sigma: float = 0.8,
    beta: float = 0.5,
    config: BuildConfig = BuildConfig(),
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ScalingReport:
    """Measure build, interview, and evaluation behaviour across workloads.

    Each spec is generated, trained, interviewed row by row, and scored.
    The analytical operation counts are asserted along the way.  Specs whose
    node envelope exceeds the budget are refused up front.

    Raises:
        BudgetError: naming the offending spec and its estimated node count.
    """
    for spec in specs:
        est = node_envelope(spec.domain_sizes)
        if est > node_budget:
            raise BudgetError(
                f"spec (n={spec.n}, domains={list(spec.domain_sizes)}) has an "
                f"estimated {est} tree nodes, over the budget of {node_budget}; "
                "shrink the grid or raise node_budget"
            )
    rows = []
    for spec in specs:
        train, test = synth_generate(spec)
        counter = OpCounter()
        best_split(train.rows, train.domain_sizes, range(spec.n), config.aggregation_mode, counter)
        expected = _expected_selection_probes(spec.domain_sizes)
        if counter.innermost_prob_evals != expected:
            raise AssertionError(
                f"selection probes {counter.innermost_prob_evals}, expected {expected}"
            )
        t0 = time.perf_counter()
        model = build(train, config)
        t1 = time.perf_counter()
        results = []
        visits = 0
        for row in test.rows:
            session = Session(model, sigma)
            while not session.finished:
                session.submit_answer(session.pending, int(row[session.pending]))
            visits += session.node_visits
            results.append(session.result())
        t2 = time.perf_counter()
        if visits != spec.n * test.n_rows:
            raise AssertionError(f"sessions visited {visits} nodes, expected {spec.n * test.n_rows}")
        eval_counter = OpCounter()
        report = evaluate(results, test, beta, eval_counter)
        t3 = time.perf_counter()
        if eval_counter.cell_visits != test.n_rows * spec.n:
            raise AssertionError(
                f"evaluation visited {eval_counter.cell_visits} cells, "
                f"expected {test.n_rows * spec.n}"
            )
        rows.append(
            ScalingRow(
                spec=spec,
                envelope=node_envelope(spec.domain_sizes),
                rule_count=model.rule_count,
                selection_probes=counter.innermost_prob_evals,
                session_visits=visits,
                scoring_cells=eval_counter.cell_visits,
                aar=report.aar,
                arr=report.arr,
                af=report.af,
                build_seconds=t1 - t0,
                session_seconds=t2 - t1,
                eval_seconds=t3 - t2,
            )
        )
    return ScalingReport(rows=tuple(rows), sigma=sigma, beta=beta)


@dataclass(frozen=True)
class ComparisonReport:
    fpqm: EvaluationReport
    baseline: EvaluationReport
    sigma: float
    beta: float

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "beta": self.beta,
            "fpqm": self.fpqm.to_dict(),
            "baseline": self.baseline.to_dict(),
        }


def compare_methods(
    train: Dataset,
    test: Dataset,
    sigma: float = 0.8,
    beta: float = 0.5,
    config: BuildConfig = BuildConfig(),
) -> ComparisonReport:
    """Score the influence tree and the per-attribute forest on the same split."""
    model = build(train, config)
    forest = build_forest(train)
    fpqm_results = [run_batch(model, [int(v) for v in row], sigma) for row in test.rows]
    base_results = [simulate_assessment(forest, [int(v) for v in row]) for row in test.rows]
    return ComparisonReport(
        fpqm=evaluate(fpqm_results, test, beta),
        baseline=evaluate(base_results, test, beta),
        sigma=sigma,
        beta=beta,
    )
