"""Influence scoring: how strongly one attribute's answer pins down the others.

All quantities are raw count ratios on the dataset slice at hand, never
smoothed.  For a conditioning attribute a with value v and a target t:

* conditional confidence: P(t = w | a = v), one probability per target label;
* value influence of v on t: sum over w of P(t = w | a = v) squared, which is
  1 exactly when v determines t and 1/N_t when it says nothing;
* pair influence of a on t: value influences averaged with the marginal
  weights P(a = v);
* total influence of a: pair influences combined over every other candidate,
  either squared before summing ("squared" mode) or summed as-is ("linear").

The attribute with the greatest total influence becomes the next question.
Counting follows the slice exactly: labels with zero support still occupy a
loop iteration, so the probe counter matches the closed-form operation count
for a full candidate set, sum over ordered pairs (a, t) of N_a * N_t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


@dataclass
class OpCounter:
    """Tally of scoring work: individual probability evaluations and scored pairs."""

    innermost_prob_evals: int = 0
    pair_evals: int = 0
    cell_visits: int = 0

    def merge(self, other: "OpCounter") -> None:
        self.innermost_prob_evals += other.innermost_prob_evals
        self.pair_evals += other.pair_evals
        self.cell_visits += other.cell_visits


@dataclass(frozen=True)
class ConditionalDistribution:
    """P(target = w | conditioner = v) for every label w, with its row support.

    ``support == 0`` marks an empty slice; the probability vector is then all
    zero and carries no information.
    """

    target: int
    probabilities: tuple[float, ...]
    support: int

    def __post_init__(self) -> None:
        if self.support < 0:
            raise ValueError("support must be non-negative")
        if self.support > 0:
            total = sum(self.probabilities)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"probabilities sum to {total}, expected 1")

    @property
    def has_support(self) -> bool:
        return self.support > 0

    def top(self) -> tuple[int, float]:
        """Most probable label index (lowest index on ties) and its probability."""
        if not self.has_support:
            raise ValueError("empty-support distribution has no top label")
        k = int(np.argmax(self.probabilities))
        return k, self.probabilities[k]

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "probabilities": list(self.probabilities),
            "support": self.support,
        }


@dataclass(frozen=True)
class InfluenceTable:
    """Total influence per candidate attribute and the winning choice."""

    scores: Mapping[int, float]
    best: int
    aggregation_mode: str

    def to_dict(self) -> dict:
        return {
            "scores": {str(k): v for k, v in sorted(self.scores.items())},
            "best": self.best,
            "aggregation_mode": self.aggregation_mode,
        }


@dataclass(frozen=True)
class BestSplit:
    """Outcome of one selection round.

    branch_predictions maps each label of the winner to the conditional
    distributions over the remaining candidates on that label's slice.
    """

    table: InfluenceTable
    branch_predictions: Mapping[int, Mapping[int, ConditionalDistribution]]


def _pair_counts(rows: np.ndarray, a: int, t: int, n_a: int, n_t: int) -> np.ndarray:
    """Joint count matrix C[v, w] = #rows with a = v and t = w."""
    if rows.shape[0] == 0:
        return np.zeros((n_a, n_t), dtype=np.int64)
    flat = rows[:, a] * n_t + rows[:, t]
    return np.bincount(flat, minlength=n_a * n_t).reshape(n_a, n_t)


def conditional_confidence(
    rows: np.ndarray,
    domain_sizes: Sequence[int],
    cond_attr: int,
    cond_value: int,
    target_attr: int,
    counter: OpCounter | None = None,
) -> ConditionalDistribution:
    """Distribution of the target attribute on the slice where cond_attr = cond_value.

    Returns an empty-support distribution when no row matches.
    """
    if cond_attr == target_attr:
        raise ValueError("conditioning and target attribute must differ")
    n_t = domain_sizes[target_attr]
    if counter is not None:
        counter.innermost_prob_evals += n_t
    mask = rows[:, cond_attr] == cond_value
    support = int(mask.sum())
    if support == 0:
        return ConditionalDistribution(target_attr, (0.0,) * n_t, 0)
    counts = np.bincount(rows[mask, target_attr], minlength=n_t)
    probs = counts / support
    return ConditionalDistribution(target_attr, tuple(float(p) for p in probs), support)


def value_influence(dist: ConditionalDistribution) -> float:
    """Sum of squared conditional confidences; the peakedness of one branch."""
    if not dist.has_support:
        raise ValueError("value influence is undefined on an empty slice")
    return float(sum(p * p for p in dist.probabilities))


def _pair_influence_from_counts(counts: np.ndarray, total: int) -> float:
    # weighted sum over conditioner labels of (sum of squared row ratios);
    # zero-support labels contribute nothing
    score = 0.0
    for v in range(counts.shape[0]):
        support = int(counts[v].sum())
        if support == 0:
            continue
        probs = counts[v] / support
        score += (support / total) * float(np.dot(probs, probs))
    return score


def attribute_pair_influence(
    rows: np.ndarray,
    domain_sizes: Sequence[int],
    cond_attr: int,
    target_attr: int,
    counter: OpCounter | None = None,
) -> float:
    """Influence of cond_attr on target_attr: marginal-weighted value influences."""
    if cond_attr == target_attr:
        raise ValueError("conditioning and target attribute must differ")
    if rows.shape[0] == 0:
        raise ValueError("pair influence is undefined on an empty dataset")
    n_a, n_t = domain_sizes[cond_attr], domain_sizes[target_attr]
    if counter is not None:
        counter.innermost_prob_evals += n_a * n_t
        counter.pair_evals += 1
    counts = _pair_counts(rows, cond_attr, target_attr, n_a, n_t)
    return _pair_influence_from_counts(counts, rows.shape[0])


def attribute_total_influence(
    rows: np.ndarray,
    domain_sizes: Sequence[int],
    cond_attr: int,
    candidates: Sequence[int],
    aggregation_mode: str = "squared",
    counter: OpCounter | None = None,
) -> float:
    """Combined influence of cond_attr over every other candidate attribute."""
    _check_mode(aggregation_mode)
    others = [t for t in candidates if t != cond_attr]
    if not others:
        raise ValueError("total influence needs at least one other candidate")
    total = 0.0
    for t in others:
        pair = attribute_pair_influence(rows, domain_sizes, cond_attr, t, counter)
        total += pair * pair if aggregation_mode == "squared" else pair
    return total


def best_split(
    rows: np.ndarray,
    domain_sizes: Sequence[int],
    candidates: Sequence[int],
    aggregation_mode: str = "squared",
    counter: OpCounter | None = None,
) -> BestSplit:
    """Pick the candidate with the greatest total influence over the rest.

    Ties resolve to the lowest attribute index.  A single candidate is
    returned directly with no distributions.  Alongside the score table, the
    winner's per-label conditional distributions over the remaining
    candidates come back for storage in the tree.
    """
    _check_mode(aggregation_mode)
    candidates = sorted(set(candidates))
    if not candidates:
        raise ValueError("best_split needs at least one candidate")
    if rows.shape[0] == 0:
        raise ValueError("best_split is undefined on an empty dataset")
    if len(candidates) == 1:
        only = candidates[0]
        table = InfluenceTable(scores={only: 0.0}, best=only, aggregation_mode=aggregation_mode)
        return BestSplit(table=table, branch_predictions={})

    count_cache: dict[tuple[int, int], np.ndarray] = {}
    m = rows.shape[0]
    scores: dict[int, float] = {}
    for a in candidates:
        total = 0.0
        for t in candidates:
            if t == a:
                continue
            n_a, n_t = domain_sizes[a], domain_sizes[t]
            if counter is not None:
                counter.innermost_prob_evals += n_a * n_t
                counter.pair_evals += 1
            counts = _pair_counts(rows, a, t, n_a, n_t)
            count_cache[(a, t)] = counts
            pair = _pair_influence_from_counts(counts, m)
            total += pair * pair if aggregation_mode == "squared" else pair
        scores[a] = total

    best = min(candidates, key=lambda a: (-scores[a], a))
    branch_predictions: dict[int, dict[int, ConditionalDistribution]] = {}
    for v in range(domain_sizes[best]):
        per_target: dict[int, ConditionalDistribution] = {}
        for t in candidates:
            if t == best:
                continue
            counts = count_cache[(best, t)]
            support = int(counts[v].sum())
            if support == 0:
                probs = (0.0,) * domain_sizes[t]
            else:
                probs = tuple(float(p) for p in counts[v] / support)
            per_target[t] = ConditionalDistribution(t, probs, support)
        branch_predictions[v] = per_target
    table = InfluenceTable(scores=scores, best=best, aggregation_mode=aggregation_mode)
    return BestSplit(table=table, branch_predictions=branch_predictions)


def _check_mode(aggregation_mode: str) -> None:
    if aggregation_mode not in ("squared", "linear"):
        raise ValueError(f"unknown aggregation mode {aggregation_mode!r}")
