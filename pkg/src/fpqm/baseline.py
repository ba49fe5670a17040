"""Comparator: one gain-ratio decision tree per attribute, asked in fixed order.

This is the conventional alternative the influence tree is measured
against.  Every attribute gets its own fully grown multiway tree (gain
ratio splits, no pruning) with all other attributes as features.  An
assessment asks attributes in schema order, and between asks repeatedly
sweeps the forest: any tree whose path features are all known fires a
prediction, and predicted values count as known for later sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import Attribute, DataError, Dataset, schema_digest
from .session import SessionResult


@dataclass(frozen=True)
class TreeNode:
    """feature is None at leaves; klass is the majority label at this point."""

    feature: int | None
    klass: int
    support: int
    branches: Mapping[int, "TreeNode"]


@dataclass(frozen=True)
class ClassTree:
    target: int
    root: TreeNode


@dataclass(frozen=True)
class BaselineForest:
    schema: tuple[Attribute, ...]
    trees: tuple[ClassTree, ...]

    @property
    def digest(self) -> str:
        return schema_digest(self.schema)


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    probs = counts[counts > 0] / total
    return float(-(probs * np.log2(probs)).sum())


def _majority(values: np.ndarray, size: int) -> int:
    counts = np.bincount(values, minlength=size)
    return int(np.argmax(counts))  # argmax takes the lowest label on ties


def _grow(
    rows: np.ndarray,
    target: int,
    features: list[int],
    sizes: Sequence[int],
) -> TreeNode:
    values = rows[:, target]
    klass = _majority(values, sizes[target])
    support = int(rows.shape[0])
    if np.all(values == values[0]):
        return TreeNode(None, klass, support, {})
    # only features that actually vary on this slice can split it
    usable = [f for f in features if not np.all(rows[:, f] == rows[0, f])]
    if not usable:
        return TreeNode(None, klass, support, {})
    target_entropy = _entropy(np.bincount(values, minlength=sizes[target]))
    best_f, best_ratio = None, -1.0
    for f in usable:
        split_info = 0.0
        remainder = 0.0
        for v in range(sizes[f]):
            mask = rows[:, f] == v
            weight = mask.sum() / rows.shape[0]
            if weight == 0:
                continue
            split_info -= weight * math.log2(weight)
            remainder += weight * _entropy(
                np.bincount(rows[mask, target], minlength=sizes[target])
            )
        ratio = (target_entropy - remainder) / split_info
        if ratio > best_ratio:
            best_f, best_ratio = f, ratio
    child_features = [f for f in features if f != best_f]
    branches = {}
    for v in range(sizes[best_f]):
        sub = rows[rows[:, best_f] == v]
        if sub.shape[0] == 0:
            branches[v] = TreeNode(None, klass, 0, {})  # inherit parent majority
        else:
            branches[v] = _grow(sub, target, child_features, sizes)
    return TreeNode(best_f, klass, support, branches)


def build_forest(ds: Dataset) -> BaselineForest:
    """Grow a fully developed tree for every attribute."""
    if ds.n_rows == 0:
        raise DataError("cannot build a forest from an empty dataset")
    if ds.n_attributes < 2:
        raise DataError("need at least two attributes to build a forest")
    sizes = ds.domain_sizes
    trees = []
    for t in range(ds.n_attributes):
        features = [f for f in range(ds.n_attributes) if f != t]
        trees.append(ClassTree(target=t, root=_grow(ds.rows, t, features, sizes)))
    return BaselineForest(schema=ds.schema, trees=tuple(trees))


def decide(tree: ClassTree, known: Sequence[int | None]) -> int | None:
    """Class at the end of the path, or None if an unknown feature blocks it."""
    node = tree.root
    while node.feature is not None:
        value = known[node.feature]
        if value is None:
            return None
        node = node.branches[value]
    return node.klass


def simulate_assessment(
    forest: BaselineForest,
    answers: Sequence[int],
    ask_order: Sequence[int] | None = None,
) -> SessionResult:
    """Interview one respondent with the forest.

    The first attribute in the ask order is always asked.  After every ask
    the forest is swept to a fixpoint; decidable targets become predictions
    (confidence 1 by convention) and count as known from then on.  The next
    unresolved attribute in the order is asked, until none remain.
    """
    n = len(forest.schema)
    if len(answers) != n:
        raise DataError(f"answer row has {len(answers)} values, expected {n}")
    for j, v in enumerate(answers):
        if not 0 <= v < forest.schema[j].size:
            raise DataError(f"value {v} outside domain of {forest.schema[j].name!r}")
    order = list(ask_order) if ask_order is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise DataError("ask_order must be a permutation of the attribute indices")

    known: list[int | None] = [None] * n
    indicators = [0] * n
    visit: list[int] = []

    def ask(a: int) -> None:
        known[a] = answers[a]
        visit.append(a + 1)

    ask(order[0])
    while True:
        progress = True
        while progress:
            progress = False
            for t in range(n):
                if known[t] is None:
                    value = decide(forest.trees[t], known)
                    if value is not None:
                        known[t] = value
                        indicators[t] = 1
                        visit.append(t + 1)
                        progress = True
        remaining = [a for a in order if known[a] is None]
        if not remaining:
            break
        ask(remaining[0])

    return SessionResult(
        final_values=tuple(known),
        indicators=tuple(indicators),
        confidences=(1.0,) * n,
        visit_order=tuple(visit),
    )
