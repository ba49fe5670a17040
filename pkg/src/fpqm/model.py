"""Attribute-ordering tree: construction and canonical serialization.

A model is a tree with one node per attribute along every path.  Each node
names the attribute to resolve next; each branch keys one of its labels and
carries the conditional distributions used to guess the remaining
attributes on that slice.  Branches whose training slice is too thin to
recurse on become fallback branches: no child, no distributions, just the
order in which to ask the outstanding attributes directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import Attribute, DataError, Dataset, schema_digest
from .influence import ConditionalDistribution, OpCounter, best_split

SERIAL_VERSION = 1


class ModelFormatError(ValueError):
    """Raised when a serialized model document cannot be accepted."""


@dataclass(frozen=True)
class BuildConfig:
    """Knobs fixed at training time.

    aggregation_mode: "squared" squares pair influences before combining,
        "linear" sums them as they are.
    min_support: branches backed by fewer training rows than this become
        fallback branches instead of recursing.
    """

    aggregation_mode: str = "squared"
    min_support: int = 1

    def __post_init__(self) -> None:
        if self.aggregation_mode not in ("squared", "linear"):
            raise ModelFormatError(f"unknown aggregation mode {self.aggregation_mode!r}")
        if self.min_support < 0:
            raise ModelFormatError("min_support must be non-negative")

    def to_dict(self) -> dict:
        return {"aggregation_mode": self.aggregation_mode, "min_support": self.min_support}


@dataclass(frozen=True)
class Branch:
    """One outgoing edge of a node.

    A regular branch holds the child node and the distributions over every
    not-yet-visited attribute, conditioned on this branch's label.  A
    fallback branch holds neither; it lists the remaining attributes in the
    order they should simply be asked.
    """

    child: "FpqmNode | None"
    predictions: Mapping[int, ConditionalDistribution]
    fallback_order: tuple[int, ...] = ()

    @property
    def is_fallback(self) -> bool:
        return self.child is None


@dataclass(frozen=True)
class FpqmNode:
    attribute: int
    branches: Mapping[int, Branch]

    @property
    def is_leaf(self) -> bool:
        return not self.branches


@dataclass(frozen=True)
class FpqmModel:
    """Trained tree plus everything needed to interview against it."""

    schema: tuple[Attribute, ...]
    config: BuildConfig
    root: FpqmNode

    @property
    def n_attributes(self) -> int:
        return len(self.schema)

    @property
    def depth(self) -> int:
        # every root-to-leaf path visits each attribute once
        return len(self.schema)

    @property
    def schema_digest(self) -> str:
        return schema_digest(self.schema)

    @property
    def rule_count(self) -> int:
        def count(node: FpqmNode) -> int:
            total = 1
            for branch in node.branches.values():
                if branch.child is not None:
                    total += count(branch.child)
            return total

        return count(self.root)


def build(ds: Dataset, config: BuildConfig = BuildConfig(), counter: OpCounter | None = None) -> FpqmModel:
    """Grow the full tree over a training dataset.

    At each node the highest-influence candidate is chosen; every label of
    that attribute gets a branch.  Labels whose slice has fewer than
    ``min_support`` rows (always including empty slices) become fallback
    branches ordered by the influence ranking at the parent.  Recursion
    bottoms out in a leaf when a single candidate remains, so the tree's
    depth equals the attribute count.
    """
    if ds.n_rows == 0:
        raise DataError("cannot build a model from an empty dataset")
    if ds.n_attributes < 2:
        raise DataError("need at least two attributes to build a model")
    sizes = ds.domain_sizes

    def grow(rows: np.ndarray, candidates: list[int]) -> FpqmNode:
        if len(candidates) == 1:
            return FpqmNode(attribute=candidates[0], branches={})
        split = best_split(rows, sizes, candidates, config.aggregation_mode, counter)
        chosen = split.table.best
        remaining = [c for c in candidates if c != chosen]
        fallback_order = tuple(
            sorted(remaining, key=lambda a: (-split.table.scores[a], a))
        )
        branches: dict[int, Branch] = {}
        for v in range(sizes[chosen]):
            slice_rows = rows[rows[:, chosen] == v]
            if slice_rows.shape[0] == 0 or slice_rows.shape[0] < config.min_support:
                branches[v] = Branch(child=None, predictions={}, fallback_order=fallback_order)
            else:
                branches[v] = Branch(
                    child=grow(slice_rows, remaining),
                    predictions=dict(split.branch_predictions[v]),
                )
        return FpqmNode(attribute=chosen, branches=branches)

    root = grow(ds.rows, list(range(ds.n_attributes)))
    return FpqmModel(schema=ds.schema, config=config, root=root)


def _node_to_dict(node: FpqmNode) -> dict:
    branches = {}
    for v, branch in node.branches.items():
        if branch.is_fallback:
            branches[str(v)] = {"fallback_order": list(branch.fallback_order)}
        else:
            branches[str(v)] = {
                "child": _node_to_dict(branch.child),
                "predictions": {
                    str(t): d.to_dict() for t, d in branch.predictions.items()
                },
            }
    return {"attribute": node.attribute, "branches": branches}


def serialize(model: FpqmModel) -> str:
    """Canonical JSON: sorted keys, no whitespace, shortest exact float form.

    Identical models serialize to identical bytes, and the float rendering
    round-trips bit-exactly.
    """
    doc = {
        "version": SERIAL_VERSION,
        "schema_digest": model.schema_digest,
        "schema": [a.to_dict() for a in model.schema],
        "config": model.config.to_dict(),
        "root": _node_to_dict(model.root),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _node_from_dict(doc: dict, sizes: Sequence[int], path: str) -> FpqmNode:
    try:
        attribute = doc["attribute"]
        raw_branches = doc["branches"]
    except (KeyError, TypeError):
        raise ModelFormatError(f"malformed node at {path}") from None
    if not isinstance(attribute, int) or not 0 <= attribute < len(sizes):
        raise ModelFormatError(f"node at {path} names unknown attribute {attribute!r}")
    branches: dict[int, Branch] = {}
    for key, body in raw_branches.items():
        v = int(key)
        if not 0 <= v < sizes[attribute]:
            raise ModelFormatError(f"branch {key} at {path} is outside the attribute domain")
        if "child" in body:
            child = _node_from_dict(body["child"], sizes, f"{path}/{key}")
            preds = {}
            for t_key, d in body.get("predictions", {}).items():
                t = int(t_key)
                probs = tuple(float(p) for p in d["probabilities"])
                if len(probs) != sizes[t]:
                    raise ModelFormatError(
                        f"prediction for attribute {t} at {path}/{key} has wrong length"
                    )
                preds[t] = ConditionalDistribution(t, probs, int(d["support"]))
            branches[v] = Branch(child=child, predictions=preds)
        else:
            order = tuple(int(a) for a in body.get("fallback_order", []))
            branches[v] = Branch(child=None, predictions={}, fallback_order=order)
    return FpqmNode(attribute=attribute, branches=branches)


def deserialize(document: str, expected_digest: str | None = None) -> FpqmModel:
    """Rebuild a model from its canonical JSON form.

    Raises:
        ModelFormatError: unparseable or truncated document, unsupported
            version, or a schema digest that disagrees with the stored
            schema or with ``expected_digest``.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"unreadable model document: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    version = doc.get("version")
    if version != SERIAL_VERSION:
        raise ModelFormatError(
            f"unsupported model version {version!r}, expected {SERIAL_VERSION}"
        )
    try:
        schema = tuple(
            Attribute(name=a["name"], domain=tuple(a["domain"]), index=j)
            for j, a in enumerate(doc["schema"])
        )
        config = BuildConfig(**doc["config"])
        root_doc = doc["root"]
    except (KeyError, TypeError) as exc:
        raise ModelFormatError(f"model document missing required field: {exc}") from None
    stored_digest = doc.get("schema_digest")
    actual = schema_digest(schema)
    if stored_digest != actual:
        raise ModelFormatError("schema digest does not match the stored schema")
    if expected_digest is not None and actual != expected_digest:
        raise ModelFormatError(
            "model was trained against a different schema than the provided dataset"
        )
    sizes = tuple(a.size for a in schema)
    root = _node_from_dict(root_doc, sizes, "root")
    return FpqmModel(schema=schema, config=config, root=root)
