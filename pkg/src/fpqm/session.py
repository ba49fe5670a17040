"""Live interviews against a trained tree.

The root attribute is always asked.  After each resolved attribute the
session descends the branch of the recorded value; the next node's stored
distribution yields a top confidence C*, and the attribute is predicted
when C* clears the session threshold, asked otherwise.  Wrong predictions
still steer the descent, which is what the later accuracy metrics measure.
Fallback branches end prediction: the outstanding attributes are simply
asked in their stored order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .dataset import DataError
from .model import FpqmModel, FpqmNode


class SessionError(ValueError):
    """Out-of-turn interaction with a session: wrong attribute, double finish."""


@dataclass(frozen=True)
class Ask:
    attribute: int


@dataclass(frozen=True)
class Predicted:
    attribute: int
    value: int
    confidence: float


@dataclass(frozen=True)
class Finished:
    pass


StepOutcome = Ask | Predicted | Finished


@dataclass(frozen=True)
class SessionResult:
    """Completed interview record.

    final_values: answer per attribute (predicted or asked, post-correction).
    indicators: 1 where the value was predicted, 0 where asked.
    confidences: stored C* for predictions, 1.0 for asked answers.
    visit_order: attributes in resolution order, 1-based identifiers.
    corrections: (attribute, predicted, corrected) triples from verification.
    """

    final_values: tuple[int, ...]
    indicators: tuple[int, ...]
    confidences: tuple[float, ...]
    visit_order: tuple[int, ...]
    corrections: tuple[tuple[int, int, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            "final_values": list(self.final_values),
            "indicators": list(self.indicators),
            "confidences": list(self.confidences),
            "visit_order": list(self.visit_order),
            "corrections": [list(c) for c in self.corrections],
        }


class Session:
    """Stepwise interview state; one attribute pending at a time."""

    def __init__(self, model: FpqmModel, sigma: float = 0.8):
        if sigma < 0:
            raise ValueError("sigma must be non-negative")
        self.model = model
        self.sigma = float(sigma)
        n = model.n_attributes
        self.final_values: list[int | None] = [None] * n
        self.indicators: list[int] = [0] * n
        self.confidences: list[float] = [0.0] * n
        self.visit_order: list[int] = []
        self.rejected_confidences: dict[int, float] = {}
        self.corrections: list[tuple[int, int, int]] = []
        self.node_visits = 0
        self.finished = False
        self._node: FpqmNode | None = model.root
        self._queue: list[int] = []
        self.pending: int | None = model.root.attribute

    def _resolve(self, attribute: int, value: int, predicted: bool, confidence: float) -> None:
        self.final_values[attribute] = value
        self.indicators[attribute] = 1 if predicted else 0
        self.confidences[attribute] = confidence
        self.visit_order.append(attribute + 1)
        self.node_visits += 1

    def _finish(self) -> Finished:
        self.finished = True
        self.pending = None
        return Finished()

    def _advance(self) -> list[StepOutcome]:
        """Walk forward from the last resolved attribute until an ask or the end."""
        steps: list[StepOutcome] = []
        while True:
            if self._node is None:  # fallback mode: drain the stored ask order
                if self._queue:
                    self.pending = self._queue.pop(0)
                    steps.append(Ask(self.pending))
                    return steps
                steps.append(self._finish())
                return steps
            node = self._node
            if node.is_leaf:
                steps.append(self._finish())
                return steps
            branch = node.branches[self.final_values[node.attribute]]
            if branch.is_fallback:
                self._node = None
                self._queue = list(branch.fallback_order)
                continue
            child = branch.child
            dist = branch.predictions[child.attribute]
            value, c_star = dist.top()
            if c_star >= self.sigma:
                self._resolve(child.attribute, value, predicted=True, confidence=c_star)
                steps.append(Predicted(child.attribute, value, c_star))
                self._node = child
                continue
            self.rejected_confidences[child.attribute] = c_star
            self._node = child
            self.pending = child.attribute
            steps.append(Ask(child.attribute))
            return steps

    def submit_answer(self, attribute: int, value: int) -> list[StepOutcome]:
        """Record the answer for the pending attribute and advance.

        Returns the burst of outcomes up to and including the next ask or
        the finish marker.
        """
        if self.finished:
            raise SessionError("session is already finished")
        if attribute != self.pending:
            raise SessionError(
                f"attribute {attribute} is not pending (expected {self.pending})"
            )
        size = self.model.schema[attribute].size
        if not 0 <= value < size:
            raise DataError(
                f"value {value} outside domain of {self.model.schema[attribute].name!r}"
            )
        self._resolve(attribute, value, predicted=False, confidence=1.0)
        return self._advance()

    def record_verification(self, attribute: int, corrected_value: int | None = None) -> None:
        """Log the interviewee's check of a predicted answer.

        Confirmations change nothing.  A correction replaces the stored
        value and appends a (attribute, predicted, corrected) triple; steps
        already emitted are not replayed.
        """
        if self.indicators[attribute] != 1 or self.final_values[attribute] is None:
            raise SessionError(f"attribute {attribute} was not predicted")
        if corrected_value is None:
            return
        size = self.model.schema[attribute].size
        if not 0 <= corrected_value < size:
            raise DataError(
                f"value {corrected_value} outside domain of "
                f"{self.model.schema[attribute].name!r}"
            )
        previous = self.final_values[attribute]
        self.final_values[attribute] = corrected_value
        self.corrections.append((attribute, previous, corrected_value))

    def result(self) -> SessionResult:
        if not self.finished:
            raise SessionError("session is not finished")
        return SessionResult(
            final_values=tuple(self.final_values),
            indicators=tuple(self.indicators),
            confidences=tuple(self.confidences),
            visit_order=tuple(self.visit_order),
            corrections=tuple(self.corrections),
        )


def start(model: FpqmModel, sigma: float = 0.8) -> tuple[Session, Ask]:
    """Open a session; the first step always asks the root attribute."""
    session = Session(model, sigma)
    return session, Ask(session.pending)


def run_batch(model: FpqmModel, answers: Sequence[int], sigma: float = 0.8) -> SessionResult:
    """Complete interview against a fully known answer row, in one sweep.

    Implemented as a direct descent rather than through :class:`Session`;
    the two routes are checked against each other in the test suite.
    """
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    n = model.n_attributes
    if len(answers) != n:
        raise DataError(f"answer row has {len(answers)} values, expected {n}")
    for j, v in enumerate(answers):
        if not 0 <= v < model.schema[j].size:
            raise DataError(f"value {v} outside domain of {model.schema[j].name!r}")

    final = [0] * n
    indicators = [0] * n
    confidences = [0.0] * n
    order: list[int] = []
    node = model.root
    final[node.attribute] = answers[node.attribute]
    confidences[node.attribute] = 1.0
    order.append(node.attribute + 1)
    while not node.is_leaf:
        branch = node.branches[final[node.attribute]]
        if branch.is_fallback:
            for a in branch.fallback_order:
                final[a] = answers[a]
                confidences[a] = 1.0
                order.append(a + 1)
            break
        child = branch.child
        value, c_star = branch.predictions[child.attribute].top()
        if c_star >= sigma:
            final[child.attribute] = value
            indicators[child.attribute] = 1
            confidences[child.attribute] = c_star
        else:
            final[child.attribute] = answers[child.attribute]
            confidences[child.attribute] = 1.0
        order.append(child.attribute + 1)
        node = child
    return SessionResult(
        final_values=tuple(final),
        indicators=tuple(indicators),
        confidences=tuple(confidences),
        visit_order=tuple(order),
    )


def record_verification(
    result: SessionResult, attribute: int, corrected_value: int | None = None
) -> SessionResult:
    """Post-hoc verification on a finished result; returns the updated record."""
    if result.indicators[attribute] != 1:
        raise SessionError(f"attribute {attribute} was not predicted")
    if corrected_value is None:
        return result
    previous = result.final_values[attribute]
    values = list(result.final_values)
    values[attribute] = corrected_value
    return replace(
        result,
        final_values=tuple(values),
        corrections=result.corrections + ((attribute, previous, corrected_value),),
    )
