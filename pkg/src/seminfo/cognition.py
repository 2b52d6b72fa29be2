"""Semantic cognitive information and entropy.

A receiver that understands a fraction ``c`` of a message's meaning gains
``c * H_s`` bits and is misled by ``(1 - c) * H_s`` bits; the net is
``(2c - 1) * H_s``, negative for destructive cognition.
"""

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ._validation import check_nonnegative, check_unit_interval, check_count
from .exceptions import StructuralError
from .world import FiniteWorld, SemanticMessageSet, logical_probability, semantic_information

__all__ = [
    "AccuracyProfile",
    "cognitive_information",
    "cognitive_entropy",
    "uniform_cognitive_entropy",
    "cognitive_curve",
]


@dataclass(frozen=True)
class AccuracyProfile:
    """Cognition accuracy in [0, 1] for each message id."""

    accuracies: Mapping[str, float]

    def __post_init__(self):
        acc = {str(k): check_unit_interval(v, f"accuracy of {k!r}") for k, v in dict(self.accuracies).items()}
        object.__setattr__(self, "accuracies", acc)

    @classmethod
    def uniform(cls, msgs, c):
        return cls({m.id: c for m in msgs})

    def check_covers(self, msgs):
        ids = set(msgs.ids)
        missing = [i for i in msgs.ids if i not in self.accuracies]
        if missing:
            raise StructuralError(f"no accuracy given for message(s) {missing}")
        extra = sorted(set(self.accuracies) - ids)
        if extra:
            raise StructuralError(f"accuracy given for unknown message(s) {extra}")


def cognitive_information(h_s: float, c: float) -> float:
    """Net semantic information ``c*h_s - (1-c)*h_s`` retained at accuracy ``c``."""
    h_s = check_nonnegative(h_s, "h_s")
    c = check_unit_interval(c, "c")
    return c * h_s - (1.0 - c) * h_s + 0.0


def cognitive_entropy(world: FiniteWorld, msgs: SemanticMessageSet, profile: AccuracyProfile) -> float:
    """Accuracy-weighted semantic entropy ``sum_i (2 c_i - 1) p_s(x_i) H_s(x_i)``."""
    profile.check_covers(msgs)
    total = 0.0
    for m in msgs:
        ps = logical_probability(world, m)
        h = semantic_information(world, m)
        total += cognitive_information(ps * h, profile.accuracies[m.id])
    return total + 0.0


def uniform_cognitive_entropy(h_s_total: float, c: float) -> float:
    """Shortcut when every message shares the accuracy ``c``."""
    return cognitive_information(h_s_total, c)


def cognitive_curve(h_s: float, n_points: int):
    """``(accuracy, bits)`` pairs on an even grid of accuracies in [0, 1]."""
    n_points = check_count(n_points, "n_points", minimum=2)
    grid = np.linspace(0.0, 1.0, n_points)
    return [(float(c), cognitive_information(h_s, c)) for c in grid]
