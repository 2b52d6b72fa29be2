"""Finite worlds, semantic messages, and logical-probability measures.

All quantities are in bits. A message is described by its truth set, the
subset of world states in which it holds; its logical probability is the
statistical mass of that subset.
"""

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ._validation import check_probability_vector, entropy_bits, xlog2x
from .exceptions import DomainError, StructuralError

__all__ = [
    "FiniteWorld",
    "SemanticMessage",
    "SemanticMessageSet",
    "FuzzyConcept",
    "logical_probability",
    "semantic_information",
    "semantic_entropy",
    "fuzzy_semantic_entropy",
]


@dataclass(frozen=True)
class FiniteWorld:
    """Ordered world states with their statistical probabilities.

    Parameters
    ----------
    states : sequence of str
        Opaque state identifiers; construction order is preserved.
    probs : sequence of float
        Probability of each state. Must be non-negative and sum to 1
        within 1e-9.
    """

    states: tuple
    probs: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(str(s) for s in self.states)
        if not states:
            raise StructuralError("a world needs at least one state")
        if len(set(states)) != len(states):
            raise StructuralError("world state ids must be unique")
        probs = check_probability_vector(self.probs, name="probs")
        if probs.size != len(states):
            raise StructuralError(
                f"got {len(states)} states but {probs.size} probabilities"
            )
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "probs", tuple(float(v) for v in probs))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(states)})

    @classmethod
    def uniform(cls, n_states, prefix="w"):
        return cls([f"{prefix}{i + 1}" for i in range(n_states)], [1.0 / n_states] * n_states)

    @property
    def p(self):
        """Probabilities as a float64 array."""
        return np.array(self.probs)

    @property
    def n_states(self):
        return len(self.states)

    def index_of(self, state):
        try:
            return self._index[state]
        except KeyError:
            raise StructuralError(f"unknown world state {state!r}") from None

    def mask(self, truth_set):
        """Boolean indicator over states for ``truth_set``."""
        out = np.zeros(self.n_states, dtype=bool)
        for s in truth_set:
            out[self.index_of(s)] = True
        return out

    def entropy(self):
        """Statistical entropy H(W) in bits."""
        return float(entropy_bits(self.p))


@dataclass(frozen=True)
class SemanticMessage:
    """A message together with the set of world states where it is true."""

    id: str
    truth_set: tuple

    def __post_init__(self):
        truth_set = tuple(str(s) for s in self.truth_set)
        if not truth_set:
            raise StructuralError(f"message {self.id!r} has an empty truth set")
        if len(set(truth_set)) != len(truth_set):
            raise StructuralError(f"message {self.id!r} repeats a state in its truth set")
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "truth_set", truth_set)


@dataclass(frozen=True)
class SemanticMessageSet:
    """Non-empty ordered collection of messages with unique ids."""

    messages: tuple

    def __post_init__(self):
        messages = tuple(
            m if isinstance(m, SemanticMessage) else SemanticMessage(*m)
            for m in self.messages
        )
        if not messages:
            raise StructuralError("a message set needs at least one message")
        ids = [m.id for m in messages]
        if len(set(ids)) != len(ids):
            raise StructuralError("message ids must be unique")
        object.__setattr__(self, "messages", messages)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[str]]):
        return cls(tuple(SemanticMessage(k, v) for k, v in mapping.items()))

    @property
    def ids(self):
        return tuple(m.id for m in self.messages)

    def __len__(self):
        return len(self.messages)

    def __iter__(self):
        return iter(self.messages)

    def __getitem__(self, i):
        return self.messages[i]

    def logical_probabilities(self, world):
        return np.array([logical_probability(world, m) for m in self.messages])


@dataclass(frozen=True)
class FuzzyConcept:
    """Membership degrees of a concept over world states, plus a class partition.

    Parameters
    ----------
    memberships : mapping of state id to float
        Membership degree in [0, 1] for every state.
    classes : sequence of sequences of state ids
        Disjoint classes that together cover every state in ``memberships``.
    """

    memberships: Mapping[str, float]
    classes: tuple

    def __post_init__(self):
        memberships = {str(k): float(v) for k, v in dict(self.memberships).items()}
        if not memberships:
            raise StructuralError("fuzzy concept needs at least one membership")
        for state, mu in memberships.items():
            if not 0.0 <= mu <= 1.0:
                raise DomainError(f"membership of {state!r} must lie in [0, 1], got {mu}")
        classes = tuple(tuple(str(s) for s in c) for c in self.classes)
        if not classes:
            raise StructuralError("fuzzy concept needs at least one class")
        seen = set()
        for j, cls_states in enumerate(classes):
            for s in cls_states:
                if s not in memberships:
                    raise StructuralError(f"class {j} names unknown state {s!r}")
                if s in seen:
                    raise StructuralError(f"state {s!r} appears in more than one class")
                seen.add(s)
        missing = [s for s in memberships if s not in seen]
        if missing:
            raise StructuralError(f"states not covered by any class: {missing}")
        if not any(mu > 0 for mu in memberships.values()):
            raise DomainError("at least one membership degree must be positive")
        object.__setattr__(self, "memberships", memberships)
        object.__setattr__(self, "classes", classes)

    def matching_degrees(self):
        """Share of total membership falling in each class."""
        mass = np.array([sum(self.memberships[s] for s in c) for c in self.classes])
        total = mass.sum()
        if total <= 0:
            raise DomainError("total membership is zero")
        return mass / total


def logical_probability(world: FiniteWorld, msg: SemanticMessage) -> float:
    """Mass of the states where ``msg`` is true, relative to the whole world."""
    p = world.p
    return float(p[world.mask(msg.truth_set)].sum() / p.sum())


def semantic_information(world: FiniteWorld, msg: SemanticMessage) -> float:
    """Semantic information ``-log2 p_s(x)`` carried by a message, in bits."""
    ps = logical_probability(world, msg)
    if ps <= 0:
        raise DomainError(f"message {msg.id!r} has zero logical probability")
    # -log2(1) is -0.0; normalise the sign.
    return float(-np.log2(ps)) + 0.0


def semantic_entropy(world: FiniteWorld, msgs: SemanticMessageSet) -> float:
    """Semantic entropy ``-sum p_s log2 p_s`` over a message list.

    Logical probabilities are used as-is. They are not renormalised, so for
    overlapping messages the result is not a classical entropy.
    """
    ps = msgs.logical_probabilities(world)
    zero = np.flatnonzero(ps <= 0)
    if zero.size:
        raise DomainError(f"message {msgs[int(zero[0])].id!r} has zero logical probability")
    return float(-xlog2x(ps).sum()) + 0.0


def fuzzy_semantic_entropy(concept: FuzzyConcept) -> float:
    """Entropy in bits of the matching degrees of a fuzzy concept over its classes."""
    return float(entropy_bits(concept.matching_degrees())) + 0.0
