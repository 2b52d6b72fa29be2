import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seminfo import (
    DomainError,
    FiniteWorld,
    FuzzyConcept,
    SemanticMessage,
    SemanticMessageSet,
    StructuralError,
    fuzzy_semantic_entropy,
    logical_probability,
    semantic_entropy,
    semantic_information,
)
from oracles import h2


@pytest.fixture
def four_uniform():
    return FiniteWorld.uniform(4)


def test_world_validation():
    with pytest.raises(DomainError):
        FiniteWorld(["a", "b"], [0.6, 0.6])
    with pytest.raises(DomainError):
        FiniteWorld(["a", "b"], [1.5, -0.5])
    with pytest.raises(StructuralError):
        FiniteWorld([], [])
    with pytest.raises(StructuralError):
        FiniteWorld(["a", "a"], [0.5, 0.5])
    with pytest.raises(StructuralError):
        FiniteWorld(["a", "b"], [1.0])
    # within the 1e-9 tolerance
    FiniteWorld(["a", "b"], [0.5, 0.5 + 5e-10])


def test_message_validation():
    with pytest.raises(StructuralError):
        SemanticMessage("x", [])
    with pytest.raises(StructuralError):
        SemanticMessageSet(())
    with pytest.raises(StructuralError):
        SemanticMessageSet((SemanticMessage("x", ["a"]), SemanticMessage("x", ["b"])))


def test_world_keeps_construction_order():
    w = FiniteWorld(["z", "a", "m"], [0.2, 0.3, 0.5])
    assert w.states == ("z", "a", "m")
    assert w.probs == (0.2, 0.3, 0.5)


class TestLogicalProbability:
    def test_half(self, four_uniform):
        assert logical_probability(four_uniform, SemanticMessage("x", ["w1", "w3"])) == 0.5

    def test_tautology(self, four_uniform):
        assert logical_probability(four_uniform, SemanticMessage("t", four_uniform.states)) == 1.0

    def test_nonuniform(self):
        w = FiniteWorld(["w1", "w2", "w3"], [0.5, 0.25, 0.25])
        assert logical_probability(w, SemanticMessage("x", ["w1"])) == 0.5

    def test_unknown_state(self, four_uniform):
        with pytest.raises(StructuralError):
            logical_probability(four_uniform, SemanticMessage("x", ["nope"]))


class TestSemanticInformation:
    @pytest.mark.parametrize(
        "truth, expected",
        [(["w1", "w2"], 1.0), (["w1", "w2", "w3", "w4"], 0.0), (["w1"], 2.0)],
    )
    def test_values(self, four_uniform, truth, expected):
        assert semantic_information(four_uniform, SemanticMessage("x", truth)) == expected

    def test_zero_probability_rejected(self):
        w = FiniteWorld(["a", "b"], [1.0, 0.0])
        with pytest.raises(DomainError):
            semantic_information(w, SemanticMessage("x", ["b"]))


class TestSemanticEntropy:
    def test_two_halves(self, four_uniform):
        msgs = SemanticMessageSet.from_mapping({"x1": ["w1", "w2"], "x2": ["w3", "w4"]})
        assert semantic_entropy(four_uniform, msgs) == 1.0

    def test_single_tautology(self, four_uniform):
        msgs = SemanticMessageSet.from_mapping({"t": list(four_uniform.states)})
        assert semantic_entropy(four_uniform, msgs) == 0.0

    def test_single_quarter(self, four_uniform):
        msgs = SemanticMessageSet.from_mapping({"x": ["w2"]})
        assert semantic_entropy(four_uniform, msgs) == 0.5

    def test_overlapping_messages_not_renormalised(self, four_uniform):
        msgs = SemanticMessageSet.from_mapping({"x1": ["w1", "w2"], "x2": ["w2", "w3"], "x3": ["w1"]})
        # 0.5*1 + 0.5*1 + 0.25*2
        assert semantic_entropy(four_uniform, msgs) == pytest.approx(1.5, abs=1e-15)

    def test_zero_probability_rejected(self):
        w = FiniteWorld(["a", "b"], [1.0, 0.0])
        msgs = SemanticMessageSet.from_mapping({"x": ["a"], "y": ["b"]})
        with pytest.raises(DomainError):
            semantic_entropy(w, msgs)


class TestFuzzyEntropy:
    def test_symmetric_classes(self):
        c = FuzzyConcept({"a": 0.4, "b": 0.1, "c": 0.5}, [["a", "b"], ["c"]])
        assert fuzzy_semantic_entropy(c) == pytest.approx(1.0, abs=1e-15)

    def test_concentrated(self):
        c = FuzzyConcept({"a": 0.4, "b": 0.0, "c": 0.0}, [["a"], ["b", "c"]])
        assert fuzzy_semantic_entropy(c) == 0.0

    def test_worked_value(self):
        c = FuzzyConcept({"w1": 0.2, "w2": 0.3, "w3": 0.5}, [["w1"], ["w2", "w3"]])
        np.testing.assert_allclose(c.matching_degrees(), [0.2, 0.8])
        assert fuzzy_semantic_entropy(c) == pytest.approx(h2(0.2), abs=1e-12)
        assert fuzzy_semantic_entropy(c) == pytest.approx(0.7219, abs=5e-5)

    def test_all_zero_rejected(self):
        with pytest.raises(DomainError):
            FuzzyConcept({"a": 0.0, "b": 0.0}, [["a"], ["b"]])

    @pytest.mark.parametrize(
        "classes",
        [[["a"], ["a", "b"]], [["a"]], [["a"], ["b"], ["zz"]]],
    )
    def test_bad_partition(self, classes):
        with pytest.raises(StructuralError):
            FuzzyConcept({"a": 0.5, "b": 0.5}, classes)


worlds = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n),
        st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=1, max_size=5),
    )
)


def _build(weights, masks):
    p = np.array(weights) / np.sum(weights)
    world = FiniteWorld([f"w{i}" for i in range(len(p))], p)
    truth_sets = [[s for s, keep in zip(world.states, m) if keep] or [world.states[0]] for m in masks]
    return world, truth_sets


@settings(max_examples=100, deadline=None)
@given(worlds)
def test_logical_probability_monotone_under_inclusion(data):
    world, truth_sets = _build(*data)
    a = truth_sets[0]
    b = sorted(set(a) | set(truth_sets[-1]))
    pa = logical_probability(world, SemanticMessage("a", a))
    pb = logical_probability(world, SemanticMessage("b", b))
    assert 0 < pa <= pb + 1e-15 <= 1 + 1e-12


@settings(max_examples=100, deadline=None)
@given(worlds)
def test_entropy_is_sum_of_per_message_terms(data):
    world, truth_sets = _build(*data)
    msgs = SemanticMessageSet.from_mapping({f"x{i}": t for i, t in enumerate(truth_sets)})
    per = sum(logical_probability(world, m) * semantic_information(world, m) for m in msgs)
    assert semantic_entropy(world, msgs) == pytest.approx(per, abs=1e-12)
    assert semantic_entropy(world, msgs) >= 0


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0))
def test_information_antitone(p1, p2):
    lo, hi = sorted((p1, p2))
    world = FiniteWorld(["a", "b", "c"], [lo / 2, hi / 2, 1 - lo / 2 - hi / 2])
    i_lo = semantic_information(world, SemanticMessage("x", ["a"]))
    i_hi = semantic_information(world, SemanticMessage("y", ["b"]))
    assert i_lo >= i_hi >= 0
    assert semantic_information(world, SemanticMessage("t", ["a", "b", "c"])) == 0.0


memberships = st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n).filter(lambda m: sum(m) > 1e-3),
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
        st.floats(0.01, 1.0),
    )
)


@settings(max_examples=150, deadline=None)
@given(memberships)
def test_fuzzy_entropy_scale_invariant_and_bounded(data):
    mu, labels, scale = data
    states = [f"s{i}" for i in range(len(mu))]
    groups = {}
    for s, lab in zip(states, labels):
        groups.setdefault(lab, []).append(s)
    classes = list(groups.values())
    c = FuzzyConcept(dict(zip(states, mu)), classes)
    scaled = FuzzyConcept({s: m * scale for s, m in zip(states, mu)}, classes)
    h = fuzzy_semantic_entropy(c)
    assert fuzzy_semantic_entropy(scaled) == pytest.approx(h, abs=1e-9)
    assert -1e-12 <= h <= math.log2(len(classes)) + 1e-12


def test_fuzzy_entropy_max_iff_equal_degrees():
    equal = FuzzyConcept({"a": 0.3, "b": 0.3, "c": 0.3}, [["a"], ["b"], ["c"]])
    skew = FuzzyConcept({"a": 0.3, "b": 0.3, "c": 0.31}, [["a"], ["b"], ["c"]])
    assert fuzzy_semantic_entropy(equal) == pytest.approx(math.log2(3), abs=1e-12)
    assert fuzzy_semantic_entropy(skew) < math.log2(3) - 1e-6
