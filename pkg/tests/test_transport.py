from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloquant.errors import ResourceLimitError
from cycloquant.groups import a5_rep3prime, mz_splitter
from cycloquant.interferometer import standard_elements
from cycloquant.linalg import CycVector, born, matrix_power
from cycloquant.transport import (
    ObservationSequence,
    TransportBunch,
    delta_bunch,
    entropy_of,
    enumerate_sequences,
    index_to_sequence,
    sequence_index,
    sequence_value,
    step_probabilities,
    trajectory_entropy,
    trajectory_probability,
    transition_probability,
    uniform_bunch,
)

from oracles import dense_transition

S, M = standard_elements()
UP, DOWN = CycVector([1, 0]), CycVector([0, 1])
states = st.sampled_from([UP, DOWN, CycVector([1, 1]), CycVector([1, -1]), CycVector([2, 0])])


def test_sequence_indexing_is_lexicographic():
    seqs = list(enumerate_sequences(3, 2))
    assert seqs[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    for k, g in enumerate(seqs):
        assert sequence_index(g, 3) == k
        assert index_to_sequence(k, 3, 2) == g


def test_enumeration_ceiling():
    with pytest.raises(ResourceLimitError):
        enumerate_sequences(2, 30, ceiling=10**6)
    with pytest.raises(ResourceLimitError):
        uniform_bunch(40, [S, M])


def test_sequence_value_is_ordered_product():
    u, v, w = a5_rep3prime()
    assert sequence_value([0, 1, 2], [u, v, w]) == u @ v @ w


@pytest.mark.parametrize("dt", range(1, 7))
@pytest.mark.parametrize("prev", [UP, DOWN, CycVector([1, 1])])
def test_delta_bunch_is_unitary_evolution(dt, prev):
    bunch = delta_bunch(0, dt, [S])
    for nxt in (UP, DOWN):
        assert transition_probability(bunch, prev, nxt) == born(nxt, matrix_power(S, dt) @ prev)


@given(st.integers(1, 8), states, states)
@settings(max_examples=40, deadline=None)
def test_uniform_two_element_bunch_matches_dense_sum(dt, prev, nxt):
    rep = [S, M]
    bunch = uniform_bunch(dt, rep)
    weights = {k: Fraction(1, 2**dt) for k in range(2**dt)}
    assert transition_probability(bunch, prev, nxt) == dense_transition(rep, weights, dt, prev, nxt)


@given(st.integers(1, 4), st.dictionaries(st.integers(0, 15), st.integers(1, 5), min_size=1), states, states)
@settings(max_examples=40, deadline=None)
def test_sparse_weights_match_dense_sum(dt, raw, prev, nxt):
    count = 2**dt
    raw = {k % count: w for k, w in raw.items()}
    total = sum(raw.values())
    weights = {k: Fraction(w, total) for k, w in raw.items()}
    rep = [S, mz_splitter(4)]
    bunch = TransportBunch((S, mz_splitter(4)), dt, weights)
    assert transition_probability(bunch, prev, nxt) == dense_transition(rep, weights, dt, prev, nxt)


def test_bunch_validation():
    with pytest.raises(ValueError):
        TransportBunch((S,), 2, {0: Fraction(1, 2)})
    with pytest.raises(ValueError):
        TransportBunch((S, M), 1, {0: Fraction(3, 2), 1: Fraction(-1, 2)})
    with pytest.raises(ValueError):
        TransportBunch((S, M), 1, {5: 1})


def test_observation_sequence_validation():
    with pytest.raises(ValueError):
        ObservationSequence((0, 0), (UP, UP))
    with pytest.raises(ValueError):
        ObservationSequence((0,), (UP,))
    with pytest.raises(ValueError):
        ObservationSequence((0, 1), (UP, CycVector([0, 0])))
    assert ObservationSequence((0, 2, 5), (UP, UP, DOWN)).intervals == [2, 3]


def test_trajectory_is_product_and_entropy_is_sum():
    seq = ObservationSequence((0, 1, 3, 4), (UP, DOWN, UP, UP))
    bunches = [delta_bunch(0, 1, [S]), uniform_bunch(2, [S, M]), delta_bunch(0, 1, [S])]
    steps = step_probabilities(seq, bunches)
    assert trajectory_probability(seq, bunches) == math.prod(steps[1:], start=steps[0])
    assert math.isclose(trajectory_entropy(seq, bunches), sum(entropy_of(p) for p in steps))
    with pytest.raises(ValueError):
        step_probabilities(seq, bunches[:2])
    with pytest.raises(ValueError):
        step_probabilities(seq, [bunches[1]] * 3)


def test_entropy_of_zero_and_rationals():
    from cycloquant.cyclotomic import Cyclotomic

    assert entropy_of(Cyclotomic.rational(0)) == -math.inf
    assert entropy_of(Cyclotomic.rational(Fraction(1, 4))) == pytest.approx(-math.log(4))
