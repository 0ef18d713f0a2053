from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloquant.cyclotomic import root_of_unity
from cycloquant.errors import ParseError
from cycloquant.interferometer import (
    Circuit,
    Detector,
    PhaseShifter,
    Splitter,
    bomb_test,
    enumerate_branches,
    input_state,
    parse_circuit,
    run_unitary,
    standard_elements,
)
from cycloquant.linalg import CycVector

from oracles import M_NUM, S_NUM, bomb_numbers

tokens = st.sampled_from(["S", "M", "P(upper,1/8)", "P(lower,3/4)", "D(lower)", "D(upper,pass)"])
circuits = st.lists(tokens, max_size=6).map(",".join)
quarter_tokens = st.sampled_from(["S", "M", "P(upper,1/4)", "P(lower,1/2)", "D(lower)", "D(upper,pass)"])


def test_mirror_is_splitter_squared():
    s, m = standard_elements()
    assert s @ s == m


def test_balanced_interferometer():
    s, m = standard_elements()
    up = input_state("upper")
    assert run_unitary(parse_circuit("S,M,S"), up) == up * -1
    assert (s @ s @ s @ s) @ up == up * -1
    (only,) = enumerate_branches(parse_circuit("S,M,S"), up)
    assert only.label == "out=upper" and only.probability == 1


def test_bomb_matches_float_oracle():
    outcomes = bomb_test()
    assert [o.probability for o in outcomes] == [1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
    ref = bomb_numbers()
    got = [float(o.probability) for o in outcomes]
    assert np.allclose(got, [ref["defective_upper"], ref["exploded"], ref["untested"], ref["intact"]])


def test_bomb_final_states():
    z = root_of_unity(8, 1)
    defective, _, untested, intact = bomb_test()
    assert defective.branch.amplitude == CycVector([-1, 0])
    assert untested.branch.amplitude == CycVector([Fraction(-1, 2), 0])
    assert intact.branch.amplitude == CycVector([0, z**2 / 2])


@given(circuits, st.sampled_from(["upper", "lower"]))
@settings(max_examples=80, deadline=None)
def test_branch_probabilities_sum_to_one(text, arm):
    branches = enumerate_branches(parse_circuit(text), input_state(arm))
    assert sum(b.probability for b in branches) == 1
    assert all(0 <= b.probability.to_complex().real <= 1 + 1e-12 for b in branches)


@given(st.lists(quarter_tokens, max_size=6).map(",".join))
@settings(max_examples=80, deadline=None)
def test_quarter_turn_phases_keep_probabilities_rational(text):
    branches = enumerate_branches(parse_circuit(text), input_state("upper"))
    assert all(b.exact is not None for b in branches)


def test_eighth_turn_phase_gives_irrational_probability():
    branches = enumerate_branches(parse_circuit("S,P(upper,1/8),S"), input_state("upper"))
    assert all(b.exact is None for b in branches)


@given(st.lists(st.sampled_from(["S", "M"]), max_size=8))
@settings(max_examples=60, deadline=None)
def test_unitary_runs_match_float_products(names):
    state = run_unitary(parse_circuit(",".join(names)), input_state("upper"))
    psi = np.array([1, 0], dtype=complex)
    for n in names:
        psi = (S_NUM if n == "S" else M_NUM) @ psi
    assert np.allclose(state.to_complex(), psi, atol=1e-12)


def test_phase_shifter_and_general_splitter():
    p = PhaseShifter("lower", 1, 4)
    assert p.matrix().diag() == [1, root_of_unity(4, 1)]
    bs = parse_circuit("BS(0,z @4)")
    assert bs.elements[0].matrix() @ input_state("upper") == CycVector([0, root_of_unity(4, 1)])
    with pytest.raises(ValueError):
        Splitter(root_of_unity(8, 1), root_of_unity(8, 1))


def test_empty_circuit_is_identity():
    (b,) = enumerate_branches(Circuit(), input_state("lower"))
    assert b.label == "out=lower" and b.probability == 1


def test_non_absorbing_detector_keeps_both_paths():
    branches = enumerate_branches(parse_circuit("S,D(lower,pass),S"), input_state("upper"))
    assert len(branches) == 4
    assert all(b.probability == Fraction(1, 4) for b in branches)


def test_parse_errors():
    for bad in ["X", "D(left)", "P(upper,a/b)", "S,(", "D(upper,maybe)", "BS(1)"]:
        with pytest.raises(ParseError):
            parse_circuit(bad)
    with pytest.raises(ValueError):
        run_unitary(Circuit((Detector("upper"),)), input_state("upper"))
    assert str(parse_circuit("S, D(lower) ,M")) == "S,D(lower),M"
