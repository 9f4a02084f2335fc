import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import composable_pair, isomorphism_mismatches
from oracles import reachable_markings
from pnbcheck.automata import equivalent, lts_as_nfa
from pnbcheck.errors import BudgetExceededError, InputError, StepNotEnabledError
from pnbcheck.library import bit, buffer, token_move
from pnbcheck.net import Pnb, Transition
from pnbcheck.oracle import random_pnb
from pnbcheck.semantics import (
    StepMode,
    all_markings,
    build_two_lts,
    enabled_steps,
    fire_step,
    label_word,
    step_labels,
)


def _two_independent():
    # two internal transitions on disjoint places, one boundary transition
    return Pnb("n", 0, 1, ("a", "b", "c", "d"), [
        Transition("x", pre={"a"}, post={"b"}),
        Transition("y", pre={"c"}, post={"d"}),
    ])


def test_label_word():
    assert label_word({0, 2}, 3) == "101"
    assert label_word(set(), 0) == ""


def test_full_steps_include_every_independent_subset():
    net = _two_independent()
    steps = enabled_steps(net, {"a", "c"}, StepMode.FULL)
    assert sorted(tuple(t.name for t in s) for s in steps) == [(), ("x",), ("x", "y"), ("y",)]


def test_boundary_complete_fires_internal_transitions_alone():
    net = _two_independent()
    steps = enabled_steps(net, {"a", "c"}, StepMode.BOUNDARY_COMPLETE)
    assert sorted(tuple(t.name for t in s) for s in steps) == [(), ("x",), ("y",)]


def test_guard_blocks_transition_into_marked_place():
    net = token_move()
    assert [s for s in enabled_steps(net, {"A", "B"}) if s] == []


def test_unknown_place_rejected():
    with pytest.raises(InputError):
        enabled_steps(token_move(), {"Z"})


def test_fire_step():
    net = token_move()
    (t,) = net.transitions
    assert fire_step(net, {"A"}, [t]) == {"B"}
    with pytest.raises(StepNotEnabledError):
        fire_step(net, {"B"}, [t])


def test_fire_rejects_dependent_step():
    net = Pnb("n", 0, 0, ("a", "b", "c"), [
        Transition("x", pre={"a"}, post={"b"}),
        Transition("y", pre={"a"}, post={"c"}),
    ])
    with pytest.raises(StepNotEnabledError):
        fire_step(net, {"a"}, net.transitions)


def test_carry_labels_both_sides():
    net = bit()
    assert step_labels(net, [net.transition("carry")]) == ("1", "1")
    assert step_labels(net, [net.transition("inc")]) == ("0", "1")


def test_buffer_semantics():
    lts = build_two_lts(buffer(), [frozenset()])
    assert lts.states == {frozenset(), frozenset({"p"})}
    assert lts.transitions == {
        (frozenset(), "0", "0", frozenset()),
        (frozenset({"p"}), "0", "0", frozenset({"p"})),
        (frozenset(), "1", "0", frozenset({"p"})),
        (frozenset({"p"}), "0", "1", frozenset()),
    }


def test_token_move_from_every_marking():
    lts = build_two_lts(token_move(), all_markings(token_move()))
    assert len(lts.states) == 4
    assert (frozenset({"A"}), "", "", frozenset({"B"})) in lts.transitions
    # AB is stuck apart from idling
    assert [t for t in lts.transitions if t[0] == {"A", "B"}] == [
        (frozenset({"A", "B"}), "", "", frozenset({"A", "B"}))
    ]


def test_budget():
    with pytest.raises(BudgetExceededError):
        build_two_lts(buffer(), [frozenset()], budget=1)


@given(st.integers(0, 10**6), st.sampled_from(list(StepMode)))
@settings(max_examples=200, deadline=None)
def test_every_semantics_is_reflexive(seed, mode):
    net = random_pnb(seed)
    assert build_two_lts(net, all_markings(net), mode).is_reflexive()


@given(st.integers(0, 10**6))
@settings(max_examples=200, deadline=None)
def test_steps_reach_nothing_single_firings_miss(seed):
    net = random_pnb(seed, max_places=4, max_transitions=5)
    for m in all_markings(net):
        assert reachable_markings(net, m, True) == reachable_markings(net, m, False)


@given(st.integers(0, 10**6))
@settings(max_examples=200, deadline=None)
def test_boundary_complete_is_weakly_equivalent_to_full(seed):
    net = random_pnb(seed, max_places=4, max_transitions=5)
    for m in all_markings(net):
        full = lts_as_nfa(build_two_lts(net, [m], StepMode.FULL), initial={m})
        bc = lts_as_nfa(build_two_lts(net, [m], StepMode.BOUNDARY_COMPLETE), initial={m})
        assert equivalent(full, bc)


@given(st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_semantics_of_composite_is_composite_of_semantics(seed):
    m, n = composable_pair(seed)
    assert isomorphism_mismatches(m, n) == set()
