"""Step-firing semantics of nets with boundaries as two-labelled transition systems.

Every transition of a :class:`TwoLts` carries a left and a right label.
Labels are strings over ``"01"`` whose length is the arity of the boundary
they annotate: bit ``i`` is ``"1"`` iff the fired step used port ``i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import BudgetExceededError, InputError, StepNotEnabledError
from .net import Pnb, Transition

DEFAULT_STATE_BUDGET = 1_000_000


class StepMode(str, Enum):
    FULL = "full"
    BOUNDARY_COMPLETE = "boundary-complete"


def label_word(ports, arity: int) -> str:
    return "".join("1" if i in ports else "0" for i in range(arity))


@dataclass(frozen=True)
class TwoLts:
    left: int
    right: int
    states: frozenset
    transitions: frozenset  # (src, left word, right word, dst)

    @property
    def silent(self) -> tuple[str, str]:
        return "0" * self.left, "0" * self.right

    def is_reflexive(self) -> bool:
        lz, rz = self.silent
        return all((s, lz, rz, s) in self.transitions for s in self.states)


def _check_marking(net: Pnb, m) -> frozenset:
    m = frozenset(m)
    unknown = m - set(net.places)
    if unknown:
        raise InputError(f"marking mentions unknown place(s) {sorted(unknown)} of net {net.name!r}")
    return m


def _independent_subsets(ts: list[Transition]):
    """All pairwise independent subsets of ``ts`` by backtracking (includes ``()``)."""
    out = []
    chosen: list[Transition] = []

    def go(k):
        if k == len(ts):
            out.append(tuple(chosen))
            return
        go(k + 1)
        t = ts[k]
        if all(t.independent(c) for c in chosen):
            chosen.append(t)
            go(k + 1)
            chosen.pop()

    go(0)
    return out


def enabled_steps(net: Pnb, m, mode: StepMode = StepMode.FULL) -> list[tuple]:
    """Steps (tuples of transitions) that may fire at ``m``.

    In ``boundary-complete`` mode internal transitions only fire alone; any
    step of internal transitions can be sequentialised, so the weak
    behaviour is the same.
    """
    m = _check_marking(net, m)
    enabled = [t for t in net.transitions if t.enabled(m)]
    if StepMode(mode) is StepMode.FULL:
        return _independent_subsets(enabled)
    boundary = [t for t in enabled if t.touches_boundary()]
    steps = _independent_subsets(boundary)
    steps.extend((t,) for t in enabled if not t.touches_boundary())
    return steps


def fire_step(net: Pnb, m, step) -> frozenset:
    m = _check_marking(net, m)
    step = tuple(step)
    for k, t in enumerate(step):
        if not t.enabled(m):
            raise StepNotEnabledError(f"transition {t.name!r} is not enabled at {sorted(m)}")
        if not all(t.independent(u) for u in step[k + 1:]):
            raise StepNotEnabledError(f"step contains dependent transitions ({t.name!r})")
    pre = frozenset().union(*(t.pre for t in step))
    post = frozenset().union(*(t.post for t in step))
    return (m - pre) | post


def step_labels(net: Pnb, step) -> tuple[str, str]:
    lp = frozenset().union(*(t.lports for t in step))
    rp = frozenset().union(*(t.rports for t in step))
    return label_word(lp, net.left), label_word(rp, net.right)


def build_two_lts(net: Pnb, seeds, mode: StepMode = StepMode.BOUNDARY_COMPLETE,
                  budget: int = DEFAULT_STATE_BUDGET) -> TwoLts:
    """Explore the markings reachable from ``seeds`` by steps in ``mode``."""
    seeds = [_check_marking(net, s) for s in seeds]
    seen = set(seeds)
    if len(seen) > budget:
        raise BudgetExceededError(budget)
    queue = deque(seen)
    transitions = set()
    while queue:
        m = queue.popleft()
        for step in enabled_steps(net, m, mode):
            pre = frozenset().union(*(t.pre for t in step))
            post = frozenset().union(*(t.post for t in step))
            m2 = (m - pre) | post
            lw, rw = step_labels(net, step)
            transitions.add((m, lw, rw, m2))
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > budget:
                    raise BudgetExceededError(budget)
                queue.append(m2)
    return TwoLts(net.left, net.right, frozenset(seen), frozenset(transitions))


def all_markings(net: Pnb) -> list[frozenset]:
    places = list(net.places)
    return [
        frozenset(p for k, p in enumerate(places) if bits >> k & 1)
        for bits in range(1 << len(places))
    ]
