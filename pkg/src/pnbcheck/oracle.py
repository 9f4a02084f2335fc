"""Monolithic baseline: flatten an expression and search its markings.

Also hosts the seeded random generators used by the property suites.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .automata import AcceptanceMode, Nfa, satisfies
from .errors import BudgetExceededError, InputError, OpenBoundaryError, StepNotEnabledError
from .expr import Expr, Leaf, Seq, Tensor, typecheck
from .net import Pnb, Transition, compose, qualify_marking, tensor, validate

DEFAULT_ORACLE_BUDGET = 1 << 22

# Chance that a generated transition attaches to each available boundary
# port. At 0.35, 657 of 1000 default-limit nets have a boundary transition.
PORT_PROBABILITY = 0.35
PLACE_PROBABILITY = 0.35


@dataclass(frozen=True)
class FlatProblem:
    net: Pnb
    init: frozenset
    target: frozenset
    mode: AcceptanceMode = AcceptanceMode.EXACT


@dataclass(frozen=True)
class SearchResult:
    reachable: bool
    witness: tuple | None = None  # transitions of the flat net, in firing order
    distance: int | None = None
    explored: int = 0

    @property
    def witness_names(self) -> list[str] | None:
        return None if self.witness is None else [t.name for t in self.witness]


def _flatten(e: Expr):
    if isinstance(e, Leaf):
        return e.net, e.init, e.target, {e.mode}
    ln, li, lt, lm = _flatten(e.left)
    rn, ri, rt, rm = _flatten(e.right)
    net = compose(ln, rn) if isinstance(e, Seq) else tensor(ln, rn)
    q = qualify_marking
    return (net, q("L.", li) | q("R.", ri), q("L.", lt) | q("R.", rt), lm | rm)


def flatten(e: Expr) -> FlatProblem:
    """Build the single global net of a closed expression."""
    btype = typecheck(e)
    if btype != (0, 0):
        raise OpenBoundaryError(btype)
    net, init, target, modes = _flatten(e)
    if len(modes) != 1:
        raise InputError("leaves of one expression must share an acceptance mode")
    return FlatProblem(net, init, target, modes.pop())


def search(p: FlatProblem, budget: int = DEFAULT_ORACLE_BUDGET) -> SearchResult:
    """Breadth-first search firing one transition at a time.

    Markings are bit patterns over the flat net's places.  In a 1-safe net
    every enabled step can be fired one transition after another, so single
    firings reach the same markings as steps.
    """
    index = {pl: k for k, pl in enumerate(p.net.places)}

    def mask(places):
        out = 0
        for pl in places:
            out |= 1 << index[pl]
        return out

    compiled = [(mask(t.pre), mask(t.post), mask(t.guard), t) for t in p.net.transitions]
    start = mask(p.init)
    goal = mask(p.target)
    exact = AcceptanceMode(p.mode) is AcceptanceMode.EXACT

    def ok(m):
        return m == goal if exact else m & goal == goal

    parent = {start: None}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        if ok(m):
            path = []
            while parent[m] is not None:
                m, t = parent[m]
                path.append(t)
            path.reverse()
            return SearchResult(True, tuple(path), len(path), len(parent))
        for pre, post, guard, t in compiled:
            if m & pre == pre and not m & guard:
                m2 = (m & ~pre) | post
                if m2 not in parent:
                    parent[m2] = (m, t)
                    if len(parent) > budget:
                        raise BudgetExceededError(budget, "markings")
                    queue.append(m2)
    return SearchResult(False, explored=len(parent))


def replay(net: Pnb, init, witness) -> frozenset:
    """Fire ``witness`` transition by transition; raises if one is not enabled."""
    m = frozenset(init)
    for t in witness:
        if not t.enabled(m):
            raise StepNotEnabledError(f"witness transition {t.name!r} not enabled at {sorted(m)}")
        m = (m - t.pre) | t.post
    return m


def witness_valid(p: FlatProblem, res: SearchResult) -> bool:
    if not res.reachable:
        return False
    try:
        end = replay(p.net, p.init, res.witness)
    except StepNotEnabledError:
        return False
    return satisfies(end, p.target, p.mode)


# -- generators ---------------------------------------------------------------


def _subset(rng: random.Random, items, prob: float) -> frozenset:
    return frozenset(x for x in items if rng.random() < prob)


def random_pnb(seed, max_places: int = 3, max_transitions: int = 4, max_arity: int = 2,
               left: int | None = None, right: int | None = None,
               port_prob: float = PORT_PROBABILITY, name: str | None = None) -> Pnb:
    """A valid random net, deterministic in ``seed``."""
    if min(max_places, max_transitions, max_arity) < 0:
        raise ValueError("limits must be non-negative")
    rng = random.Random(seed)
    left = rng.randint(0, max_arity) if left is None else left
    right = rng.randint(0, max_arity) if right is None else right
    places = [f"p{k}" for k in range(rng.randint(0, max_places))]
    ts = {}
    for k in range(rng.randint(0, max_transitions)):
        for _ in range(20):
            t = Transition(
                f"t{k}",
                pre=_subset(rng, places, PLACE_PROBABILITY),
                post=_subset(rng, places, PLACE_PROBABILITY),
                lports=_subset(rng, range(left), port_prob),
                rports=_subset(rng, range(right), port_prob),
            )
            if not t.is_empty() and t not in ts:
                ts[t] = t
                break
    net = Pnb(name or f"n{seed}", left, right, places, list(ts.values()))
    assert not validate(net), validate(net)
    return net


def random_marking(rng: random.Random, net: Pnb) -> frozenset:
    return frozenset(p for p in net.places if rng.random() < 0.5)


def random_expr(seed, max_depth: int = 3, max_places: int = 3, max_transitions: int = 4,
                max_arity: int = 2, mode: AcceptanceMode | None = None) -> Expr:
    """A random closed expression of type (0,0), deterministic in ``seed``."""
    rng = random.Random(seed)
    if mode is None:
        mode = rng.choice([AcceptanceMode.EXACT, AcceptanceMode.COVERING])
    counter = [0]

    def leaf(left, right):
        counter[0] += 1
        net = random_pnb(rng.getrandbits(32), max_places, max_transitions, max_arity,
                         left=left, right=right, name=f"n{counter[0]}")
        return Leaf(net, random_marking(rng, net), random_marking(rng, net), mode)

    def gen(left, right, depth):
        if depth == 0 or rng.random() < 0.3:
            return leaf(left, right)
        if rng.random() < 0.7:
            k = rng.randint(0, max_arity)
            return Seq(gen(left, k, depth - 1), gen(k, right, depth - 1))
        l1 = rng.randint(0, left)
        r1 = rng.randint(0, right)
        return Tensor(gen(l1, r1, depth - 1), gen(left - l1, right - r1, depth - 1))

    return gen(0, 0, max_depth)


def random_nfa(seed, max_states: int = 6, left: int | None = None, right: int | None = None,
               density: float = 0.25, silent_prob: float = 0.15) -> Nfa:
    """A random reflexive automaton over a small boundary alphabet."""
    rng = random.Random(seed)
    left = rng.randint(0, 1) if left is None else left
    right = rng.randint(1, 2) if right is None else right
    n = rng.randint(1, max_states)
    sil = ("0" * left, "0" * right)
    words = [(format(i, f"0{left}b") if left else "", format(j, f"0{right}b") if right else "")
             for i in range(1 << left) for j in range(1 << right)]
    loud = [w for w in words if w != sil][:3]
    trans = {(s, *sil, s) for s in range(n)}
    for s in range(n):
        for d in range(n):
            if s != d and rng.random() < silent_prob:
                trans.add((s, *sil, d))
            for w in loud:
                if rng.random() < density:
                    trans.add((s, *w, d))
    init = {rng.randrange(n)}
    if rng.random() < 0.2:
        init.add(rng.randrange(n))
    acc = {s for s in range(n) if rng.random() < 0.3}
    return Nfa(left, right, frozenset(range(n)), frozenset(trans), frozenset(init),
               frozenset(acc))
