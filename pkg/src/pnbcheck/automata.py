"""Reachability automata over boundary labels.

An :class:`Nfa` is a two-labelled transition system with initial and
accepting states.  Its letters are pairs ``(left word, right word)``; the
all-zeros pair is the silent letter and behaves like an epsilon move.  The
weak language of an automaton is the set of letter sequences, silent
letters erased, read along paths from an initial to an accepting state.

Every automaton built here is reflexive (each state carries a silent
self-loop) so that the synchronising product never deadlocks on a label one
side cannot idle on.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable

from .errors import ArityError, CompositionError, InputError
from .semantics import TwoLts


class AcceptanceMode(str, Enum):
    EXACT = "exact"
    COVERING = "covering"


class ReduceLevel(str, Enum):
    NONE = "none"
    TRIM = "trim"
    STANDARD = "standard"


@dataclass(frozen=True)
class Nfa:
    left: int
    right: int
    states: frozenset
    transitions: frozenset  # (src, left word, right word, dst)
    initial: frozenset
    accepting: frozenset
    origin: dict | None = field(default=None, compare=False, repr=False, hash=False)

    @property
    def silent(self) -> tuple[str, str]:
        return "0" * self.left, "0" * self.right

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def succ(self) -> dict:
        """state -> sorted list of ((left, right), dst)."""
        out = {s: [] for s in self.states}
        for s, lw, rw, d in self.transitions:
            out[s].append(((lw, rw), d))
        for v in out.values():
            v.sort()
        return out

    @cached_property
    def letters(self) -> frozenset:
        sil = self.silent
        return frozenset((lw, rw) for _, lw, rw, _ in self.transitions if (lw, rw) != sil)

    def is_reflexive(self) -> bool:
        lz, rz = self.silent
        return all((s, lz, rz, s) in self.transitions for s in self.states)

    def signature(self) -> tuple:
        """Cheap structural fingerprint used as a prefilter by memo tables."""
        hist = Counter((lw, rw) for _, lw, rw, _ in self.transitions)
        del hist[self.silent]
        return (self.left, self.right, self.size, tuple(sorted(hist.items())))


def _build(left, right, keys: list, trans_by_key: Iterable, init_keys, acc_keys,
           origin=None) -> Nfa:
    """Renumber hashable state keys to ``0..n-1`` in the order of ``keys``."""
    ids = {k: i for i, k in enumerate(keys)}
    transitions = frozenset((ids[s], lw, rw, ids[d]) for s, lw, rw, d in trans_by_key)
    org = None
    if origin is not None:
        org = {ids[k]: origin(k) for k in keys}
    return Nfa(
        left,
        right,
        frozenset(range(len(keys))),
        transitions,
        frozenset(ids[k] for k in init_keys),
        frozenset(ids[k] for k in acc_keys),
        org,
    )


def empty_nfa(left: int, right: int) -> Nfa:
    """The canonical empty automaton: one non-accepting initial state."""
    sil = ("0" * left, "0" * right)
    return Nfa(left, right, frozenset([0]), frozenset([(0, *sil, 0)]),
               frozenset([0]), frozenset())


def universal_nfa(left: int, right: int, letters: Iterable[tuple[str, str]]) -> Nfa:
    """One accepting state looping on every given letter and on silence."""
    sil = ("0" * left, "0" * right)
    ts = {(0, *sil, 0)} | {(0, lw, rw, 0) for lw, rw in letters}
    return Nfa(left, right, frozenset([0]), frozenset(ts), frozenset([0]), frozenset([0]))


def is_canonical_empty(a: Nfa) -> bool:
    return a == empty_nfa(a.left, a.right)


def _marking_key(m):
    return (len(m), tuple(sorted(m)))


def satisfies(m, target, mode: AcceptanceMode) -> bool:
    if AcceptanceMode(mode) is AcceptanceMode.EXACT:
        return m == target
    return target <= m


def from_two_lts(lts: TwoLts, init, target, mode: AcceptanceMode = AcceptanceMode.EXACT) -> Nfa:
    """Turn a transition system over markings into a reachability automaton."""
    init = frozenset(init)
    target = frozenset(target)
    if init not in lts.states:
        raise InputError(f"initial marking {sorted(init)} is not a state of the transition system")
    keys = [init] + sorted(lts.states - {init}, key=_marking_key)
    acc = [m for m in keys if satisfies(m, target, mode)]
    return _build(lts.left, lts.right, keys, lts.transitions, [init], acc, origin=lambda k: k)


def lts_as_nfa(lts: TwoLts, initial=None, accepting=None) -> Nfa:
    """Every state initial and accepting unless told otherwise."""
    keys = sorted(lts.states, key=_marking_key)
    initial = keys if initial is None else initial
    accepting = keys if accepting is None else accepting
    return _build(lts.left, lts.right, keys, lts.transitions, initial, accepting,
                  origin=lambda k: k)


def _origin_of(a: Nfa, s):
    return a.origin[s] if a.origin is not None else s


def compose_nfa(a: Nfa, b: Nfa) -> Nfa:
    """Synchronise ``a`` and ``b`` on the shared boundary: a ; b."""
    if a.right != b.left:
        raise CompositionError(a.right, b.left, "automaton composition")
    b_index: dict = {}
    for s, lw, rw, d in b.transitions:
        b_index.setdefault((s, lw), []).append((rw, d))
    for v in b_index.values():
        v.sort()
    start = sorted((x, y) for x in a.initial for y in b.initial)
    seen = {p: None for p in start}
    queue = deque(start)
    trans = []
    while queue:
        x, y = queue.popleft()
        for (alpha, beta), x2 in a.succ[x]:
            for gamma, y2 in b_index.get((y, beta), ()):
                nxt = (x2, y2)
                trans.append(((x, y), alpha, gamma, nxt))
                if nxt not in seen:
                    seen[nxt] = None
                    queue.append(nxt)
    keys = list(seen)
    acc = [p for p in keys if p[0] in a.accepting and p[1] in b.accepting]
    return _build(a.left, b.right, keys, trans, start, acc,
                  origin=lambda p: (_origin_of(a, p[0]), _origin_of(b, p[1])))


def tensor_nfa(a: Nfa, b: Nfa) -> Nfa:
    """Independent product, boundaries concatenated (a on top of b)."""
    start = sorted((x, y) for x in a.initial for y in b.initial)
    seen = {p: None for p in start}
    queue = deque(start)
    trans = []
    while queue:
        x, y = queue.popleft()
        for (al, ar), x2 in a.succ[x]:
            for (bl, br), y2 in b.succ[y]:
                nxt = (x2, y2)
                trans.append(((x, y), al + bl, ar + br, nxt))
                if nxt not in seen:
                    seen[nxt] = None
                    queue.append(nxt)
    keys = list(seen)
    acc = [p for p in keys if p[0] in a.accepting and p[1] in b.accepting]
    return _build(a.left + b.left, a.right + b.right, keys, trans, start, acc,
                  origin=lambda p: (_origin_of(a, p[0]), _origin_of(b, p[1])))


def silent_closure(a: Nfa) -> dict:
    """state -> frozenset of states reachable by silent moves (itself included)."""
    sil = a.silent
    silent_succ = {s: [] for s in a.states}
    for s, lw, rw, d in a.transitions:
        if (lw, rw) == sil and s != d:
            silent_succ[s].append(d)
    closure = {}
    for s in a.states:
        seen = {s}
        stack = [s]
        while stack:
            for d in silent_succ[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        closure[s] = frozenset(seen)
    return closure


def saturate_acceptance(a: Nfa) -> Nfa:
    """Make accepting every state that silently reaches an accepting state."""
    if not a.accepting:
        return a
    closure = silent_closure(a)
    acc = frozenset(s for s in a.states if closure[s] & a.accepting)
    if acc == a.accepting:
        return a
    return Nfa(a.left, a.right, a.states, a.transitions, a.initial, acc, a.origin)


def eliminate_silent(a: Nfa) -> Nfa:
    """Fold silent moves into their neighbours; only silent self-loops remain."""
    sil = a.silent
    closure = silent_closure(a)
    loud: dict = {s: [] for s in a.states}
    for s, lw, rw, d in a.transitions:
        if (lw, rw) != sil:
            loud[s].append((lw, rw, d))
    trans = {(s, *sil, s) for s in a.states}
    for s in a.states:
        for s1 in closure[s]:
            for lw, rw, d in loud[s1]:
                for d1 in closure[d]:
                    trans.add((s, lw, rw, d1))
    acc = frozenset(s for s in a.states if closure[s] & a.accepting)
    return Nfa(a.left, a.right, a.states, frozenset(trans), a.initial, acc, a.origin)


def _reach(start: Iterable, edges: dict) -> set:
    seen = set(start)
    stack = list(seen)
    while stack:
        for d in edges.get(stack.pop(), ()):
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def trim(a: Nfa) -> Nfa:
    """Drop states that are unreachable or can not reach acceptance."""
    fwd, bwd = {}, {}
    for s, _, _, d in a.transitions:
        fwd.setdefault(s, []).append(d)
        bwd.setdefault(d, []).append(s)
    keep = _reach(a.initial, fwd) & _reach(a.accepting, bwd)
    init = a.initial & keep
    if not init:
        return empty_nfa(a.left, a.right)
    if len(keep) == len(a.states):
        return a
    trans = frozenset(t for t in a.transitions if t[0] in keep and t[3] in keep)
    org = None if a.origin is None else {s: a.origin[s] for s in keep}
    return Nfa(a.left, a.right, frozenset(keep), trans, init, a.accepting & keep, org)


def quotient_weak_bisim(a: Nfa) -> Nfa:
    """Merge weakly bisimilar states (acceptance saturated along silent moves).

    Partition refinement on the saturated system: ``s => x => t`` when
    ``s`` reaches ``t`` by silence, one ``x`` move, then silence; the silent
    letter relates ``s`` to its silent closure.
    """
    sil = a.silent
    closure = silent_closure(a)
    loud: dict = {s: [] for s in a.states}
    for s, lw, rw, d in a.transitions:
        if (lw, rw) != sil:
            loud[s].append(((lw, rw), d))
    weak: dict = {}
    for s in a.states:
        moves = {(sil, t) for t in closure[s]}
        for s1 in closure[s]:
            for x, d in loud[s1]:
                for d1 in closure[d]:
                    moves.add((x, d1))
        weak[s] = moves
    acc_sat = {s: bool(closure[s] & a.accepting) for s in a.states}

    block = {s: int(acc_sat[s]) for s in a.states}
    n_blocks = len(set(block.values()))
    while True:
        sigs = {s: (block[s], frozenset((x, block[t]) for x, t in weak[s])) for s in a.states}
        numbering: dict = {}
        for s in sorted(a.states):
            numbering.setdefault(sigs[s], len(numbering))
        block = {s: numbering[sigs[s]] for s in a.states}
        if len(numbering) == n_blocks:
            break
        n_blocks = len(numbering)
    if n_blocks == len(a.states):
        return a
    trans = frozenset((block[s], lw, rw, block[d]) for s, lw, rw, d in a.transitions)
    return Nfa(
        a.left,
        a.right,
        frozenset(block.values()),
        trans,
        frozenset(block[s] for s in a.initial),
        frozenset(block[s] for s in a.accepting),
    )


def reduce(a: Nfa, level: ReduceLevel = ReduceLevel.STANDARD) -> Nfa:
    level = ReduceLevel(level)
    if level is ReduceLevel.NONE:
        return a
    if level is ReduceLevel.TRIM:
        return saturate_acceptance(trim(a))
    a = trim(a)
    a = eliminate_silent(a)
    a = quotient_weak_bisim(a)
    a = trim(a)
    return saturate_acceptance(a)


def is_empty(a: Nfa) -> tuple[bool, list | None]:
    """Language emptiness; otherwise a shortest witness word, silent letters elided.

    0-1 breadth-first search: silent moves are free, other letters cost one.
    """
    if not a.accepting:
        return True, None
    sil = a.silent
    dist = {s: 0 for s in a.initial}
    parent: dict = {s: None for s in a.initial}
    dq = deque(sorted(a.initial))
    done = set()
    while dq:
        s = dq.popleft()
        if s in done:
            continue
        done.add(s)
        if s in a.accepting:
            word = []
            while parent[s] is not None:
                s, letter = parent[s]
                if letter != sil:
                    word.append(letter)
            return False, word[::-1]
        for x, d in a.succ[s]:
            w = 0 if x == sil else 1
            nd = dist[s] + w
            if d not in dist or nd < dist[d]:
                dist[d] = nd
                parent[d] = (s, x)
                if w == 0:
                    dq.appendleft(d)
                else:
                    dq.append(d)
    return True, None


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def equivalent(a: Nfa, b: Nfa) -> bool:
    """Weak language equivalence by bisimulation up to congruence.

    Explores pairs of state sets of the (silent-free) determinisations on the
    fly and skips any pair already in the congruence closure of the pairs
    visited or pending.
    """
    if (a.left, a.right) != (b.left, b.right):
        raise ArityError((a.left, a.right), (b.left, b.right), "equivalence check")
    a = eliminate_silent(a)
    b = eliminate_silent(b)
    a_ids = {s: i for i, s in enumerate(sorted(a.states))}
    off = len(a_ids)
    b_ids = {s: off + i for i, s in enumerate(sorted(b.states))}
    sil = a.silent
    succ: dict = {}
    for src, ids in ((a, a_ids), (b, b_ids)):
        for s, lw, rw, d in src.transitions:
            if (lw, rw) == sil:
                continue
            row = succ.setdefault((lw, rw), {})
            row[ids[s]] = row.get(ids[s], 0) | (1 << ids[d])
    letters = sorted(succ)
    acc = 0
    for s in a.accepting:
        acc |= 1 << a_ids[s]
    for s in b.accepting:
        acc |= 1 << b_ids[s]

    def delta(x: int, letter) -> int:
        row = succ[letter]
        out = 0
        for i in _bits(x):
            out |= row.get(i, 0)
        return out

    def normal(z: int, pairs) -> int:
        changed = True
        while changed:
            changed = False
            for u, v in pairs:
                if u & ~z == 0 and v & ~z:
                    z |= v
                    changed = True
                elif v & ~z == 0 and u & ~z:
                    z |= u
                    changed = True
        return z

    x0 = sum(1 << a_ids[s] for s in a.initial)
    y0 = sum(1 << b_ids[s] for s in b.initial)
    done: list = []
    todo = deque([(x0, y0)])
    while todo:
        x, y = todo.popleft()
        if x == y:
            continue
        pairs = done + list(todo)
        if normal(x, pairs) == normal(y, pairs):
            continue
        if bool(x & acc) != bool(y & acc):
            return False
        for letter in letters:
            todo.append((delta(x, letter), delta(y, letter)))
        done.append((x, y))
    return True


def relabel_states(a: Nfa) -> Nfa:
    """Renumber states to ``0..n-1`` in breadth-first order from the initial states."""
    order = []
    seen = set()
    queue = deque(sorted(a.initial))
    seen.update(queue)
    while queue:
        s = queue.popleft()
        order.append(s)
        for _, d in a.succ[s]:
            if d not in seen:
                seen.add(d)
                queue.append(d)
    order += sorted(a.states - seen)
    org = None if a.origin is None else (lambda k: a.origin[k])
    return _build(a.left, a.right, order, a.transitions, a.initial, a.accepting, origin=org)
