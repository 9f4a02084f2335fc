"""Compositional evaluation of net expressions into reachability automata.

Leaves are translated to automata and reduced; internal nodes compose their
reduced children and reduce again.  Compositions are memoised up to weak
language equivalence of the arguments, and evaluation stops as soon as any
intermediate automaton has an empty language.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Callable

from .automata import (
    Nfa,
    ReduceLevel,
    compose_nfa,
    empty_nfa,
    equivalent,
    from_two_lts,
    is_empty,
    reduce,
    tensor_nfa,
)
from .errors import CompositionError, OpenBoundaryError
from .expr import Expr, Leaf, Seq, Tensor, typecheck
from .semantics import DEFAULT_STATE_BUDGET, StepMode, build_two_lts

REACHABLE = "reachable"
UNREACHABLE = "unreachable"


@dataclass
class CheckOptions:
    reduce_level: ReduceLevel = ReduceLevel.STANDARD
    memo: bool = True
    step_mode: StepMode = StepMode.BOUNDARY_COMPLETE
    budget: int = DEFAULT_STATE_BUDGET
    engine: str = "compositional"  # or "monolithic"
    # "greedy" re-associates chains of ';' by cheapest reduced product,
    # "tree" follows the parsed tree exactly
    assoc: str = "greedy"
    # called as trace(node_id, automaton) for every automaton built
    trace: Callable[[str, Nfa], None] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.reduce_level = ReduceLevel(self.reduce_level)
        self.step_mode = StepMode(self.step_mode)
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.engine not in ("compositional", "monolithic"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.assoc not in ("greedy", "tree"):
            raise ValueError(f"unknown association strategy {self.assoc!r}")


@dataclass
class NodeStat:
    node: str
    op: str
    states_before: int
    states_after: int
    seconds: float
    memo_hit: bool = False


@dataclass
class CheckResult:
    verdict: str
    stats: list[NodeStat] = field(default_factory=list)
    memo_hits: int = 0
    total_time: float = 0.0
    automaton: Nfa | None = field(default=None, repr=False)
    witness: tuple | None = field(default=None, repr=False)
    distance: int | None = None

    @property
    def reachable(self) -> bool:
        return self.verdict == REACHABLE


class MemoTable:
    """Composition results keyed by the weak languages of their arguments.

    Entries are grouped by the structural signatures of both arguments; a
    lookup walks the matching group and confirms each candidate with the
    equivalence checker.  Safe to share between threads.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._groups: dict = {}
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return sum(len(g) for g in self._groups.values())

    def _find(self, key, a, b):
        for ra, rb, result in self._groups.get(key, ()):
            if equivalent(a, ra) and equivalent(b, rb):
                return result
        return None

    def lookup(self, op: str, a: Nfa, b: Nfa) -> Nfa | None:
        key = (op, a.signature(), b.signature())
        with self._lock:
            group = list(self._groups.get(key, ()))
        for ra, rb, result in group:
            if equivalent(a, ra) and equivalent(b, rb):
                with self._lock:
                    self.hits += 1
                return result
        with self._lock:
            self.misses += 1
        return None

    def insert(self, op: str, a: Nfa, b: Nfa, result: Nfa) -> Nfa:
        """Store ``result``; if an equivalent entry won a race, return that one."""
        key = (op, a.signature(), b.signature())
        with self._lock:
            existing = self._find(key, a, b)
            if existing is not None:
                return existing
            self._groups.setdefault(key, []).append((a, b, result))
            return result


class _EmptyLanguage(Exception):
    pass


@dataclass
class _Candidate:
    result: Nfa
    raw_size: int
    seconds: float
    memo_hit: bool


class Evaluator:
    def __init__(self, opts: CheckOptions | None = None, memo: MemoTable | None = None):
        self.opts = opts or CheckOptions()
        self.memo = memo if memo is not None else (MemoTable() if self.opts.memo else None)
        self.stats: list[NodeStat] = []
        self.memo_hits = 0

    def _trace(self, node, a):
        if self.opts.trace is not None:
            self.opts.trace(node, a)

    def leaf(self, leaf: Leaf, node: str) -> Nfa:
        t0 = time.perf_counter()
        lts = build_two_lts(leaf.net, [leaf.init], self.opts.step_mode, self.opts.budget)
        raw = from_two_lts(lts, leaf.init, leaf.target, leaf.mode)
        self._trace(node, raw)
        red = reduce(raw, self.opts.reduce_level)
        self._trace(node, red)
        self.stats.append(NodeStat(node, "leaf", raw.size, red.size, time.perf_counter() - t0))
        if is_empty(red)[0]:
            raise _EmptyLanguage(node)
        return red

    def _combine(self, op: str, a: Nfa, b: Nfa, node: str) -> _Candidate:
        t0 = time.perf_counter()
        if self.memo is not None:
            hit = self.memo.lookup(op, a, b)
            if hit is not None:
                return _Candidate(hit, hit.size, time.perf_counter() - t0, True)
        raw = compose_nfa(a, b) if op == ";" else tensor_nfa(a, b)
        self._trace(node, raw)
        red = reduce(raw, self.opts.reduce_level)
        if is_empty(red)[0]:
            red = empty_nfa(red.left, red.right)
        self._trace(node, red)
        if self.memo is not None:
            red = self.memo.insert(op, a, b, red)
        return _Candidate(red, raw.size, time.perf_counter() - t0, False)

    def _commit(self, op: str, cand: _Candidate, node: str) -> Nfa:
        self.stats.append(
            NodeStat(node, op, cand.raw_size, cand.result.size, cand.seconds, cand.memo_hit)
        )
        if cand.memo_hit:
            self.memo_hits += 1
        if not cand.result.accepting:
            raise _EmptyLanguage(node)
        return cand.result

    def node(self, e: Expr, path: str = "r") -> Nfa:
        if isinstance(e, Leaf):
            return self.leaf(e, path)
        if isinstance(e, Tensor):
            a = self.node(e.left, path + ".0")
            b = self.node(e.right, path + ".1")
            return self._commit("+", self._combine("+", a, b, path), path)
        if self.opts.assoc == "tree":
            a = self.node(e.left, path + ".0")
            b = self.node(e.right, path + ".1")
            if a.right != b.left:
                raise CompositionError(a.right, b.left, path)
            return self._commit(";", self._combine(";", a, b, path), path)
        return self._chain(e, path)

    def _chain(self, e: Seq, path: str) -> Nfa:
        """Evaluate a maximal run of ';' nodes, merging the cheapest adjacent pair first."""
        operands: list[tuple[Expr, str]] = []

        def flatten(x, p):
            if isinstance(x, Seq):
                flatten(x.left, p + ".0")
                flatten(x.right, p + ".1")
            else:
                operands.append((x, p))

        flatten(e, path)
        autos = [self.node(x, p) for x, p in operands]
        names = [p for _, p in operands]
        cands: list[_Candidate | None] = [None] * (len(autos) - 1)
        while len(autos) > 1:
            for i, c in enumerate(cands):
                if c is None:
                    cands[i] = self._combine(";", autos[i], autos[i + 1],
                                             f"{names[i]};{names[i + 1]}")
            best = min(range(len(cands)),
                       key=lambda i: (cands[i].result.size, cands[i].raw_size, i))
            node = f"({names[best]} ; {names[best + 1]})"
            merged = self._commit(";", cands[best], node)
            n = len(autos)
            autos[best:best + 2] = [merged]
            names[best:best + 2] = [node]
            cands = (cands[:max(best - 1, 0)] + ([None] if best > 0 else [])
                     + ([None] if best + 2 < n else []) + cands[best + 2:])
        return autos[0]


def evaluate(e: Expr, opts: CheckOptions | None = None, memo: MemoTable | None = None,
             evaluator: Evaluator | None = None) -> Nfa:
    """Reduced automaton of ``e``; the canonical empty automaton if its language is empty."""
    btype = typecheck(e)
    ev = evaluator or Evaluator(opts, memo)
    try:
        return ev.node(e)
    except _EmptyLanguage:
        return empty_nfa(btype.left, btype.right)


def check(e: Expr, opts: CheckOptions | None = None, memo: MemoTable | None = None) -> CheckResult:
    """Decide whether the target markings of ``e`` are jointly reachable."""
    opts = opts or CheckOptions()
    btype = typecheck(e)
    if btype != (0, 0):
        raise OpenBoundaryError(btype)
    t0 = time.perf_counter()
    if opts.engine == "monolithic":
        from .oracle import flatten, search

        res = search(flatten(e), budget=opts.budget)
        return CheckResult(
            REACHABLE if res.reachable else UNREACHABLE,
            total_time=time.perf_counter() - t0,
            witness=res.witness,
            distance=res.distance,
        )
    ev = Evaluator(opts, memo)
    a = evaluate(e, evaluator=ev)
    empty, _ = is_empty(a)
    return CheckResult(
        UNREACHABLE if empty else REACHABLE,
        stats=ev.stats,
        memo_hits=ev.memo_hits,
        total_time=time.perf_counter() - t0,
        automaton=a,
    )


def leaf_automaton(leaf: Leaf, opts: CheckOptions | None = None) -> Nfa:
    opts = opts or CheckOptions()
    lts = build_two_lts(leaf.net, [leaf.init], opts.step_mode, opts.budget)
    return reduce(from_two_lts(lts, leaf.init, leaf.target, leaf.mode), opts.reduce_level)


def fixpoint_probe(base: Nfa, step: Leaf, max_iters: int = 10,
                   opts: CheckOptions | None = None) -> int | None:
    """Fold ``step`` onto ``base`` (``step ; current``) until the language stops changing.

    Returns the number of folds after which the latest iterate is language
    equivalent to the one before it, or ``None`` if that does not happen
    within ``max_iters`` folds.  Diagnostic only.
    """
    opts = opts or CheckOptions()
    step_aut = leaf_automaton(step, opts)
    if step_aut.right != base.left:
        raise CompositionError(step_aut.right, base.left, "fixpoint probe")
    cur = reduce(base, opts.reduce_level)
    for k in range(1, max_iters + 1):
        nxt = reduce(compose_nfa(step_aut, cur), opts.reduce_level)
        if equivalent(nxt, cur):
            return k
        cur = nxt
    return None
