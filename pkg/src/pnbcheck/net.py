"""Petri nets with boundaries and the two operations of their algebra.

A net of type ``(m, n)`` has ``m`` ports on its left boundary and ``n`` on
its right.  A transition is a set of ports: the output ports of the places
in ``pre``, the input ports of the places in ``post`` and a set of indices
on each boundary.

Composition ``M ; N`` glues the right boundary of ``M`` to the left boundary
of ``N``; the transitions of the result are the minimal synchronisations of
the two operands.  Tensor ``M + N`` stacks ``M`` above ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import CompositionError, InvalidNetError

Marking = frozenset  # frozenset[str]; a 1-safe marking is a set of places


class BoundaryType(NamedTuple):
    left: int
    right: int

    def __str__(self):
        return f"({self.left},{self.right})"


def _fs(items) -> frozenset:
    return items if isinstance(items, frozenset) else frozenset(items)


@dataclass(frozen=True)
class Transition:
    """A transition, identified by its ports.

    ``hidden`` and ``guard`` are only populated on transitions produced by
    composition.  ``hidden`` lists the synchronisation resources (ports of
    glued boundaries) the transition has consumed: two transitions sharing a
    hidden resource can not fire in the same step.  ``guard`` is the set of
    places that must be empty for the transition to be enabled; for an
    atomic transition this is ``post - pre``.
    """

    name: str = field(compare=False)
    pre: frozenset = frozenset()
    post: frozenset = frozenset()
    lports: frozenset = frozenset()
    rports: frozenset = frozenset()
    hidden: frozenset = frozenset()
    guard: frozenset = None
    atoms: frozenset = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for attr in ("pre", "post", "lports", "rports", "hidden"):
            object.__setattr__(self, attr, _fs(getattr(self, attr)))
        if self.guard is None:
            object.__setattr__(self, "guard", self.post - self.pre)
        else:
            object.__setattr__(self, "guard", _fs(self.guard))
        if self.atoms is None:
            object.__setattr__(self, "atoms", frozenset([self.name]))

    @property
    def places(self) -> frozenset:
        return self.pre | self.post

    def is_empty(self) -> bool:
        return not (self.pre or self.post or self.lports or self.rports)

    def touches_boundary(self) -> bool:
        return bool(self.lports or self.rports)

    def independent(self, other: "Transition") -> bool:
        return not (
            self.pre & other.pre
            or self.post & other.post
            or self.lports & other.lports
            or self.rports & other.rports
            or self.hidden & other.hidden
        )

    def enabled(self, marking) -> bool:
        return self.pre <= marking and not (self.guard & marking)

    def sort_key(self):
        return (
            sorted(self.pre),
            sorted(self.post),
            sorted(self.lports),
            sorted(self.rports),
            sorted(self.hidden),
            self.name,
        )


@dataclass(frozen=True)
class Pnb:
    """A 1-safe Petri net with a left and a right boundary."""

    name: str
    left: int
    right: int
    places: tuple = ()
    transitions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))

    @property
    def type(self) -> BoundaryType:
        return BoundaryType(self.left, self.right)

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise KeyError(name)

    def check(self) -> "Pnb":
        """Return self, or raise :class:`InvalidNetError` listing every violation."""
        problems = validate(self)
        if problems:
            raise InvalidNetError(self.name, problems)
        return self


def validate(net: Pnb) -> list[str]:
    """Return a description of every structural problem in ``net``."""
    problems = []
    if net.left < 0 or net.right < 0:
        problems.append(f"negative boundary arity {net.type}")
    seen_places = set()
    for p in net.places:
        if p in seen_places:
            problems.append(f"duplicate place {p!r}")
        seen_places.add(p)
    seen = {}
    names = set()
    for t in net.transitions:
        if t.name in names:
            problems.append(f"duplicate transition name {t.name!r}")
        names.add(t.name)
        for p in sorted((t.pre | t.post | t.guard) - seen_places):
            problems.append(f"transition {t.name!r} references unknown place {p!r}")
        for i in sorted(t.lports):
            if not 0 <= i < net.left:
                problems.append(
                    f"transition {t.name!r}: left port {i} out of range for type {net.type}"
                )
        for j in sorted(t.rports):
            if not 0 <= j < net.right:
                problems.append(
                    f"transition {t.name!r}: right port {j} out of range for type {net.type}"
                )
        if t.is_empty():
            problems.append(f"transition {t.name!r} connects to nothing")
        if t in seen:
            problems.append(
                f"transitions {seen[t].name!r} and {t.name!r} are structurally identical"
            )
        else:
            seen[t] = t
    return problems


def marking(*places: str) -> frozenset:
    return frozenset(places)


def empty(left: int = 0, right: int = 0, name: str = "empty") -> Pnb:
    return Pnb(name, left, right)


def identity_wire(k: int, name: str | None = None) -> Pnb:
    """The place-free net of type (k, k) connecting left port i to right port i."""
    ts = [Transition(f"w{i}", lports={i}, rports={i}) for i in range(k)]
    return Pnb(name or f"id{k}", k, k, (), ts)


def _qualify(prefix: str, names: Iterable[str]) -> frozenset:
    return frozenset(prefix + n for n in names)


def _atom_label(atoms: frozenset) -> str:
    if len(atoms) == 1:
        return next(iter(atoms))
    return "{" + ",".join(sorted(atoms)) + "}"


def _lift(t: Transition, prefix: str, lshift: int = 0, rshift: int = 0,
          lports=None, rports=None) -> Transition:
    atoms = _qualify(prefix, t.atoms)
    return Transition(
        _atom_label(atoms),
        pre=_qualify(prefix, t.pre),
        post=_qualify(prefix, t.post),
        lports=frozenset(i + lshift for i in t.lports) if lports is None else lports,
        rports=frozenset(j + rshift for j in t.rports) if rports is None else rports,
        hidden=_qualify(prefix, t.hidden),
        guard=_qualify(prefix, t.guard),
        atoms=atoms,
    )


def _dedup_sorted(transitions: Iterable[Transition]) -> tuple:
    unique = {}
    for t in transitions:
        if t.is_empty():
            # place-free and port-free: fires only as a silent self-loop
            continue
        unique.setdefault(t, t)
    return tuple(sorted(unique.values(), key=Transition.sort_key))


def synchronisations(left_ts, right_ts):
    """Enumerate the minimal synchronisations across a shared boundary.

    ``left_ts`` are transitions of the left operand (they meet the shared
    boundary through ``rports``), ``right_ts`` those of the right operand
    (through ``lports``).  Yields pairs ``(U, V)`` of frozensets of indices
    into the two sequences.  A synchronisation is minimal exactly when its
    port graph is connected, so the search grows a connected set one
    unmatched port at a time.
    """
    left_ts = list(left_ts)
    right_ts = list(right_ts)
    by_rport: dict[int, list[int]] = {}
    for i, t in enumerate(left_ts):
        for p in t.rports:
            by_rport.setdefault(p, []).append(i)
    by_lport: dict[int, list[int]] = {}
    for j, u in enumerate(right_ts):
        for p in u.lports:
            by_lport.setdefault(p, []).append(j)

    found = set()

    def grow(us: frozenset, vs: frozenset, lfoot: frozenset, rfoot: frozenset):
        if lfoot == rfoot:
            found.add((us, vs))
            return
        missing_right = lfoot - rfoot
        if missing_right:
            port = min(missing_right)
            for j in by_lport.get(port, ()):
                u = right_ts[j]
                if j in vs or u.lports & rfoot:
                    continue
                if all(u.independent(right_ts[k]) for k in vs):
                    grow(us, vs | {j}, lfoot, rfoot | u.lports)
            return
        port = min(rfoot - lfoot)
        for i in by_rport.get(port, ()):
            t = left_ts[i]
            if i in us or t.rports & lfoot:
                continue
            if all(t.independent(left_ts[k]) for k in us):
                grow(us | {i}, vs, lfoot | t.rports, rfoot)

    for i, t in enumerate(left_ts):
        grow(frozenset([i]), frozenset(), t.rports, frozenset())
    for j, u in enumerate(right_ts):
        if not u.lports:
            found.add((frozenset(), frozenset([j])))
    return found


def compose(m: Pnb, n: Pnb, name: str | None = None) -> Pnb:
    """Sequential composition ``m ; n`` along the shared boundary."""
    if m.right != n.left:
        raise CompositionError(m.right, n.left, f"{m.name} ; {n.name}")
    lifted_m = [_lift(t, "L.", rports=frozenset()) for t in m.transitions]
    lifted_n = [_lift(t, "R.", lports=frozenset()) for t in n.transitions]
    result = []
    for us, vs in synchronisations(m.transitions, n.transitions):
        shared = set()
        parts = []
        for i in us:
            shared |= m.transitions[i].rports
            parts.append(lifted_m[i])
        for j in vs:
            parts.append(lifted_n[j])
        atoms = frozenset().union(*(p.atoms for p in parts))
        result.append(
            Transition(
                _atom_label(atoms),
                pre=frozenset().union(*(p.pre for p in parts)),
                post=frozenset().union(*(p.post for p in parts)),
                lports=frozenset().union(*(m.transitions[i].lports for i in us)),
                rports=frozenset().union(*(n.transitions[j].rports for j in vs)),
                hidden=frozenset().union(*(p.hidden for p in parts))
                | frozenset(f"#{k}" for k in shared),
                guard=frozenset().union(*(p.guard for p in parts)),
                atoms=atoms,
            )
        )
    places = tuple("L." + p for p in m.places) + tuple("R." + p for p in n.places)
    return Pnb(name or f"({m.name} ; {n.name})", m.left, n.right, places,
               _dedup_sorted(result))


def tensor(m: Pnb, n: Pnb, name: str | None = None) -> Pnb:
    """Parallel composition: ``m`` stacked on top of ``n``, no interaction."""
    ts = [_lift(t, "L.") for t in m.transitions]
    ts += [_lift(t, "R.", lshift=m.left, rshift=m.right) for t in n.transitions]
    places = tuple("L." + p for p in m.places) + tuple("R." + p for p in n.places)
    return Pnb(name or f"({m.name} + {n.name})", m.left + n.left, m.right + n.right,
               places, _dedup_sorted(ts))


def qualify_marking(prefix: str, m) -> frozenset:
    return _qualify(prefix, m)
