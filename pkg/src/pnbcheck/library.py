"""Small nets used in examples, benchmarks and tests.

The counter family: ``leftcap ; bit ; ... ; bit ; driver``.  The most
significant bit is leftmost.  Each ``driver`` firing is one increment; a
bit flips 0 -> 1 on its right (``inc``) port, and flips 1 -> 0 while
passing a carry out through its left port.  ``leftcap`` absorbs the
overflow carry of the top bit; ``blocking_cap`` refuses it.
"""

from __future__ import annotations

from .automata import AcceptanceMode
from .expr import Expr, Leaf, seq_chain
from .net import Pnb, Transition


def token_move() -> Pnb:
    """Places A and B joined by one transition moving the token from A to B."""
    return Pnb("move", 0, 0, ("A", "B"), [Transition("t", pre={"A"}, post={"B"})])


def split_source() -> Pnb:
    """Left half of the token move: A emits through its right port."""
    return Pnb("src", 0, 1, ("A",), [Transition("p", pre={"A"}, rports={0})])


def split_sink() -> Pnb:
    """Right half of the token move: B receives through its left port."""
    return Pnb("snk", 1, 0, ("B",), [Transition("q", post={"B"}, lports={0})])


def buffer() -> Pnb:
    """One-place buffer of type (1,1): fill on the left, drain on the right."""
    return Pnb(
        "buf",
        1,
        1,
        ("p",),
        [Transition("in", post={"p"}, lports={0}), Transition("out", pre={"p"}, rports={0})],
    )


def bit() -> Pnb:
    return Pnb(
        "bit",
        1,
        1,
        ("zero", "one"),
        [
            Transition("inc", pre={"zero"}, post={"one"}, rports={0}),
            Transition("carry", pre={"one"}, post={"zero"}, lports={0}, rports={0}),
        ],
    )


def driver() -> Pnb:
    return Pnb("driver", 1, 0, (), [Transition("tick", lports={0})])


def leftcap() -> Pnb:
    return Pnb("leftcap", 0, 1, (), [Transition("overflow", rports={0})])


def blocking_cap() -> Pnb:
    return Pnb("blockcap", 0, 1, ())


def bit_leaf(init: int = 0, target: int = 1, mode=AcceptanceMode.EXACT) -> Leaf:
    name = {0: "zero", 1: "one"}
    return Leaf(bit(), {name[init]}, {name[target]}, mode)


def counter_expr(n: int, init: str | None = None, target: str | None = None,
                 cap: Pnb | None = None, mode=AcceptanceMode.EXACT) -> Expr:
    """The n-bit counter; ``init``/``target`` are bit strings, most significant first."""
    if n < 1:
        raise ValueError("a counter needs at least one bit")
    init = init or "0" * n
    target = target or "1" * n
    if len(init) != n or len(target) != n:
        raise ValueError("bit strings must have one character per bit")
    parts = [Leaf(cap or leftcap(), mode=mode)]
    parts += [bit_leaf(int(i), int(t), mode) for i, t in zip(init, target)]
    parts.append(Leaf(driver(), mode=mode))
    return seq_chain(*parts)
