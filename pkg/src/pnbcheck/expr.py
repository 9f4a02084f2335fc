"""Expression trees over nets: leaves carry markings, nodes are ``;`` and ``+``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .automata import AcceptanceMode
from .errors import InputError, TypeCheckError
from .net import BoundaryType, Pnb


@dataclass(frozen=True)
class Leaf:
    net: Pnb
    init: frozenset = frozenset()
    target: frozenset = frozenset()
    mode: AcceptanceMode = AcceptanceMode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "init", frozenset(self.init))
        object.__setattr__(self, "target", frozenset(self.target))
        object.__setattr__(self, "mode", AcceptanceMode(self.mode))
        places = set(self.net.places)
        for label, m in (("initial", self.init), ("target", self.target)):
            unknown = m - places
            if unknown:
                raise InputError(
                    f"{label} marking of {self.net.name!r} mentions unknown place(s) "
                    f"{sorted(unknown)}"
                )


@dataclass(frozen=True)
class Seq:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


Expr = Union[Leaf, Seq, Tensor]


def typecheck(e: Expr, path: str = "r") -> BoundaryType:
    """Boundary type of ``e``; raises :class:`TypeCheckError` naming the bad node."""
    if isinstance(e, Leaf):
        return e.net.type
    lt = typecheck(e.left, path + ".0")
    rt = typecheck(e.right, path + ".1")
    if isinstance(e, Seq):
        if lt.right != rt.left:
            raise TypeCheckError(path, lt.right, rt.left)
        return BoundaryType(lt.left, rt.right)
    return BoundaryType(lt.left + rt.left, lt.right + rt.right)


def leaves(e: Expr, path: str = "r") -> Iterator[tuple[str, Leaf]]:
    if isinstance(e, Leaf):
        yield path, e
    else:
        yield from leaves(e.left, path + ".0")
        yield from leaves(e.right, path + ".1")


def subexpr(e: Expr, path: str) -> Expr:
    """Follow a node path such as ``r.0.1``."""
    parts = path.split(".")
    if parts[0] != "r":
        raise InputError(f"node path must start with 'r': {path!r}")
    for p in parts[1:]:
        if isinstance(e, Leaf) or p not in ("0", "1"):
            raise InputError(f"no node at path {path!r}")
        e = e.left if p == "0" else e.right
    return e


def seq_chain(*parts: Expr) -> Expr:
    """Left-associated ``p0 ; p1 ; ... ; pk``."""
    out = parts[0]
    for p in parts[1:]:
        out = Seq(out, p)
    return out


def size(e: Expr) -> int:
    if isinstance(e, Leaf):
        return 1
    return 1 + size(e.left) + size(e.right)
