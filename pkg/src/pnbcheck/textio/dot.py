"""Graphviz output for nets and automata.  Output is deterministic."""

from __future__ import annotations

from ..automata import Nfa
from ..net import Pnb


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _word(w: str) -> str:
    return w if w else "ε"


def emit_dot_net(net: Pnb, marking=None) -> str:
    """Places are circles (filled when marked), transitions are bars.

    Boundary ports are drawn as terminals on the outer ranks; an arc from a
    place to a bar leaves the place's output port, an arc from a bar to a
    place enters its input port.
    """
    marking = frozenset(marking or ())
    lines = [f"digraph {_q(net.name)} {{", "  rankdir=LR;"]
    if net.left:
        lines.append("  { rank=source;")
        for i in range(net.left):
            lines.append(f"    {_q(f'L{i}')} [shape=rarrow label={_q(i)}];")
        lines.append("  }")
    if net.right:
        lines.append("  { rank=sink;")
        for j in range(net.right):
            lines.append(f"    {_q(f'R{j}')} [shape=larrow label={_q(j)}];")
        lines.append("  }")
    places = sorted(net.places)
    pid = {p: f"p:{p}" for p in places}
    for p in places:
        fill = " style=filled fillcolor=gray60" if p in marking else ""
        lines.append(f"  {_q(pid[p])} [shape=circle label={_q(p)}{fill}];")
    ts = sorted(net.transitions, key=lambda t: (t.name, t.sort_key()))
    for k, t in enumerate(ts):
        lines.append(
            f"  {_q(f't{k}')} [shape=box style=filled fillcolor=black label=\"\" "
            f"width=0.08 height=0.5 xlabel={_q(t.name)}];"
        )
    for k, t in enumerate(ts):
        tid = _q(f"t{k}")
        for i in sorted(t.lports):
            lines.append(f"  {_q(f'L{i}')} -> {tid} [dir=none style=dashed];")
        for p in sorted(t.pre):
            lines.append(f"  {_q(pid[p])} -> {tid};")
        for p in sorted(t.post):
            lines.append(f"  {tid} -> {_q(pid[p])};")
        for j in sorted(t.rports):
            lines.append(f"  {tid} -> {_q(f'R{j}')} [dir=none style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot_nfa(a: Nfa, show_silent: bool = False, name: str = "nfa") -> str:
    """States as circles (double when accepting, bold when initial); edges ``left/right``."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for s in sorted(a.states):
        shape = "doublecircle" if s in a.accepting else "circle"
        bold = " style=bold" if s in a.initial else ""
        lines.append(f"  {_q(f's{s}')} [shape={shape}{bold} label={_q(s)}];")
    sil = a.silent
    for s, lw, rw, d in sorted(a.transitions):
        if (lw, rw) == sil and s == d and not show_silent:
            continue
        lines.append(f"  {_q(f's{s}')} -> {_q(f's{d}')} [label={_q(_word(lw) + '/' + _word(rw))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
