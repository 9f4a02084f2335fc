"""Reader and writer for ``.pnb`` problem files.

Example::

    # one-place buffer between a producer and a consumer
    net src (0,1) { trans put rports {0}; }
    net buf (1,1) {
      place p;
      trans in post {p} lports {0};
      trans out pre {p} rports {0};
    }
    net snk (1,0) { trans get lports {0}; }
    check reachable
    expr src ; buf[{} -> {p}] ; snk

Expressions: ``;`` is left-associative, ``+`` binds tighter than ``;``, and
parentheses group.  A leaf is a net name, optionally followed by
``[<initial> -> <target>]``; a bare name means ``[{} -> {}]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..automata import AcceptanceMode
from ..errors import InputError, ParseError
from ..expr import Expr, Leaf, Seq, Tensor, typecheck
from ..net import Pnb, Transition, validate

OPTION_KEYS = ("reduce", "memo", "mode", "budget", "assoc", "engine")

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>\d+(?![A-Za-z_]))
  | (?P<name>[A-Za-z_0-9][A-Za-z0-9_.']*)
  | (?P<punct>[{}()\[\],;+-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character", line, col, text[pos])
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class ProblemFile:
    nets: dict[str, Pnb] = field(default_factory=dict)
    expr: Expr | None = None
    mode: AcceptanceMode = AcceptanceMode.EXACT
    options: dict[str, str] = field(default_factory=dict)


@dataclass
class _LeafRef:
    name: Token
    init: list[Token] | None
    target: list[Token] | None


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, tok.text or "<end of file>")

    def take(self, kind=None, text=None) -> Token:
        t = self.tok
        if (kind and t.kind != kind) or (text and t.text != text):
            want = repr(text) if text else kind
            raise self.error(f"expected {want}")
        self.i += 1
        return t

    def accept(self, text) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("punct", "name", "arrow"):
            return self.take()
        return None

    def name_set(self) -> list[Token]:
        self.take("punct", "{")
        items = []
        if not self.accept("}"):
            while True:
                items.append(self.take("name") if self.tok.kind == "name" else self.take("int"))
                if self.accept("}"):
                    break
                self.take("punct", ",")
        return items

    def int_set(self) -> frozenset:
        toks = self.name_set()
        for t in toks:
            if t.kind != "int":
                raise self.error("expected a port index", t)
        return frozenset(int(t.text) for t in toks)

    def net(self) -> tuple[Token, Pnb]:
        name = self.take("name")
        self.take("punct", "(")
        left = int(self.take("int").text)
        self.take("punct", ",")
        right = int(self.take("int").text)
        self.take("punct", ")")
        self.take("punct", "{")
        places: list[str] = []
        ts: list[Transition] = []
        while not self.accept("}"):
            kw = self.take("name")
            if kw.text == "place":
                places.append(self.take("name").text)
                while self.accept(","):
                    places.append(self.take("name").text)
            elif kw.text == "trans":
                tname = self.take("name").text
                parts: dict = {}
                while self.tok.text in ("pre", "post", "lports", "rports"):
                    key = self.take().text
                    if key in parts:
                        raise self.error(f"duplicate {key} clause")
                    if key in ("pre", "post"):
                        parts[key] = frozenset(t.text for t in self.name_set())
                    else:
                        parts[key] = self.int_set()
                ts.append(Transition(tname, **parts))
            else:
                raise self.error("expected 'place' or 'trans'", kw)
            self.take("punct", ";")
        net = Pnb(name.text, left, right, places, ts)
        problems = validate(net)
        if problems:
            raise ParseError(f"invalid net {name.text!r}: " + "; ".join(problems),
                             name.line, name.col, name.text)
        return name, net

    def seq(self):
        node = self.tens()
        while self.accept(";"):
            node = ("seq", node, self.tens())
        return node

    def tens(self):
        node = self.atom()
        while self.accept("+"):
            node = ("tensor", node, self.atom())
        return node

    def atom(self):
        if self.accept("("):
            node = self.seq()
            self.take("punct", ")")
            return node
        name = self.take("name")
        if self.accept("["):
            init = self.name_set()
            self.take("arrow")
            target = self.name_set()
            self.take("punct", "]")
            return _LeafRef(name, init, target)
        return _LeafRef(name, None, None)

    def parse(self) -> ProblemFile:
        pf = ProblemFile()
        expr_ast = None
        expr_tok = None
        while self.tok.kind != "eof":
            kw = self.take("name")
            if kw.text == "net":
                name, net = self.net()
                if name.text in pf.nets:
                    raise self.error(f"net {name.text!r} defined twice", name)
                pf.nets[name.text] = net
            elif kw.text == "check":
                what = self.take("name")
                if what.text not in ("reachable", "coverable"):
                    raise self.error("expected 'reachable' or 'coverable'", what)
                pf.mode = AcceptanceMode.EXACT if what.text == "reachable" else AcceptanceMode.COVERING
            elif kw.text == "expr":
                if expr_ast is not None:
                    raise self.error("only one expr per file", kw)
                expr_tok = kw
                expr_ast = self.seq()
            elif kw.text == "option":
                key = self.take("name")
                if key.text not in OPTION_KEYS:
                    raise self.error(f"unknown option (known: {', '.join(OPTION_KEYS)})", key)
                val = self.take("name") if self.tok.kind == "name" else self.take("int")
                text = val.text
                while self.tok.text == "-" and self.tok.line == val.line:
                    self.take()
                    text += "-" + self.take("name").text
                pf.options[key.text] = text
            else:
                raise self.error("expected 'net', 'check', 'expr' or 'option'", kw)
        if expr_ast is not None:
            pf.expr = self._resolve(expr_ast, pf)
            typecheck(pf.expr)
        elif expr_tok is None and not pf.nets:
            raise self.error("empty problem file")
        return pf

    def _resolve(self, node, pf: ProblemFile) -> Expr:
        if isinstance(node, _LeafRef):
            net = pf.nets.get(node.name.text)
            if net is None:
                raise self.error(f"unknown net {node.name.text!r}", node.name)
            places = set(net.places)
            markings = []
            for toks in (node.init, node.target):
                for t in toks or ():
                    if t.text not in places:
                        raise self.error(f"net {net.name!r} has no place {t.text!r}", t)
                markings.append(frozenset(t.text for t in toks or ()))
            return Leaf(net, markings[0], markings[1], pf.mode)
        kind, left, right = node
        cls = Seq if kind == "seq" else Tensor
        return cls(self._resolve(left, pf), self._resolve(right, pf))


def parse(text: str) -> ProblemFile:
    """Parse a problem file; raises ParseError or TypeCheckError."""
    return _Parser(text).parse()


def parse_file(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _set(items) -> str:
    return "{" + ",".join(str(x) for x in items) + "}"


def format_net(net: Pnb) -> str:
    if any(t.hidden for t in net.transitions):
        raise InputError(f"net {net.name!r} is a composite and has no textual form")
    lines = [f"net {net.name} ({net.left},{net.right}) {{"]
    for p in net.places:
        lines.append(f"  place {p};")
    for t in net.transitions:
        parts = [f"  trans {t.name}"]
        if t.pre:
            parts.append(f"pre {_set(sorted(t.pre))}")
        if t.post:
            parts.append(f"post {_set(sorted(t.post))}")
        if t.lports:
            parts.append(f"lports {_set(sorted(t.lports))}")
        if t.rports:
            parts.append(f"rports {_set(sorted(t.rports))}")
        lines.append(" ".join(parts) + ";")
    lines.append("}")
    return "\n".join(lines)


def format_expr(e: Expr) -> str:
    if isinstance(e, Leaf):
        return f"{e.net.name}[{_set(sorted(e.init))} -> {_set(sorted(e.target))}]"
    op = ";" if isinstance(e, Seq) else "+"
    return f"({format_expr(e.left)} {op} {format_expr(e.right)})"


def format_problem(pf: ProblemFile) -> str:
    out = [format_net(n) for n in pf.nets.values()]
    out.append("check " + ("reachable" if pf.mode is AcceptanceMode.EXACT else "coverable"))
    for k, v in pf.options.items():
        out.append(f"option {k} {v}")
    if pf.expr is not None:
        out.append("expr " + format_expr(pf.expr))
    return "\n".join(out) + "\n"
