from .dot import emit_dot_net, emit_dot_nfa
from .parser import ProblemFile, format_expr, format_net, format_problem, parse, parse_file
from .report import StatsReport

__all__ = [
    "ProblemFile",
    "StatsReport",
    "emit_dot_net",
    "emit_dot_nfa",
    "format_expr",
    "format_net",
    "format_problem",
    "parse",
    "parse_file",
]
