"""Compositional reachability checking for 1-safe Petri nets with boundaries."""

__version__ = "0.1.0"

from .automata import AcceptanceMode, Nfa, ReduceLevel, equivalent, reduce
from .checker import CheckOptions, CheckResult, check, evaluate, fixpoint_probe
from .expr import Leaf, Seq, Tensor, typecheck
from .net import Pnb, Transition, compose, tensor, validate
from .semantics import StepMode, build_two_lts

__all__ = [
    "AcceptanceMode",
    "CheckOptions",
    "CheckResult",
    "Leaf",
    "Nfa",
    "Pnb",
    "ReduceLevel",
    "Seq",
    "StepMode",
    "Tensor",
    "Transition",
    "build_two_lts",
    "check",
    "compose",
    "equivalent",
    "evaluate",
    "fixpoint_probe",
    "reduce",
    "tensor",
    "typecheck",
    "validate",
]
