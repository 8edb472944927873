"""The ``.tlts`` wiring language: parser, printer and evaluator."""

from .evaluator import Evaluator, UnknownNameError, evaluate, infer_interface
from .nodes import Module
from .parser import ParseError, parse, parse_expr
from .printer import print_expr, print_module

__all__ = [
    "Evaluator", "Module", "ParseError", "UnknownNameError", "evaluate",
    "infer_interface", "parse", "parse_expr", "print_expr", "print_module",
]
