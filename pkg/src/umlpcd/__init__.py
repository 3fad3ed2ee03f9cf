"""Parser, checker and conformance tools for a textual class diagram language."""

from .abstract import ClassDiagram, dump
from .consistency import Bounds, BoundsTooLarge, ConsistencyResult, bounded_consistency, enumerate_models
from .diagnostics import Diagnostic, DiagnosticError, Span
from .lowering import LoweringError, to_abstract
from .minicond import eval_cond, parse_cond
from .parser import ParseError, parse_cd
from .printer import pretty_print
from .semantics import ConformanceReport, IllFormedDiagram, check_conformance
from .sysmodel import SystemModel, SystemModelError, dump_system_model, load_system_model
from .wellformed import check_context_conditions, transitive_closure


def load_diagram(text: str) -> ClassDiagram:
    """Parse and lower diagram source text."""
    return to_abstract(parse_cd(text))


__all__ = [
    "Bounds", "BoundsTooLarge", "ClassDiagram", "ConformanceReport", "ConsistencyResult",
    "Diagnostic", "DiagnosticError", "IllFormedDiagram", "LoweringError", "ParseError", "Span",
    "SystemModel", "SystemModelError", "bounded_consistency", "check_conformance",
    "check_context_conditions", "dump", "dump_system_model", "enumerate_models", "eval_cond",
    "load_diagram", "load_system_model", "parse_cd", "parse_cond", "pretty_print", "to_abstract",
    "transitive_closure",
]
