"""Scenario documents, the verification engine and the floating-point oracle."""

from .expr import ExprSyntaxError, format_expr, parse_expr, parse_param_expr
from .scenario import Branch, Scenario, ScenarioError, builtin_names, load_builtin, load_scenario

__all__ = [
    "Branch",
    "ExprSyntaxError",
    "Scenario",
    "ScenarioError",
    "builtin_names",
    "format_expr",
    "load_builtin",
    "load_scenario",
    "parse_expr",
    "parse_param_expr",
]
