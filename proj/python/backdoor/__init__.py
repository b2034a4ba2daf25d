"""Generalized back-door adjustment sets for DAGs, CPDAGs, MAGs and PAGs."""

from ._core import (
    Graph,
    GraphError,
    check,
    d_sep_set,
    find_backdoor_set,
    is_visible,
    m_separated,
    minimal_backdoor_sets,
    run_cli,
)

__all__ = [
    "Graph",
    "GraphError",
    "check",
    "d_sep_set",
    "find_backdoor_set",
    "is_visible",
    "m_separated",
    "minimal_backdoor_sets",
    "run_cli",
]
