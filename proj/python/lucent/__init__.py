"""Lucency and home-cluster analysis of marked Petri nets."""

from ._core import (
    LucentError,
    Net,
    analyze,
    clusters,
    enabled,
    explore,
    fire,
    home_clusters,
    is_free_choice,
    is_proper,
    lucency,
    net_class,
    theorem_suite,
)

__all__ = [
    "LucentError",
    "Net",
    "analyze",
    "clusters",
    "enabled",
    "explore",
    "fire",
    "home_clusters",
    "is_free_choice",
    "is_proper",
    "lucency",
    "net_class",
    "theorem_suite",
]
