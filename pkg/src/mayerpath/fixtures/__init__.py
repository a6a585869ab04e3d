"""Bundled reference inputs used by the compatibility report and tests."""

from __future__ import annotations

from importlib import resources

from ..complexes import (
    PathComplex,
    parse_digraph,
    parse_simplices,
    path_complex_from_digraph,
    path_complex_from_simplicial,
)

DIGRAPH_FIXTURES = (
    "diamond",
    "ffl",
    "ffl_branch",
    "loop4",
    "biparallel",
    "bifan",
    "braid",
    "trapezohedron_m2",
    "theta",
    "dumbbell",
)
SIMPLICIAL_FIXTURES = ("torus_minimal",)
ALL_FIXTURES = DIGRAPH_FIXTURES + SIMPLICIAL_FIXTURES


def fixture_text(name: str) -> str:
    suffix = ".simplices" if name in SIMPLICIAL_FIXTURES else ".edges"
    ref = resources.files(__package__) / "data" / f"{name}{suffix}"
    return ref.read_text(encoding="utf-8")


def fixture_kind(name: str) -> str:
    return "simplicial" if name in SIMPLICIAL_FIXTURES else "digraph"


def load_fixture(name: str, max_dim: int = 3) -> PathComplex:
    if name not in ALL_FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(ALL_FIXTURES)}")
    text = fixture_text(name)
    if fixture_kind(name) == "digraph":
        return path_complex_from_digraph(parse_digraph(text), max_dim)
    return path_complex_from_simplicial(parse_simplices(text))


def load_digraph(name: str):
    if name not in DIGRAPH_FIXTURES:
        raise KeyError(f"{name!r} is not a digraph fixture")
    return parse_digraph(fixture_text(name))
