"""The three worked examples shipped with the package, over the 2-loop quiver.

``fixture_a`` is a pair of path windings with a two-dimensional Hom space,
``fixture_b`` a 3-vertex winding whose tensor square has a non-diagonal
covering component of degree 2, and ``fixture_c`` an absolutely
indecomposable 2-vertex winding that still carries an obstruction.
"""

from __future__ import annotations

from importlib import resources

from .io import InstanceFile, loads
from .winding import Arrow, Quiver, Winding

TWO_LOOPS = Quiver(("*",), (Arrow("blue", "*", "*"), Arrow("red", "*", "*")))

# x: 1->2, y: 2->3, z: 1->3
ACYCLIC_TRIANGLE = Quiver(("1", "2", "3"), (Arrow("x", "1", "2"), Arrow("y", "2", "3"), Arrow("z", "1", "3")))


def _on_loops(vertices, arrows) -> Winding:
    return Winding.build(TWO_LOOPS, [(v, "*") for v in vertices], arrows)


def fixture_a() -> tuple[Winding, Winding]:
    v = _on_loops(["1", "2", "3"], [("a", "1", "2", "blue"), ("b", "2", "3", "red")])
    w = _on_loops(["1'", "2'"], [("a'", "1'", "2'", "blue")])
    return v, w


def fixture_b() -> Winding:
    return _on_loops(
        ["1", "2", "3"],
        [
            ("a", "1", "1", "blue"),
            ("b", "3", "3", "red"),
            ("c", "1", "2", "red"),
            ("d", "2", "1", "red"),
            ("e", "2", "3", "blue"),
            ("f", "3", "2", "blue"),
        ],
    )


def fixture_c() -> Winding:
    return _on_loops(["1", "2"], [("b", "1", "2", "red"), ("a", "2", "1", "red"), ("c", "2", "1", "blue")])


FIXTURE_FILES = {"A": "fixture_a.json", "B": "fixture_b.json", "C": "fixture_c.json"}


def fixture_path(name: str):
    """Path-like handle of a shipped fixture document (``A``, ``B`` or ``C``)."""
    return resources.files("f1rep").joinpath("data", FIXTURE_FILES[name.upper()])


def load_fixture(name: str) -> InstanceFile:
    return loads(fixture_path(name).read_text())


__all__ = [
    "ACYCLIC_TRIANGLE",
    "FIXTURE_FILES",
    "TWO_LOOPS",
    "fixture_a",
    "fixture_b",
    "fixture_c",
    "fixture_path",
    "load_fixture",
]
