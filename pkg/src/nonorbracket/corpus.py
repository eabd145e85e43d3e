"""Bundled example diagrams.

``d1``..``d4`` are knots on the Klein bottle.  ``d1_star`` and ``d2_star`` are
torus links given in the extended Gauss code of the external recognizer
program, copied verbatim.
"""

from __future__ import annotations

from importlib import resources

from .surface import Diagram, parse_diagram

NAMES = ("d1", "d2", "d3", "d4", "d1_star", "d2_star")


def corpus_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown corpus diagram {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("data", f"{name}.knot").read_text()


def load(name: str) -> Diagram:
    return parse_diagram(corpus_text(name)).with_name(name)


def load_all() -> dict[str, Diagram]:
    return {name: load(name) for name in NAMES}
