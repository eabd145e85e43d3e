"""Bracket-type invariants of pseudo-classical knots in the thickened Klein bottle.

Diagrams are extended Gauss codes on a rectangle with glued sides.  The main
entry points are :func:`j_polynomial` for Klein-bottle knots and
:func:`classical_bracket` for torus diagrams.
"""

from .cabling import crossing_sign, crossing_type, propagate_labels, writhe_numbers
from .laurent import JPoly, LaurentU, canonical_pair
from .statesum import bracket_sum, classical_bracket, generalized_j, j_polynomial
from .surface import Diagram, parse_diagram, parse_diagram_file, serialize_diagram, validate
from .transform import apply_move, crossing_change, double_cover, random_move_sequence

__version__ = "0.1.0"

__all__ = [
    "Diagram", "parse_diagram", "parse_diagram_file", "serialize_diagram", "validate",
    "LaurentU", "JPoly", "canonical_pair",
    "propagate_labels", "crossing_sign", "crossing_type", "writhe_numbers",
    "bracket_sum", "j_polynomial", "classical_bracket", "generalized_j",
    "crossing_change", "apply_move", "random_move_sequence", "double_cover",
]
