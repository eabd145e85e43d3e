"""Labelings of the 2-cable, crossing types and signs, writhe numbers.

The cable is never drawn.  A labeling is carried as one bit per event:
``+1`` when the strand called R runs on the local right of the traversal
direction in the rectangle chart, ``-1`` when it runs on the left.  The bit
flips at every passage through a twisted gluing.

At a crossing with chart handedness ``h`` the input crossing of the cable
pattern is formed by the over-cable strand on the side the under branch comes
from and the under-cable strand on the side the over branch comes from.  The
first is R iff ``b_over * h == +1``, the second is R iff ``b_under * h == -1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import Diagram, arcs, wall_pairs

__all__ = [
    "CablingError",
    "LabelAssignment",
    "is_pseudo_classical",
    "crossing_type",
    "propagate_labels",
    "relabel",
    "reversed_labels",
    "crossing_sign",
    "crossing_data",
    "CrossingData",
    "writhe_numbers",
]


class CablingError(ValueError):
    """Raised for diagrams outside the pseudo-classical knot setting."""


@dataclass(frozen=True)
class LabelAssignment:
    """Per-event label bits of a knot diagram's single component."""

    labeling: str
    bits: tuple[int, ...]

    def at(self, index: int) -> int:
        return self.bits[index]


@dataclass(frozen=True)
class CrossingData:
    crossing: int
    type: int
    sign: complex


def is_pseudo_classical(d: Diagram, component: int | None = None) -> bool:
    """True iff the component(s) pass through twisted gluings an even number of times."""
    flips: dict[int, int] = {}
    for a in arcs(d):
        flips[a.component] = flips.get(a.component, 0) + a.flips
    if component is not None:
        return flips.get(component, 0) % 2 == 0
    return all(f % 2 == 0 for f in flips.values())


def _require_knot(d: Diagram) -> None:
    if len(d.components) != 1:
        raise CablingError(
            f"a knot diagram is required, got {len(d.components)} components")


def _flip_positions(d: Diagram, comp) -> list[int]:
    """Indices of entry tokens that complete a passage through a twisted gluing."""
    return [b for a, b in wall_pairs(comp) if d.surface.gluing(comp[a].side)]


def crossing_type(d: Diagram, x: int) -> int:
    """1 if the loop from the over pass of ``x`` back to its under pass keeps
    the chart orientation, 2 if it reverses it."""
    _require_knot(d)
    (_, i_over), (_, i_under) = d.passes(x)
    comp = d.components[0]
    n = len(comp)
    flips = set(_flip_positions(d, comp))
    between = [(i_over + k) % n for k in range(1, (i_under - i_over) % n)]
    return 2 if sum(1 for j in between if j in flips) % 2 else 1


def propagate_labels(d: Diagram, labeling: str = "A") -> LabelAssignment:
    """Label bits along the knot; labeling ``A`` starts with ``+1`` at event 0."""
    _require_knot(d)
    if labeling not in ("A", "B"):
        raise ValueError("labeling must be 'A' or 'B'")
    if not is_pseudo_classical(d):
        raise CablingError("the label bit does not close up: the knot is not pseudo-classical")
    comp = d.components[0]
    flips = set(_flip_positions(d, comp))
    b = 1 if labeling == "A" else -1
    bits = []
    for i in range(len(comp)):
        if i in flips:
            b = -b
        bits.append(b)
    if bits and bits[0] != (1 if labeling == "A" else -1):
        bits = [-x for x in bits]  # event 0 completed a twisted pass
    return LabelAssignment(labeling, tuple(bits))


def relabel(la: LabelAssignment) -> LabelAssignment:
    """Swap the names R and L."""
    return LabelAssignment("B" if la.labeling == "A" else "A", tuple(-b for b in la.bits))


def reversed_labels(la: LabelAssignment) -> LabelAssignment:
    """Bits of the same cable components after the knot's orientation is reversed.

    Event ``j`` of the reversed code is event ``n - 1 - j`` of the original.
    The strand that was on the right is now on the left, so every bit is negated.
    """
    return LabelAssignment(la.labeling, tuple(-b for b in reversed(la.bits)))


def crossing_sign(d: Diagram, la: LabelAssignment, x: int) -> complex:
    """The sign of ``x`` in ``{1, -1, 1j, -1j}``."""
    (_, i_over), (_, i_under) = d.passes(x)
    h = d.h(x)
    over_is_r = la.at(i_over) * h == 1
    under_is_r = la.at(i_under) * h == -1
    if over_is_r and not under_is_r:
        return 1
    if under_is_r and not over_is_r:
        return -1
    return 1j if over_is_r else -1j


def crossing_data(d: Diagram, la: LabelAssignment) -> list[CrossingData]:
    out = []
    for x in range(1, d.n_crossings + 1):
        s = crossing_sign(d, la, x)
        out.append(CrossingData(x, 1 if s in (1, -1) else 2, s))
    return out


def writhe_numbers(d: Diagram, la: LabelAssignment) -> tuple[complex, int, int]:
    """``(w, w1, w2)`` with ``w`` the Gaussian-integer sum of signs."""
    w = sum((crossing_sign(d, la, x) for x in range(1, d.n_crossings + 1)), 0)
    w = complex(w)
    return w, int(w.real), int(w.imag)
