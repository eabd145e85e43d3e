"""Diagram rewriting: crossing changes, Reidemeister moves and the double cover.

Moves act on event sequences, but whether a move is available is decided
by the faces of the diagram in the rectangle chart.  These faces come from
the rotation system described in :func:`chart_faces`.  Every move in this
module therefore keeps the diagram drawable in the rectangle.  Use
:func:`is_realizable` to check that property directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .surface import (
    SURFACES,
    CrossingPass,
    Diagram,
    Event,
    WallPass,
    wall_pairs,
)

__all__ = [
    "MoveError",
    "ArcPosition",
    "R1Add",
    "R1Remove",
    "R2Add",
    "R2Remove",
    "R3",
    "MoveDescriptor",
    "crossing_change",
    "reverse_orientation",
    "chart_faces",
    "ChartFaces",
    "is_realizable",
    "gaps",
    "apply_move",
    "applicable_moves",
    "random_move",
    "random_move_sequence",
    "double_cover",
    "compact_ids",
]


class MoveError(ValueError):
    """A move whose preconditions fail in the given diagram."""


# ------------------------------------------------------------ simple edits

def crossing_change(d: Diagram, x: int) -> Diagram:
    """Swap over and under at ``x``.

    The chart handedness is the sign of the frame (over tangent, under
    tangent).  Exchanging the roles of the two tangents negates it.
    """
    if not 1 <= x <= d.n_crossings:
        raise KeyError(f"crossing {x} is not in the diagram")
    comps = tuple(
        tuple(CrossingPass(e.crossing, not e.over)
              if isinstance(e, CrossingPass) and e.crossing == x else e
              for e in comp)
        for comp in d.components)
    hs = list(d.handedness)
    hs[x - 1] = -hs[x - 1]
    return Diagram(d.surface, comps, tuple(hs), d.name)


def reverse_orientation(d: Diagram) -> Diagram:
    """Traverse every component backwards.  Both tangents flip, so ``h`` is kept."""
    comps = tuple(tuple(reversed(comp)) for comp in d.components)
    return Diagram(d.surface, comps, d.handedness, d.name)


def compact_ids(d: Diagram) -> Diagram:
    """Renumber crossings ``1..m`` in order of their first appearance by id."""
    used = sorted({e.crossing for comp in d.components for e in comp
                   if isinstance(e, CrossingPass)})
    new = {x: i + 1 for i, x in enumerate(used)}
    comps = tuple(
        tuple(CrossingPass(new[e.crossing], e.over) if isinstance(e, CrossingPass) else e
              for e in comp)
        for comp in d.components)
    return Diagram(d.surface, comps, tuple(d.handedness[x - 1] for x in used), d.name)


# ---------------------------------------------------------- chart geometry

IN_OVER, OUT_OVER, IN_UNDER, OUT_UNDER = "io", "oo", "iu", "ou"
_CCW = {1: (OUT_OVER, OUT_UNDER, IN_OVER, IN_UNDER),
        -1: (OUT_OVER, IN_UNDER, IN_OVER, OUT_UNDER)}


@dataclass(frozen=True)
class ArcPosition:
    """The gap between event ``index`` and the next event of ``component``."""

    component: int
    index: int


def gaps(d: Diagram) -> list[ArcPosition]:
    """Every gap that is a segment inside the rectangle.

    The step from an exit token to its entry token is a jump through a wall,
    not a segment, so it is not a gap.
    """
    out = []
    for c, comp in enumerate(d.components):
        jumps = set(wall_pairs(comp))
        n = len(comp)
        for i in range(n):
            if (i, (i + 1) % n) not in jumps:
                out.append(ArcPosition(c, i))
    return out


@dataclass
class ChartFaces:
    """Faces of the diagram graph drawn in the rectangle.

    The graph's vertices are the crossings, the used wall ports and the
    four corners.  Its edges are the gaps plus the boundary segments.
    ``left[g]`` and ``right[g]`` give the face on each side of gap ``g``
    relative to its direction of travel.  The face outside the rectangle
    is ``outer``.
    """

    faces: list[list[tuple]]
    left: dict[ArcPosition, int]
    right: dict[ArcPosition, int]
    outer: int
    genus_ok: bool
    sides: dict[int, list[ArcPosition]] = None  # gaps bounding each face


def _boundary_cycle(d: Diagram) -> list[tuple]:
    """Corners and port vertices in clockwise order starting at the top-left corner."""
    counts = {s: d.port_count(s) for s in "ltrb"}
    cyc: list[tuple] = [("c", 0)]
    cyc += [("p", "t", i) for i in range(1, counts["t"] + 1)]
    cyc.append(("c", 1))
    cyc += [("p", "r", i) for i in range(1, counts["r"] + 1)]
    cyc.append(("c", 2))
    cyc += [("p", "b", i) for i in range(1, counts["b"] + 1)]
    cyc.append(("c", 3))
    cyc += [("p", "l", i) for i in range(1, counts["l"] + 1)]
    return cyc


def _dart_at(e: Event, outgoing: bool) -> tuple:
    if isinstance(e, CrossingPass):
        slot = (OUT_OVER if e.over else OUT_UNDER) if outgoing else (IN_OVER if e.over else IN_UNDER)
        return (("x", e.crossing), slot)
    return (("p", e.side, e.port), "inner")


def chart_faces(d: Diagram) -> ChartFaces:
    """Trace the faces of the chart graph.

    The rotation at each vertex lists its edge slots counterclockwise:

    * crossing with ``h = +1``: out-over, out-under, in-over, in-under
    * crossing with ``h = -1``: out-over, in-under, in-over, out-under
    * wall port: clockwise-next boundary, clockwise-previous boundary, inner
    * corner: clockwise-next boundary, clockwise-previous boundary
    """
    rot: dict[tuple, tuple] = {}
    for x in range(1, d.n_crossings + 1):
        rot[("x", x)] = _CCW[d.h(x)]
    cyc = _boundary_cycle(d)
    for v in cyc:
        rot[v] = ("next", "prev", "inner") if v[0] == "p" else ("next", "prev")

    twin: dict[tuple, tuple] = {}
    gap_dart: dict[ArcPosition, tuple] = {}
    for g in gaps(d):
        comp = d.components[g.component]
        a = _dart_at(comp[g.index], outgoing=True)
        b = _dart_at(comp[(g.index + 1) % len(comp)], outgoing=False)
        twin[a] = b
        twin[b] = a
        gap_dart[g] = a
    for u, v in zip(cyc, cyc[1:] + cyc[:1]):
        twin[(u, "next")] = (v, "prev")
        twin[(v, "prev")] = (u, "next")

    face_of: dict[tuple, int] = {}
    faces: list[list[tuple]] = []
    for start in twin:
        if start in face_of:
            continue
        face = []
        dart = start
        while dart not in face_of:
            face_of[dart] = len(faces)
            face.append(dart)
            v, slot = twin[dart]
            r = rot[v]
            dart = (v, r[(r.index(slot) - 1) % len(r)])
        faces.append(face)

    # Euler characteristic per connected component must be 2.
    parent = {v: v for v in rot}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, _), (v, _) in twin.items():
        parent[find(u)] = find(v)
    genus_ok = True
    counts: dict[tuple, list[int]] = {}
    for v in rot:
        counts.setdefault(find(v), [0, 0, 0])[0] += 1
    for (u, _) in twin:
        counts[find(u)][1] += 1
    for f in faces:
        counts[find(f[0][0])][2] += 1
    for V, E2, F in counts.values():  # E2 counts darts, two per edge
        if 2 * V - E2 + 2 * F != 4:
            genus_ok = False

    left = {g: face_of[a] for g, a in gap_dart.items()}
    right = {g: face_of[twin[a]] for g, a in gap_dart.items()}
    sides: dict[int, list[ArcPosition]] = {}
    for g in gap_dart:
        for f in dict.fromkeys((left[g], right[g])):
            sides.setdefault(f, []).append(g)
    return ChartFaces(faces, left, right, face_of[(("c", 0), "next")], genus_ok, sides)


def is_realizable(d: Diagram) -> bool:
    """Whether the event sequences and handedness can be drawn in the rectangle."""
    try:
        return chart_faces(d).genus_ok
    except (KeyError, ValueError):
        return False


# ------------------------------------------------------------------ moves

@dataclass(frozen=True)
class R1Add:
    """Insert a kink ``x x`` in a gap.  ``local_sign`` is the new crossing's handedness."""

    position: ArcPosition
    over_first: bool
    local_sign: int


@dataclass(frozen=True)
class R1Remove:
    crossing: int


@dataclass(frozen=True)
class R2Add:
    """Push gap ``first`` across gap ``second`` through a shared face.

    ``first_left`` says the face lies on the left of ``first``.
    ``second_right`` says it lies on the right of ``second``.
    ``which_over`` is 1 when the pushed strand goes over and 2 otherwise.
    """

    first: ArcPosition
    second: ArcPosition
    which_over: int
    first_left: bool = True
    second_right: bool = True


@dataclass(frozen=True)
class R2Remove:
    crossings: tuple[int, int]


@dataclass(frozen=True)
class R3:
    """Slide a strand across the crossing of the other two strands of a triangle.

    The triangle is given by its three gaps.  Each gap must lie between two
    crossings, and one gap must run over at both of its ends.
    """

    crossings: tuple[int, int, int]
    sides: tuple[ArcPosition, ArcPosition, ArcPosition]


MoveDescriptor = Union[R1Add, R1Remove, R2Add, R2Remove, R3]


def _insert(comps: list[list[Event]], pos: ArcPosition, events: list[Event]) -> None:
    comps[pos.component][pos.index + 1:pos.index + 1] = events


def _check_gap(d: Diagram, pos: ArcPosition) -> None:
    if pos not in set(gaps(d)):
        raise MoveError(f"{pos} is not a gap inside the rectangle")


def _adjacent(comp, i: int, j: int) -> bool:
    n = len(comp)
    return (i + 1) % n == j


def _gap_crossings(d: Diagram, g: ArcPosition):
    comp = d.components[g.component]
    a, b = comp[g.index], comp[(g.index + 1) % len(comp)]
    if isinstance(a, CrossingPass) and isinstance(b, CrossingPass):
        return a, b
    return None


def _remove_crossings(d: Diagram, xs: set[int]) -> Diagram:
    comps = tuple(tuple(e for e in comp if not (isinstance(e, CrossingPass) and e.crossing in xs))
                  for comp in d.components)
    if any(not comp for comp in comps):
        raise MoveError("removal would leave an empty component")
    # Merging the gaps on either side of a removed crossing must not put an
    # exit token directly in front of an entry token that is not its partner.
    kept = Diagram(d.surface, comps, d.handedness, d.name)
    for comp in comps:
        try:
            wall_pairs(comp)
        except ValueError as exc:
            raise MoveError(str(exc)) from None
    return compact_ids(kept)


def _apply_r1_add(d: Diagram, mv: R1Add) -> Diagram:
    _check_gap(d, mv.position)
    if mv.local_sign not in (1, -1):
        raise MoveError("local_sign must be +1 or -1")
    x = d.n_crossings + 1
    comps = [list(c) for c in d.components]
    _insert(comps, mv.position, [CrossingPass(x, mv.over_first), CrossingPass(x, not mv.over_first)])
    return Diagram(d.surface, tuple(map(tuple, comps)), d.handedness + (mv.local_sign,), d.name)


def _kink_gap(d: Diagram, x: int) -> ArcPosition | None:
    (co, io), (cu, iu) = d.passes(x)
    if co != cu:
        return None
    comp = d.components[co]
    if _adjacent(comp, io, iu):
        return ArcPosition(co, io)
    if _adjacent(comp, iu, io):
        return ArcPosition(co, iu)
    return None


def _apply_r1_remove(d: Diagram, mv: R1Remove, faces: ChartFaces | None = None) -> Diagram:
    x = mv.crossing
    g = _kink_gap(d, x)
    if g is None:
        raise MoveError(f"crossing {x} is not a kink: its passes are not adjacent")
    faces = faces or chart_faces(d)
    if not any(len(faces.faces[f]) == 1 and f != faces.outer for f in (faces.left[g], faces.right[g])):
        raise MoveError(f"the loop at crossing {x} does not bound a face")
    return _remove_crossings(d, {x})


def _apply_r2_add(d: Diagram, mv: R2Add, faces: ChartFaces | None = None) -> Diagram:
    a, b = mv.first, mv.second
    if a == b:
        raise MoveError("R2Add needs two distinct gaps")
    _check_gap(d, a)
    _check_gap(d, b)
    if mv.which_over not in (1, 2):
        raise MoveError("which_over must be 1 or 2")
    faces = faces or chart_faces(d)
    fa = faces.left[a] if mv.first_left else faces.right[a]
    fb = faces.right[b] if mv.second_right else faces.left[b]
    if fa != fb or fa == faces.outer:
        raise MoveError("the two gaps do not share the named face")
    l_a = 1 if mv.first_left else -1
    r_b = 1 if mv.second_right else -1
    parallel = l_a == r_b
    a_over = mv.which_over == 1
    m = d.n_crossings
    c1, c2 = m + 1, m + 2
    h1 = -r_b if a_over else r_b
    comps = [list(c) for c in d.components]
    on_a = [CrossingPass(c1, a_over), CrossingPass(c2, a_over)]
    on_b = [CrossingPass(c1, not a_over), CrossingPass(c2, not a_over)]
    if not parallel:
        on_b.reverse()
    # insert the later position first so indices stay valid
    for pos, evs in sorted([(a, on_a), (b, on_b)], key=lambda t: (t[0].component, t[0].index),
                           reverse=True):
        _insert(comps, pos, evs)
    return Diagram(d.surface, tuple(map(tuple, comps)), d.handedness + (h1, -h1), d.name)


def _bigons(d: Diagram, faces: ChartFaces) -> set[tuple[int, int]]:
    """Crossing pairs bounding a two-sided face with one strand over at both ends."""
    out = set()
    for f, sides in faces.sides.items():
        if f == faces.outer or len(faces.faces[f]) != 2 or len(sides) != 2:
            continue
        pairs = [_gap_crossings(d, g) for g in sides]
        if any(p is None for p in pairs):
            continue
        xs = {e.crossing for p in pairs for e in p}
        overs = sorted((p[0].over, p[1].over) for p in pairs)
        if len(xs) == 2 and overs == [(False, False), (True, True)]:
            out.add(tuple(sorted(xs)))
    return out


def _bigon(d: Diagram, x: int, y: int, faces: ChartFaces) -> bool:
    return tuple(sorted((x, y))) in _bigons(d, faces)


def _apply_r2_remove(d: Diagram, mv: R2Remove, faces: ChartFaces | None = None) -> Diagram:
    x, y = mv.crossings
    faces = faces or chart_faces(d)
    if not _bigon(d, x, y, faces):
        raise MoveError(f"crossings {x}, {y} do not bound a removable bigon")
    return _remove_crossings(d, {x, y})


def _triangles(d: Diagram, faces: ChartFaces) -> list[R3]:
    out = []
    for f, sides in faces.sides.items():
        if f == faces.outer or len(faces.faces[f]) != 3 or len(sides) != 3:
            continue
        pairs = [_gap_crossings(d, g) for g in sides]
        if any(p is None for p in pairs):
            continue
        xs = {e.crossing for p in pairs for e in p}
        if len(xs) != 3:
            continue
        if not any(p[0].over and p[1].over for p in pairs):
            continue
        out.append(R3(tuple(sorted(xs)), tuple(sorted(sides, key=lambda g: (g.component, g.index)))))
    return out


def _apply_r3(d: Diagram, mv: R3, faces: ChartFaces | None = None) -> Diagram:
    faces = faces or chart_faces(d)
    if mv not in _triangles(d, faces):
        raise MoveError(f"no R3 triangle on crossings {mv.crossings} with sides {mv.sides}")
    comps = [list(c) for c in d.components]
    for g in mv.sides:
        comp = comps[g.component]
        i, j = g.index, (g.index + 1) % len(comp)
        comp[i], comp[j] = comp[j], comp[i]
    return Diagram(d.surface, tuple(map(tuple, comps)), d.handedness, d.name)


def apply_move(d: Diagram, mv: MoveDescriptor) -> Diagram:
    """Apply one move and return the new diagram; raises :class:`MoveError`."""
    if isinstance(mv, R1Add):
        return _apply_r1_add(d, mv)
    if isinstance(mv, R1Remove):
        return _apply_r1_remove(d, mv)
    if isinstance(mv, R2Add):
        return _apply_r2_add(d, mv)
    if isinstance(mv, R2Remove):
        return _apply_r2_remove(d, mv)
    if isinstance(mv, R3):
        return _apply_r3(d, mv)
    raise TypeError(f"not a move descriptor: {mv!r}")


def applicable_moves(d: Diagram, max_crossings: int | None = None) -> dict[str, list]:
    """Every currently applicable move descriptor, grouped by kind."""
    faces = chart_faces(d)
    m = d.n_crossings
    room = (lambda k: True) if max_crossings is None else (lambda k: m + k <= max_crossings)
    all_gaps = gaps(d)
    out: dict[str, list] = {"R1Add": [], "R1Remove": [], "R2Add": [], "R2Remove": [], "R3": []}
    if room(1):
        out["R1Add"] = [R1Add(g, of, s) for g in all_gaps for of in (True, False) for s in (1, -1)]
    for x in range(1, m + 1):
        try:
            _apply_r1_remove(d, R1Remove(x), faces)
        except MoveError:
            continue
        out["R1Remove"].append(R1Remove(x))
    if room(2):
        sides: dict[int, list[tuple[ArcPosition, bool]]] = {}
        for g in all_gaps:
            sides.setdefault(faces.left[g], []).append((g, True))
            sides.setdefault(faces.right[g], []).append((g, False))
        for f, members in sides.items():
            if f == faces.outer:
                continue
            for a, a_left in members:
                for b, b_left in members:
                    if a == b:
                        continue
                    for w in (1, 2):
                        out["R2Add"].append(R2Add(a, b, w, a_left, not b_left))
    for x, y in sorted(_bigons(d, faces)):
        try:
            _remove_crossings(d, {x, y})
        except MoveError:
            continue
        out["R2Remove"].append(R2Remove((x, y)))
    out["R3"] = _triangles(d, faces)
    return out


def random_move(d: Diagram, rng: random.Random, max_crossings: int | None = None):
    """One random applicable move: a kind uniformly, then a descriptor of that kind."""
    options = applicable_moves(d, max_crossings)
    kinds = [k for k in sorted(options) if options[k]]
    if not kinds:
        return None
    return rng.choice(options[rng.choice(kinds)])


def random_move_sequence(d: Diagram, length: int, seed: int, max_crossings: int = 16):
    """A seeded trajectory ``[(move, diagram after move), ...]`` of at most ``length`` steps."""
    rng = random.Random(seed)
    out = []
    cur = d
    for _ in range(length):
        mv = random_move(cur, rng, max_crossings)
        if mv is None:
            continue
        cur = apply_move(cur, mv)
        out.append((mv, cur))
    return out


# ------------------------------------------------------------ double cover

def double_cover(d: Diagram) -> Diagram:
    """Orientation double cover of a Klein-bottle diagram, drawn on the torus.

    Copy A is the original rectangle.  Copy B is its mirror image in a
    vertical line, stacked on top of A.  Copy B uses crossing ids
    ``x + m`` and handedness ``-h``.  A strand switches copies whenever it
    passes through the twisted top/bottom gluing.  When it moves from the
    top of A into the bottom of B, the crossing is interior to the cover and
    produces no tokens.

    A component that keeps orientation lifts to two components; the second
    starts right after its first wall passage.  Any other component lifts to
    a single component of twice the length.
    """
    if d.surface != SURFACES["klein"]:
        raise ValueError(f"double_cover needs a Klein bottle diagram, got {d.surface.name}")
    m = d.n_crossings
    kv = d.port_count("l")
    kh = d.port_count("t")

    def lift_port(w: WallPass, copy: int) -> WallPass | None:
        s, i = w.side, w.port
        if s == "t":
            return None if copy == 0 else WallPass("t", kh + 1 - i)
        if s == "b":
            return WallPass("b", i) if copy == 0 else None
        if s == "l":
            return WallPass("l", i) if copy == 0 else WallPass("r", kv + 1 - i)
        return WallPass("r", kv + i) if copy == 0 else WallPass("l", kv + kv + 1 - i)

    def lap(comp, copy: int):
        out: list[Event] = []
        exits = dict(wall_pairs(comp))
        i, n = 0, len(comp)
        while i < n:
            e = comp[i]
            if isinstance(e, CrossingPass):
                out.append(CrossingPass(e.crossing + m * copy, e.over))
                i += 1
                continue
            entry = comp[exits[i]]
            ex = lift_port(e, copy)
            if e.side in "tb":
                copy = 1 - copy
            en = lift_port(entry, copy)
            if ex is not None:
                out += [ex, en]
            i += 2
        return out, copy

    comps = []
    for comp in d.components:
        # a pair that wraps (exit at the end, entry at index 0) is handled by
        # rotating the code so that it starts with a crossing pass
        start = next((j for j, e in enumerate(comp) if isinstance(e, CrossingPass)), 0)
        comp = comp[start:] + comp[:start]
        first, end = lap(comp, 0)
        if end == 0:
            second, _ = lap(comp, 1)
            comps.append(tuple(first))
            cut = next((j + 2 for j, e in enumerate(second) if isinstance(e, WallPass)), 0)
            comps.append(tuple(second[cut:] + second[:cut]))
        else:
            second, _ = lap(comp, 1)
            comps.append(tuple(first + second))
    hs = tuple(d.handedness) + tuple(-h for h in d.handedness)
    return Diagram(SURFACES["torus"], tuple(comps), hs, (d.name + "*") if d.name else "")
