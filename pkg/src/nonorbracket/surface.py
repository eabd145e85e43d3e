"""Surfaces as glued rectangles, diagrams as extended Gauss codes.

A diagram lives in a rectangle whose side pairs may be glued, with or
without a twist.  Each component is a cyclic sequence of events: crossing
passes (``+n`` over, ``-n`` under) and wall tokens (``l3``, ``t1``, ...).
A strand leaving the rectangle contributes two consecutive wall tokens, the
exit port followed by its partner entry port.

Ports on every side are numbered clockwise: ``t`` left to right, ``r`` top to
bottom, ``b`` right to left, ``l`` bottom to top.

File format (``#`` starts a comment)::

    surface klein          # optional, defaults to torus
    link D3
    crossings 2
    handedness 1 1         # 'signs' is accepted as an alias
    code 1 t1 b1 -1 ...    # one line per component
    end
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Surface",
    "SURFACES",
    "CrossingPass",
    "WallPass",
    "Event",
    "Diagram",
    "Arc",
    "Problem",
    "DiagramSyntaxError",
    "DiagramError",
    "parse_token",
    "parse_diagram_file",
    "parse_diagram",
    "serialize_diagram",
    "diagram_to_json",
    "diagram_from_json",
    "validate",
    "port_partner",
    "wall_flip",
    "wall_pairs",
    "arcs",
]

SIDES = "ltrb"
PARTNER_SIDE = {"l": "r", "r": "l", "t": "b", "b": "t"}


@dataclass(frozen=True)
class Surface:
    """A rectangle with optional side identifications.

    ``vertical`` describes the left/right pair and ``horizontal`` the
    top/bottom pair: ``None`` for a free pair, otherwise the twist flag.
    """

    name: str
    vertical: bool | None
    horizontal: bool | None

    def gluing(self, side: str) -> bool | None:
        return self.vertical if side in "lr" else self.horizontal

    def is_glued(self, side: str) -> bool:
        return self.gluing(side) is not None

    @property
    def orientable(self) -> bool:
        return self.vertical is not True and self.horizontal is not True


SURFACES = {
    s.name: s
    for s in (
        Surface("torus", False, False),
        Surface("klein", False, True),
        Surface("annulus-v", False, None),
        Surface("annulus-h", None, False),
        Surface("moebius-v", True, None),
        Surface("moebius-h", None, True),
    )
}


@dataclass(frozen=True)
class CrossingPass:
    crossing: int
    over: bool

    def __str__(self) -> str:
        return f"{'' if self.over else '-'}{self.crossing}"


@dataclass(frozen=True)
class WallPass:
    side: str
    port: int

    def __str__(self) -> str:
        return f"{self.side}{self.port}"


Event = Union[CrossingPass, WallPass]

_TOKEN_RE = re.compile(r"^(?:(?P<sign>[-+]?)(?P<num>\d+)|(?P<side>[ltrb])(?P<port>\d+))$")


def parse_token(tok: str) -> Event:
    m = _TOKEN_RE.match(tok)
    if not m:
        raise ValueError(f"bad token {tok!r}")
    if m.group("num") is not None:
        return CrossingPass(int(m.group("num")), m.group("sign") != "-")
    return WallPass(m.group("side"), int(m.group("port")))


@dataclass(frozen=True)
class Diagram:
    """Combinatorial diagram on a glued rectangle.

    ``handedness[i]`` is the planar sign of crossing ``i + 1`` in the rectangle
    chart, both strands oriented by traversal (over tangent, under tangent).
    """

    surface: Surface
    components: tuple[tuple[Event, ...], ...]
    handedness: tuple[int, ...]
    name: str = ""

    @classmethod
    def from_code(cls, surface, codes, handedness, name: str = "") -> "Diagram":
        if isinstance(surface, str):
            surface = SURFACES[surface]
        comps = []
        for code in codes:
            toks = code.split() if isinstance(code, str) else code
            comps.append(tuple(t if isinstance(t, (CrossingPass, WallPass)) else parse_token(str(t))
                               for t in toks))
        return cls(surface, tuple(comps), tuple(int(h) for h in handedness), name)

    @property
    def n_crossings(self) -> int:
        return len(self.handedness)

    def h(self, x: int) -> int:
        return self.handedness[x - 1]

    def codes(self) -> list[str]:
        return [" ".join(str(e) for e in comp) for comp in self.components]

    def port_count(self, side: str) -> int:
        return sum(1 for comp in self.components for e in comp
                   if isinstance(e, WallPass) and e.side == side)

    def passes(self, x: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """``((comp, index) of the over pass, (comp, index) of the under pass)``."""
        over = under = None
        for c, comp in enumerate(self.components):
            for i, e in enumerate(comp):
                if isinstance(e, CrossingPass) and e.crossing == x:
                    if e.over:
                        over = (c, i)
                    else:
                        under = (c, i)
        if over is None or under is None:
            raise KeyError(f"crossing {x} is not in the diagram")
        return over, under

    def with_name(self, name: str) -> "Diagram":
        return Diagram(self.surface, self.components, self.handedness, name)


@dataclass(frozen=True)
class Problem:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class DiagramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DiagramError(ValueError):
    """A structurally invalid diagram; ``problems`` lists every violation."""

    def __init__(self, problems: list[Problem], line: int | None = None):
        self.problems = problems
        self.line = line
        where = f"diagram starting at line {line}: " if line else ""
        super().__init__(where + "; ".join(str(p) for p in problems))


# ------------------------------------------------------------------ gluing

def port_partner(surface: Surface, w: WallPass, k: int) -> WallPass:
    """The port identified with ``w`` when its side carries ``k`` ports.

    Untwisted: ``l_i <-> r_{k+1-i}``, ``t_i <-> b_{k+1-i}``.
    Twisted:   ``l_i <-> r_i``,       ``t_i <-> b_i``.
    """
    twist = surface.gluing(w.side)
    if twist is None:
        raise ValueError(f"side {w.side!r} is not glued on {surface.name}")
    if not 1 <= w.port <= k:
        raise ValueError(f"port {w} out of range 1..{k}")
    port = w.port if twist else k + 1 - w.port
    return WallPass(PARTNER_SIDE[w.side], port)


def wall_flip(surface: Surface, w: WallPass) -> bool:
    """Whether passing through ``w`` reverses the local orientation of the chart."""
    twist = surface.gluing(w.side)
    if twist is None:
        raise ValueError(f"side {w.side!r} is not glued on {surface.name}")
    return twist


def _runs(comp) -> list[list[int]]:
    n = len(comp)
    cross = [i for i, e in enumerate(comp) if isinstance(e, CrossingPass)]
    if not cross:
        return [list(range(n))] if n else []
    runs = []
    for a, b in zip(cross, cross[1:] + [cross[0] + n]):
        run = [j % n for j in range(a + 1, b)]
        if run:
            runs.append(run)
    return runs


def wall_pairs(comp) -> list[tuple[int, int]]:
    """Indices ``(exit, entry)`` of each wall passage of a component.

    Raises ``ValueError`` if a run of wall tokens has odd length.
    """
    pairs = []
    for run in _runs(comp):
        if len(run) % 2:
            raise ValueError("wall tokens must come in exit/entry pairs")
        pairs.extend((run[j], run[j + 1]) for j in range(0, len(run), 2))
    return pairs


@dataclass(frozen=True)
class Arc:
    """Stretch of a component between consecutive crossing passes.

    ``tail``/``head`` are event indices of the crossing passes the arc leaves and
    enters; both are ``None`` for a component without crossings.
    """

    component: int
    tail: int | None
    head: int | None
    v_passes: int
    h_passes: int
    flips: int


def arcs(d: Diagram) -> list[Arc]:
    out = []
    for c, comp in enumerate(d.components):
        entries = {b for _, b in wall_pairs(comp)}
        cross = [i for i, e in enumerate(comp) if isinstance(e, CrossingPass)]

        def tally(indices):
            v = h = f = 0
            for j in indices:
                if j in entries:
                    continue
                side = comp[j].side
                if side in "lr":
                    v += 1
                else:
                    h += 1
                if d.surface.gluing(side):
                    f += 1
            return v, h, f

        n = len(comp)
        if not cross:
            out.append(Arc(c, None, None, *tally(range(n))))
            continue
        for a, b in zip(cross, cross[1:] + [cross[0] + n]):
            out.append(Arc(c, a, b % n, *tally(j % n for j in range(a + 1, b))))
    return out


# -------------------------------------------------------------- validation

def validate(d: Diagram) -> list[Problem]:
    """Every violated structural invariant of ``d``; empty iff valid."""
    problems: list[Problem] = []
    s = d.surface
    if s.vertical is None and s.horizontal is None:
        problems.append(Problem("surface", "no side pair is glued"))
    m = d.n_crossings
    if any(h not in (1, -1) for h in d.handedness):
        problems.append(Problem("handedness", "entries must be +1 or -1"))
    over_count = [0] * (m + 1)
    under_count = [0] * (m + 1)
    ports: dict[str, list[int]] = {side: [] for side in SIDES}
    for c, comp in enumerate(d.components):
        if not comp:
            problems.append(Problem("component", f"component {c + 1} is empty"))
        for e in comp:
            if isinstance(e, CrossingPass):
                if not 1 <= e.crossing <= m:
                    problems.append(Problem("crossing", f"crossing {e.crossing} out of range 1..{m}"))
                elif e.over:
                    over_count[e.crossing] += 1
                else:
                    under_count[e.crossing] += 1
            else:
                ports[e.side].append(e.port)
    for x in range(1, m + 1):
        if over_count[x] != 1 or under_count[x] != 1:
            problems.append(Problem(
                "crossing",
                f"crossing {x} passed over {over_count[x]} time(s) and under "
                f"{under_count[x]} time(s); expected once each"))
    for side in SIDES:
        nums = ports[side]
        if not nums:
            continue
        if not s.is_glued(side):
            problems.append(Problem("port", f"{len(nums)} port(s) on free side {side!r}"))
            continue
        dup = sorted({p for p in nums if nums.count(p) > 1})
        if dup:
            problems.append(Problem("port", f"duplicate port(s) {', '.join(side + str(p) for p in dup)}"))
        if sorted(set(nums)) != list(range(1, len(set(nums)) + 1)):
            problems.append(Problem("port", f"ports on side {side!r} are not numbered 1..k"))
    for side, other in (("l", "r"), ("t", "b")):
        if s.is_glued(side) and len(ports[side]) != len(ports[other]):
            problems.append(Problem(
                "port", f"port-count mismatch: {len(ports[side])} on {side!r}, "
                        f"{len(ports[other])} on {other!r}"))
    if problems:
        return problems
    for c, comp in enumerate(d.components):
        try:
            pairs = wall_pairs(comp)
        except ValueError:
            problems.append(Problem("wall", f"component {c + 1}: unpaired wall token"))
            continue
        for a, b in pairs:
            w, z = comp[a], comp[b]
            expected = port_partner(s, w, len(ports[w.side]))
            if z != expected:
                problems.append(Problem(
                    "wall", f"component {c + 1}: exit {w} is followed by {z}, expected {expected}"))
    return problems


def check(d: Diagram) -> Diagram:
    problems = validate(d)
    if problems:
        raise DiagramError(problems)
    return d


# ------------------------------------------------------------------ format

@dataclass
class _Block:
    line: int
    surface: Surface = SURFACES["torus"]
    name: str = ""
    crossings: int | None = None
    handedness: list[int] | None = None
    codes: list[list[Event]] = field(default_factory=list)


def _split_with_cols(line: str) -> Iterator[tuple[str, int]]:
    for m in re.finditer(r"\S+", line):
        yield m.group(), m.start() + 1


def parse_diagram_file(text: str) -> list[Diagram]:
    """Parse every diagram block in ``text``; each block ends with ``end``."""
    diagrams: list[Diagram] = []
    block: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        words = list(_split_with_cols(line))
        if not words:
            continue
        key, col = words[0]
        args = words[1:]
        if block is None:
            block = _Block(lineno)
        if key == "surface":
            if len(args) != 1 or args[0][0] not in SURFACES:
                where = args[0][1] if args else col
                raise DiagramSyntaxError(
                    f"expected one of {', '.join(SURFACES)} after 'surface'", lineno, where)
            block.surface = SURFACES[args[0][0]]
        elif key == "link":
            block.name = line[col - 1 + len("link"):].strip()
        elif key == "crossings":
            if len(args) != 1 or not args[0][0].isdigit():
                raise DiagramSyntaxError("expected a nonnegative integer", lineno,
                                         args[0][1] if args else col)
            block.crossings = int(args[0][0])
        elif key in ("handedness", "signs"):
            vals = []
            for tok, c in args:
                if tok not in ("1", "-1", "+1"):
                    raise DiagramSyntaxError(f"handedness entry {tok!r} is not +-1", lineno, c)
                vals.append(int(tok))
            block.handedness = vals
        elif key == "code":
            events = []
            for tok, c in args:
                try:
                    events.append(parse_token(tok))
                except ValueError:
                    raise DiagramSyntaxError(f"bad code token {tok!r}", lineno, c) from None
            if not events:
                raise DiagramSyntaxError("empty code line", lineno, col)
            block.codes.append(events)
        elif key == "end":
            diagrams.append(_finish(block, lineno))
            block = None
        else:
            raise DiagramSyntaxError(f"unknown keyword {key!r}", lineno, col)
    if block is not None:
        raise DiagramSyntaxError("missing 'end'", len(text.splitlines()) + 1)
    return diagrams


def _finish(block: _Block, lineno: int) -> Diagram:
    if block.crossings is None:
        raise DiagramSyntaxError("missing 'crossings' line", lineno)
    hand = block.handedness
    if hand is None:
        if block.crossings:
            raise DiagramSyntaxError("missing 'handedness' line", lineno)
        hand = []
    if len(hand) != block.crossings:
        raise DiagramSyntaxError(
            f"{len(hand)} handedness entries for {block.crossings} crossings", lineno)
    d = Diagram(block.surface, tuple(tuple(c) for c in block.codes), tuple(hand), block.name)
    problems = validate(d)
    if problems:
        raise DiagramError(problems, block.line)
    return d


def parse_diagram(text: str) -> Diagram:
    """Parse a file expected to hold exactly one diagram."""
    ds = parse_diagram_file(text)
    if len(ds) != 1:
        raise ValueError(f"expected one diagram, found {len(ds)}")
    return ds[0]


def serialize_diagram(d: Diagram) -> str:
    lines = [f"surface {d.surface.name}", f"link {d.name}".rstrip(),
             f"crossings {d.n_crossings}"]
    lines.append(" ".join(["handedness"] + [str(h) for h in d.handedness]))
    lines.extend(f"code {code}" for code in d.codes())
    lines.append("end")
    return "\n".join(lines) + "\n"


def diagram_to_json(d: Diagram) -> dict:
    return {
        "surface": d.surface.name,
        "link": d.name,
        "crossings": d.n_crossings,
        "handedness": list(d.handedness),
        "code": [[str(e) for e in comp] for comp in d.components],
    }


def diagram_from_json(obj) -> Diagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    d = Diagram.from_code(obj.get("surface", "torus"), obj["code"], obj["handedness"],
                          obj.get("link", ""))
    if d.n_crossings != obj["crossings"]:
        raise DiagramError([Problem("handedness", "length differs from 'crossings'")])
    return check(d)
