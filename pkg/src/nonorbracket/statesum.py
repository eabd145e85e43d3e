"""Smoothings, circle tracing and the bracket-type state sums.

Every crossing ``x`` (0-based index ``i = x - 1``) owns four half-edges::

    4i + 0  in-over     4i + 1  out-over
    4i + 2  in-under    4i + 3  out-under

Arcs of the diagram join an ``out`` half-edge to the next ``in`` half-edge.
A smoothing joins the four half-edges of a crossing in two pairs:

* along:  in-over/out-under and in-under/out-over
* across: in-over/in-under and out-over/out-under

The circles of a state are the cycles of the resulting 2-regular graph.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cabling import (
    CablingError,
    LabelAssignment,
    crossing_sign,
    is_pseudo_classical,
    propagate_labels,
    writhe_numbers,
)
from .laurent import LOOP, ClassPoly, JPoly, LaurentU
from .surface import CrossingPass, Diagram, arcs

__all__ = [
    "SmoothingKind",
    "TraceResult",
    "positive_smoothing_kind",
    "smoothing_pairing",
    "trace_circles",
    "state_weight",
    "bracket_sum",
    "bracket_sum_bruteforce",
    "j_polynomial",
    "classical_bracket",
    "generalized_j",
    "specialize",
    "states",
    "BRUTEFORCE_LIMIT",
]

BRUTEFORCE_LIMIT = 20
IN_OVER, OUT_OVER, IN_UNDER, OUT_UNDER = range(4)


class SmoothingKind(str, enum.Enum):
    ALONG = "along"
    ACROSS = "across"

    def other(self) -> "SmoothingKind":
        return SmoothingKind.ACROSS if self is SmoothingKind.ALONG else SmoothingKind.ALONG


@dataclass(frozen=True)
class TraceResult:
    n: int
    circles: tuple[tuple[int, int], ...]
    """Per circle ``(wall_parity_v, wall_parity_h)``."""


def positive_smoothing_kind(d: Diagram, la: LabelAssignment, x: int) -> SmoothingKind:
    s = crossing_sign(d, la, x)
    return SmoothingKind.ALONG if s in (1, 1j) else SmoothingKind.ACROSS


def smoothing_pairing(d: Diagram, x: int, kind: SmoothingKind):
    """The two pairs of half-edge names joined at ``x`` by a smoothing of ``kind``."""
    d.passes(x)
    if SmoothingKind(kind) is SmoothingKind.ALONG:
        return (("in_over", "out_under"), ("in_under", "out_over"))
    return (("in_over", "in_under"), ("out_over", "out_under"))


def _local_partner(kind: SmoothingKind) -> tuple[int, int, int, int]:
    if kind is SmoothingKind.ALONG:
        return (OUT_UNDER, IN_UNDER, OUT_OVER, IN_OVER)
    return (IN_UNDER, OUT_UNDER, IN_OVER, OUT_OVER)


@dataclass(frozen=True)
class _Model:
    """Half-edge arc structure of a diagram, independent of any state."""

    m: int
    arc: tuple[int, ...]                 # involution on 4m half-edges
    arc_class: tuple[tuple[int, int], ...]  # parities carried by the arc leaving each out half-edge
    free_loops: tuple[tuple[int, int], ...]  # crossing-free components


def _half_edge(e: CrossingPass, inbound: bool) -> int:
    base = 4 * (e.crossing - 1)
    if e.over:
        return base + (IN_OVER if inbound else OUT_OVER)
    return base + (IN_UNDER if inbound else OUT_UNDER)


def _model(d: Diagram) -> _Model:
    m = d.n_crossings
    arc = [-1] * (4 * m)
    cls = [(0, 0)] * (4 * m)
    free = []
    for a in arcs(d):
        parity = (a.v_passes % 2, a.h_passes % 2)
        if a.tail is None:
            free.append(parity)
            continue
        comp = d.components[a.component]
        out_h = _half_edge(comp[a.tail], inbound=False)
        in_h = _half_edge(comp[a.head], inbound=True)
        arc[out_h] = in_h
        arc[in_h] = out_h
        cls[out_h] = parity
        cls[in_h] = parity
    return _Model(m, tuple(arc), tuple(cls), tuple(free))


def _kinds_for_state(positive: list[SmoothingKind], state) -> list[SmoothingKind]:
    return [k if s == 1 else k.other() for k, s in zip(positive, state)]


def _circles(model: _Model, kinds: list[SmoothingKind]) -> list[tuple[int, int]]:
    """Class parities of every circle for the given smoothing kinds."""
    partner = []
    for i, k in enumerate(kinds):
        partner.extend(4 * i + p for p in _local_partner(k))
    seen = [False] * (4 * model.m)
    out = []
    for start in range(4 * model.m):
        if seen[start]:
            continue
        hv = hh = 0
        h = start
        while True:
            seen[h] = True
            g = partner[h]
            seen[g] = True
            nxt = model.arc[g]
            pv, ph = model.arc_class[g]
            hv ^= pv
            hh ^= ph
            h = nxt
            if h == start:
                break
        out.append((hv, hh))
    out.extend(model.free_loops)
    return out


def _positive_kinds(d: Diagram, la: LabelAssignment) -> list[SmoothingKind]:
    return [positive_smoothing_kind(d, la, x) for x in range(1, d.n_crossings + 1)]


def _classical_kinds(d: Diagram) -> list[SmoothingKind]:
    return [SmoothingKind.ALONG if h == 1 else SmoothingKind.ACROSS for h in d.handedness]


def states(m: int):
    """All states in enumeration order: bit ``i`` of the index set iff ``S(i + 1) = +1``."""
    for code in range(1 << m):
        yield tuple(1 if (code >> i) & 1 else -1 for i in range(m))


def trace_circles(d: Diagram, la: LabelAssignment, state) -> TraceResult:
    state = _as_state(d, state)
    circles = _circles(_model(d), _kinds_for_state(_positive_kinds(d, la), state))
    return TraceResult(len(circles), tuple(circles))


def _as_state(d: Diagram, state) -> tuple[int, ...]:
    if isinstance(state, dict):
        state = tuple(state[x] for x in range(1, d.n_crossings + 1))
    state = tuple(state)
    if len(state) != d.n_crossings or any(s not in (1, -1) for s in state):
        raise ValueError("a state assigns +1 or -1 to every crossing")
    return state


@lru_cache(maxsize=None)
def _loop_power(n: int) -> LaurentU:
    return LOOP ** n


def state_weight(d: Diagram, la: LabelAssignment, state) -> LaurentU:
    """``(-u^2 - u^-2)^(n(S) - 1) * u^(sum of S)``."""
    state = _as_state(d, state)
    n = trace_circles(d, la, state).n
    return _loop_power(n - 1).shift(sum(state))


# ------------------------------------------------------------------ oracle

def _naive_sum(d: Diagram, positive: list[SmoothingKind]) -> LaurentU:
    """Independent enumeration: one graph per state, components by DFS."""
    m = d.n_crossings
    if m > BRUTEFORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTEFORCE_LIMIT} crossings, got {m}")
    # nodes are (crossing, 'in'|'out', 'over'|'under')
    edges = []
    n_free = 0
    for comp in d.components:
        seq = [e for e in comp if isinstance(e, CrossingPass)]
        if not seq:
            n_free += 1
            continue
        for a, b in zip(seq, seq[1:] + seq[:1]):
            edges.append(((a.crossing, "out", a.over), (b.crossing, "in", b.over)))
    total: dict[int, int] = {}
    for state in states(m):
        adj: dict = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        for x, s, k in zip(range(1, m + 1), state, positive):
            along = (k is SmoothingKind.ALONG) == (s == 1)
            if along:
                pairs = [((x, "in", True), (x, "out", False)), ((x, "in", False), (x, "out", True))]
            else:
                pairs = [((x, "in", True), (x, "in", False)), ((x, "out", True), (x, "out", False))]
            for u, v in pairs:
                adj[u].append(v)
                adj[v].append(u)
        seen = set()
        n = n_free
        for node in adj:
            if node in seen:
                continue
            n += 1
            stack = [node]
            seen.add(node)
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        # d**(n-1) expanded term by term
        key = sum(state)
        poly = _loop_power(n - 1).shift(key)
        for e, c in poly.terms:
            total[e] = total.get(e, 0) + c
    return LaurentU.from_dict(total)


def bracket_sum_bruteforce(d: Diagram, la: LabelAssignment | None = None) -> LaurentU:
    """``sum_S P(S; u)`` by direct enumeration; the reference for :func:`bracket_sum`.

    Without a labeling the classical smoothing convention is used.
    """
    positive = _classical_kinds(d) if la is None else _positive_kinds(d, la)
    return _naive_sum(d, positive)


# --------------------------------------------------------------- fast path

_EXPAND = 14  # crossings enumerated inside one chunk; the rest pick the chunk


def _workers() -> int:
    env = os.environ.get("NONOR_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


_ALONG = ((IN_OVER, OUT_UNDER), (IN_UNDER, OUT_OVER))
_ACROSS = ((IN_OVER, IN_UNDER), (OUT_OVER, OUT_UNDER))


def _histogram(model: _Model, along_if_positive: np.ndarray, prefix: int, m0: int) -> np.ndarray:
    """Counts ``(#positive, #circles)`` over the states whose low ``m0`` bits equal ``prefix``.

    The smoothings are applied crossing by crossing.  Before each step the
    half-edges not yet smoothed are the ends of open paths, and ``mate[e]``
    is the far end of the path through ``e``.  Smoothing joins two ends.  If
    they are the two ends of the same path, a circle closes.  The states are
    doubled at each crossing beyond the prefix.
    """
    m = model.m
    mate = np.asarray(model.arc, dtype=np.int16)[None, :].copy()
    closed = np.zeros(1, dtype=np.int16)
    pos = np.zeros(1, dtype=np.int16)
    for i in range(m):
        if i < m0:
            plus = bool((prefix >> i) & 1)
            halves = [(plus, mate, closed, pos + plus)]
        else:
            halves = [(False, mate, closed, pos), (True, mate.copy(), closed.copy(), pos + 1)]
        done = []
        for plus, mt, cl, ps in halves:
            along = plus == bool(along_if_positive[i])
            rows = np.arange(mt.shape[0])
            for a, b in (_ALONG if along else _ACROSS):
                a, b = 4 * i + a, 4 * i + b
                ma, mb = mt[:, a].copy(), mt[:, b].copy()
                cl += ma == b
                mt[rows, ma] = mb
                mt[rows, mb] = ma
            done.append((mt, cl, ps))
        mate = np.concatenate([h[0] for h in done])
        closed = np.concatenate([h[1] for h in done])
        pos = np.concatenate([h[2] for h in done])
    n = closed.astype(np.int64) + len(model.free_loops)
    width = 2 * m + len(model.free_loops) + 2
    return np.bincount(pos.astype(np.int64) * width + n,
                       minlength=(m + 1) * width).reshape(m + 1, width)


def _fast_sum(d: Diagram, positive: list[SmoothingKind]) -> LaurentU:
    model = _model(d)
    m = model.m
    if m == 0:
        return _loop_power(len(model.free_loops) - 1)
    along_if_positive = np.array([k is SmoothingKind.ALONG for k in positive])
    m0 = max(0, m - _EXPAND)
    prefixes = range(1 << m0)
    workers = _workers()
    if workers > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda p: _histogram(model, along_if_positive, p, m0), prefixes))
    else:
        parts = [_histogram(model, along_if_positive, p, m0) for p in prefixes]
    hist = sum(parts)
    acc: dict[int, int] = {}
    for pos, n in zip(*np.nonzero(hist)):
        count = int(hist[pos, n])
        for e, c in _loop_power(int(n) - 1).terms:
            k = e + 2 * int(pos) - m
            acc[k] = acc.get(k, 0) + c * count
    return LaurentU.from_dict(acc)


def bracket_sum(d: Diagram, la: LabelAssignment | None = None) -> LaurentU:
    """``sum_S P(S; u)``; vectorized over states and split across threads."""
    positive = _classical_kinds(d) if la is None else _positive_kinds(d, la)
    return _fast_sum(d, positive)


# ------------------------------------------------------------- invariants

def _prefactor(w1: int) -> LaurentU:
    # (-u)^(-3 w1)
    return LaurentU.monomial(-3 * w1, -1 if w1 % 2 else 1)


def _labels(d: Diagram, la: LabelAssignment | str | None) -> LabelAssignment:
    if la is None or isinstance(la, str):
        return propagate_labels(d, la or "A")
    return la


def j_polynomial(d: Diagram, la: LabelAssignment | str | None = None) -> JPoly:
    """``(-u)^(-3 w1) v^|w2| sum_S P(S; u)`` for a pseudo-classical knot."""
    if len(d.components) == 1 and not is_pseudo_classical(d):
        raise CablingError("J is defined for pseudo-classical knots only")
    la = _labels(d, la)
    _, w1, w2 = writhe_numbers(d, la)
    return JPoly(abs(w2), _prefactor(w1) * bracket_sum(d, la))


def classical_bracket(d: Diagram) -> LaurentU:
    """Normalized Kauffman bracket of a diagram on an orientable surface.

    ``S(x) = +1`` is the smoothing that merges the region on the right of the
    incoming over strand with the opposite one; the writhe counts every crossing.
    """
    if not d.surface.orientable:
        raise CablingError(f"the classical bracket needs an orientable surface, not {d.surface.name}")
    return _prefactor(sum(d.handedness)) * bracket_sum(d)


def generalized_j(d: Diagram, la: LabelAssignment | str | None = None) -> ClassPoly:
    """Homological refinement of J with Z/2 class generators.

    Each circle contributes ``-u^2 - u^-2`` if it is null-homologous mod 2 and
    its class generator otherwise.  No circle is normalized away here; the
    ``n(S) - 1`` convention is restored by :func:`specialize`.
    """
    if len(d.components) == 1 and not is_pseudo_classical(d):
        raise CablingError("J is defined for pseudo-classical knots only")
    la = _labels(d, la)
    _, w1, w2 = writhe_numbers(d, la)
    model = _model(d)
    positive = _positive_kinds(d, la)
    acc: dict[tuple, LaurentU] = {}
    for state in states(d.n_crossings):
        circles = _circles(model, _kinds_for_state(positive, state))
        trivial = sum(1 for c in circles if c == (0, 0))
        mono = tuple(sorted(c for c in circles if c != (0, 0)))
        term = _loop_power(trivial).shift(sum(state))
        acc[mono] = acc.get(mono, LaurentU()) + term
    pre = _prefactor(w1)
    return ClassPoly(tuple((mono, pre * c) for mono, c in acc.items()), abs(w2))


def specialize(cp: ClassPoly) -> JPoly:
    """Map every generator to ``-u^2 - u^-2`` and divide out one circle factor."""
    return JPoly(cp.v_exp, cp.specialize(LOOP).exact_div(LOOP))
