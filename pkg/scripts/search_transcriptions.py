"""Exhaustive search for two-crossing Klein-bottle knot codes with a given
crossing/wall pattern, filtered by state circle counts, signs and J.

Used to pin down the bundled ``d3`` and ``d4`` codes: a template fixes the
order of crossing passes and of the wall passages between them (``H`` for
the twisted top/bottom gluing, ``V`` for the left/right one, ``?`` for
either).  Every choice of port numbers, passage directions, over/under
assignment and handedness is tried; the survivors are grouped by the
bracket of their double cover.

    python scripts/search_transcriptions.py
"""

from __future__ import annotations

import itertools
import time
from collections import defaultdict
from dataclasses import dataclass

from nonorbracket.cabling import crossing_data, propagate_labels
from nonorbracket.corpus import load
from nonorbracket.laurent import JPoly, LaurentU, canonical_pair, serialize
from nonorbracket.statesum import classical_bracket, j_polynomial, trace_circles
from nonorbracket.surface import SURFACES, CrossingPass, Diagram, WallPass, validate
from nonorbracket.transform import double_cover, is_realizable

STATES = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
u = LaurentU.monomial


@dataclass
class Target:
    name: str
    template: list            # 'x' / 'y' crossing passes, tuples of wall types
    circle_counts: tuple
    j: JPoly
    signs: tuple = (1j, 1j)


TARGETS = [
    Target("d3", ["x", ("H",), "x", ("H", "H"), "y", ("?", "?"), "y"], (3, 2, 2, 1), JPoly(2, u(6))),
    Target("d4", ["x", ("V",), "y", ("H",), "x", "y", ("?", "?")], (1, 1, 1, 2),
           JPoly(2, u(2) + u(0) - u(-4))),
]


def _wall_tokens(choice, dirs, vperm, hperm, kv):
    toks, vi, hi, pi = [], 0, 0, 0
    for t in choice:
        if not isinstance(t, tuple):
            toks.append(t)
            continue
        for typ in t:
            forward = dirs[pi]
            pi += 1
            if typ == "V":
                i = vperm[vi]
                vi += 1
                pair = [WallPass("l", i), WallPass("r", kv + 1 - i)]
            else:
                i = hperm[hi]
                hi += 1
                pair = [WallPass("t", i), WallPass("b", i)]
            toks += pair if forward else pair[::-1]
    return toks


def candidates(template):
    """Every valid, realizable diagram matching ``template``."""
    klein = SURFACES["klein"]
    groups = [[("H", "V"), ("V", "H")] if isinstance(t, tuple) and "?" in t else [t] for t in template]
    for choice in itertools.product(*groups):
        passes = [p for t in choice if isinstance(t, tuple) for p in t]
        kv, kh = passes.count("V"), passes.count("H")
        for dirs in itertools.product((0, 1), repeat=len(passes)):
            for vperm in itertools.permutations(range(1, kv + 1)):
                for hperm in itertools.permutations(range(1, kh + 1)):
                    toks = _wall_tokens(choice, dirs, vperm, hperm, kv)
                    for ox, oy, hx, hy in itertools.product((True, False), (True, False), (1, -1), (1, -1)):
                        seen = {"x": 0, "y": 0}
                        comp = []
                        for t in toks:
                            if t in ("x", "y"):
                                over = (ox if t == "x" else oy) == (seen[t] == 0)
                                seen[t] += 1
                                comp.append(CrossingPass(1 if t == "x" else 2, over))
                            else:
                                comp.append(t)
                        d = Diagram(klein, (tuple(comp),), (hx, hy))
                        if not validate(d) and is_realizable(d):
                            yield d


def matches(d, target: Target) -> bool:
    la = propagate_labels(d, "A")
    if tuple(c.sign for c in crossing_data(d, la)) != target.signs:
        return False
    if tuple(trace_circles(d, la, s).n for s in STATES) != target.circle_counts:
        return False
    return j_polynomial(d, la) == target.j


def main() -> None:
    for target in TARGETS:
        t = time.perf_counter()
        total = 0
        classes = defaultdict(list)
        for d in candidates(target.template):
            total += 1
            if matches(d, target):
                key = serialize(canonical_pair(classical_bracket(double_cover(d))))
                classes[key].append(d)
        bundled = load(target.name)
        print(f"{target.name}: {total} realizable candidates, "
              f"{sum(map(len, classes.values()))} match ({time.perf_counter() - t:.1f} s)")
        for key, ds in classes.items():
            print(f"    cover bracket {key}: {len(ds)} codes, e.g. {' '.join(ds[0].codes()[0].split())}")
        hit = any(d.components == bundled.components and d.handedness == bundled.handedness
                  for ds in classes.values() for d in ds)
        print(f"    bundled code {bundled.codes()[0]} is {'among' if hit else 'NOT among'} the matches")


if __name__ == "__main__":
    main()
