"""Recompute every worked value for the bundled diagrams and print a table.

    python scripts/reproduce_examples.py [--json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from nonorbracket.cabling import crossing_data, propagate_labels, writhe_numbers
from nonorbracket.cli import format_gaussian
from nonorbracket.corpus import load_all
from nonorbracket.laurent import canonical_pair, serialize
from nonorbracket.statesum import classical_bracket, j_polynomial, state_weight, trace_circles
from nonorbracket.transform import double_cover

STATES = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


@dataclass
class KnotReport:
    name: str
    crossings: int
    types: list[int]
    signs: list[str]
    writhe: str
    j: str
    j_canonical: str
    cover_bracket: str
    circle_counts: list[int] | None = None
    state_weights: list[str] | None = None
    seconds: float = 0.0


def knot_report(name, d) -> KnotReport:
    t = time.perf_counter()
    la = propagate_labels(d, "A")
    data = crossing_data(d, la)
    w, _, _ = writhe_numbers(d, la)
    j = j_polynomial(d, la)
    rep = KnotReport(
        name=name,
        crossings=d.n_crossings,
        types=[c.type for c in data],
        signs=[format_gaussian(c.sign) for c in data],
        writhe=format_gaussian(w),
        j=serialize(j),
        j_canonical=serialize(canonical_pair(j)),
        cover_bracket=serialize(canonical_pair(classical_bracket(double_cover(d)))),
    )
    if d.n_crossings == 2:
        rep.circle_counts = [trace_circles(d, la, s).n for s in STATES]
        rep.state_weights = [serialize(state_weight(d, la, s)) for s in STATES]
    rep.seconds = time.perf_counter() - t
    return rep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    corpus = load_all()
    knots = [knot_report(n, corpus[n]) for n in ("d1", "d2", "d3", "d4")]
    links = {n: serialize(classical_bracket(corpus[n])) for n in ("d1_star", "d2_star")}

    if args.json:
        print(json.dumps({"knots": [asdict(k) for k in knots], "torus_links": links}, indent=2))
        return
    for k in knots:
        print(f"{k.name}: {k.crossings} crossings, types {k.types}, signs {k.signs}, w = {k.writhe}")
        print(f"    J             = {k.j}")
        print(f"    canonical J   = {k.j_canonical}")
        print(f"    cover bracket = {k.cover_bracket}")
        if k.circle_counts:
            for s, n, p in zip(STATES, k.circle_counts, k.state_weights):
                print(f"    state {s}: {n} circles, weight {p}")
        print(f"    ({k.seconds * 1000:.1f} ms)")
    for n, b in links.items():
        print(f"{n}: classical bracket = {b}")


if __name__ == "__main__":
    main()
