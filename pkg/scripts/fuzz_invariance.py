"""Random Reidemeister walks from the bundled knots, checking that canonical J
and |w2| never change.

    python scripts/fuzz_invariance.py --trajectories 200 --moves 20 --cap 16
"""

from __future__ import annotations

import argparse
import json
import logging
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from nonorbracket.cabling import propagate_labels, writhe_numbers
from nonorbracket.corpus import load
from nonorbracket.laurent import canonical_pair, serialize
from nonorbracket.statesum import j_polynomial
from nonorbracket.transform import random_move_sequence

log = logging.getLogger("fuzz")


@dataclass
class FuzzConfig:
    diagrams: list[str] = field(default_factory=lambda: ["d1", "d2", "d3", "d4"])
    trajectories: int = 200
    moves: int = 20
    cap: int = 16
    seed: int = 0


@dataclass
class FuzzResult:
    diagram: str
    invariant: str
    trajectories: int = 0
    steps: int = 0
    failures: list[dict] = field(default_factory=list)
    move_counts: dict[str, int] = field(default_factory=dict)
    crossing_histogram: dict[int, int] = field(default_factory=dict)
    seconds: float = 0.0


def invariants(d):
    la = propagate_labels(d)
    return canonical_pair(j_polynomial(d, la)), abs(writhe_numbers(d, la)[2])


def run(cfg: FuzzConfig, name: str) -> FuzzResult:
    d = load(name)
    ref = invariants(d)
    res = FuzzResult(name, f"J={serialize(ref[0])}, |w2|={ref[1]}")
    kinds, sizes = Counter(), Counter()
    t = time.perf_counter()
    for k in range(cfg.trajectories):
        seed = cfg.seed + k
        for step, (mv, e) in enumerate(random_move_sequence(d, cfg.moves, seed, cfg.cap), 1):
            res.steps += 1
            kinds[type(mv).__name__] += 1
            sizes[e.n_crossings] += 1
            if invariants(e) != ref:
                log.error("%s seed=%d step=%d: %r changed the invariants", name, seed, step, mv)
                res.failures.append({"seed": seed, "step": step, "move": repr(mv)})
                break
        res.trajectories += 1
    res.seconds = time.perf_counter() - t
    res.move_counts = dict(kinds)
    res.crossing_histogram = dict(sorted(sizes.items()))
    return res


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("diagrams", nargs="*", default=None)
    ap.add_argument("--trajectories", type=int, default=FuzzConfig.trajectories)
    ap.add_argument("--moves", type=int, default=FuzzConfig.moves)
    ap.add_argument("--cap", type=int, default=FuzzConfig.cap)
    ap.add_argument("--seed", type=int, default=FuzzConfig.seed)
    ap.add_argument("--json", metavar="PATH", help="write per-diagram results as JSON")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = FuzzConfig(trajectories=args.trajectories, moves=args.moves, cap=args.cap, seed=args.seed)
    if args.diagrams:
        cfg.diagrams = args.diagrams
    results = []
    for name in cfg.diagrams:
        r = run(cfg, name)
        results.append(r)
        log.info("%s: %s; %d trajectories, %d moves, %d failures, %.1f s",
                 name, r.invariant, r.trajectories, r.steps, len(r.failures), r.seconds)
        log.info("    moves %s", r.move_counts)
        log.info("    crossings %s", r.crossing_histogram)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "results": [asdict(r) for r in results]}, fh, indent=2)
    raise SystemExit(1 if any(r.failures for r in results) else 0)


if __name__ == "__main__":
    main()
