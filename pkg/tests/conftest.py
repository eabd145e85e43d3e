import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nonorbracket.corpus import load, load_all
from nonorbracket.surface import Diagram
from nonorbracket.transform import random_move_sequence

settings.register_profile(
    "default", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile(
    "ci", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

KLEIN_SEEDS = {
    "d1": load("d1"),
    "d2": load("d2"),
    "d3": load("d3"),
    "d4": load("d4"),
    "vertical": Diagram.from_code("klein", ["r1 l1"], []),
    "trefoil": Diagram.from_code("klein", ["1 -2 3 -1 2 -3"], [1, 1, 1]),
}

TORUS_SEEDS = {
    "trefoil": Diagram.from_code("torus", ["1 -2 3 -1 2 -3"], [1, 1, 1]),
    "mirror": Diagram.from_code("torus", ["1 -2 3 -1 2 -3"], [-1, -1, -1]),
    "diagonal": Diagram.from_code("torus", ["r1 l1 t1 b1"], []),
    "meridian": Diagram.from_code("torus", ["t1 b1"], []),
}


def _grown(seeds, max_crossings):
    @st.composite
    def build(draw):
        start = seeds[draw(st.sampled_from(sorted(seeds)))]
        length = draw(st.integers(0, 8))
        seed = draw(st.integers(0, 2**31 - 1))
        traj = random_move_sequence(start, length, seed, max_crossings)
        return traj[-1][1] if traj else start
    return build()


def klein_knots(max_crossings: int = 9):
    """Random pseudo-classical knots on the Klein bottle, grown from seeds by moves."""
    return _grown(KLEIN_SEEDS, max_crossings)


def torus_knots(max_crossings: int = 9):
    return _grown(TORUS_SEEDS, max_crossings)


@pytest.fixture(scope="session")
def corpus():
    return load_all()


# ------------------------------------------------------- acceptance report

ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        parts = ACCEPTANCE[key]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")
