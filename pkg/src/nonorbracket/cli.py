"""Command line interface.

    nonorbracket validate FILE...
    nonorbracket j [--labeling A|B] [--canonical] [--generalized] FILE...
    nonorbracket bracket FILE...
    nonorbracket cover FILE [-o OUT]
    nonorbracket writhe [--labeling A|B] FILE...
    nonorbracket fuzz [--trials N] [--moves N] [--seed S] [--max-crossings M] FILE...

Exit status: 0 on success, 1 for an invalid or ineligible diagram or a fuzz
failure, 2 for I/O and usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .cabling import CablingError, propagate_labels, writhe_numbers
from .laurent import JPoly, canonical_pair, serialize
from .statesum import classical_bracket, generalized_j, j_polynomial
from .surface import (
    Diagram,
    DiagramError,
    DiagramSyntaxError,
    diagram_to_json,
    parse_diagram_file,
    serialize_diagram,
)
from .transform import MoveError, double_cover, random_move_sequence

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class DomainError(Exception):
    """Reported with exit status 1."""


@dataclass
class RunConfig:
    command: str
    paths: list[str]
    format: str = "text"
    labeling: str = "A"
    canonical: bool = False
    generalized: bool = False
    moves: int = 20
    seed: int = 0
    trials: int = 100
    max_crossings: int = 16
    output: str | None = None


# ------------------------------------------------------------------ helpers

def _read(path: str) -> list[Diagram]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_diagram_file(text)
    except (DiagramSyntaxError, DiagramError) as exc:
        raise DomainError(f"{path}: {exc}") from None


def _diagrams(cfg: RunConfig) -> list[tuple[str, Diagram]]:
    out = []
    for path in cfg.paths:
        for i, d in enumerate(_read(path)):
            out.append((d.name or f"{path}#{i + 1}", d))
    return out


def format_gaussian(w: complex) -> str:
    """``2i``, ``3-i``, ``0``, ..."""
    re_, im = int(w.real), int(w.imag)
    if im == 0:
        return str(re_)
    mag = "" if abs(im) == 1 else str(abs(im))
    if re_ == 0:
        return f"{'-' if im < 0 else ''}{mag}i"
    return f"{re_}{'-' if im < 0 else '+'}{mag}i"


def _emit(cfg: RunConfig, items: list[tuple[str, str, object]], out) -> None:
    """Print ``(name, text, json_obj)`` items, prefixing names when there are several."""
    if cfg.format == "json":
        payload = [{"name": n, "value": j} for n, _, j in items]
        out.write(json.dumps(payload[0] if len(payload) == 1 else payload, sort_keys=True) + "\n")
        return
    for name, text, _ in items:
        out.write((f"{name}: {text}" if len(items) > 1 else text) + "\n")


def _poly_items(cfg: RunConfig, name: str, p) -> tuple[str, str, object]:
    return name, serialize(p, "text"), json.loads(serialize(p, "json"))


# ----------------------------------------------------------------- commands

def cmd_validate(cfg: RunConfig, out) -> int:
    status = EXIT_OK
    for path in cfg.paths:
        try:
            ds = _read(path)
        except DomainError as exc:
            out.write(f"INVALID {exc}\n")
            status = EXIT_DOMAIN
            continue
        out.write(f"OK {path}: {len(ds)} diagram{'s' if len(ds) != 1 else ''}\n")
    return status


def cmd_j(cfg: RunConfig, out) -> int:
    items = []
    for name, d in _diagrams(cfg):
        try:
            la = propagate_labels(d, cfg.labeling)
            p = generalized_j(d, la) if cfg.generalized else j_polynomial(d, la)
        except CablingError as exc:
            raise DomainError(f"{name}: J is defined for pseudo-classical knots only ({exc})") from None
        if cfg.canonical:
            p = canonical_pair(p)
        items.append(_poly_items(cfg, name, p))
    _emit(cfg, items, out)
    return EXIT_OK


def cmd_bracket(cfg: RunConfig, out) -> int:
    items = []
    for name, d in _diagrams(cfg):
        try:
            p = canonical_pair(classical_bracket(d))
        except CablingError as exc:
            raise DomainError(f"{name}: {exc}") from None
        items.append(_poly_items(cfg, name, p))
    _emit(cfg, items, out)
    return EXIT_OK


def cmd_cover(cfg: RunConfig, out) -> int:
    covers = []
    for name, d in _diagrams(cfg):
        try:
            covers.append(double_cover(d.with_name(name)))
        except ValueError as exc:
            raise DomainError(f"{name}: {exc}") from None
    if cfg.format == "json":
        text = json.dumps([diagram_to_json(c) for c in covers], sort_keys=True) + "\n"
    else:
        text = "".join(serialize_diagram(c) for c in covers)
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"{cfg.output}: {exc.strerror or exc}") from None
    else:
        out.write(text)
    return EXIT_OK


def cmd_writhe(cfg: RunConfig, out) -> int:
    items = []
    for name, d in _diagrams(cfg):
        try:
            w, w1, w2 = writhe_numbers(d, propagate_labels(d, cfg.labeling))
        except CablingError as exc:
            raise DomainError(f"{name}: {exc}") from None
        text = f"w={format_gaussian(w)}, w1={w1}, w2={w2}"
        items.append((name, text, {"w": [w1, w2], "w1": w1, "w2": w2, "abs_w2": abs(w2)}))
    _emit(cfg, items, out)
    return EXIT_OK


def _invariants(d: Diagram) -> tuple[JPoly, int]:
    la = propagate_labels(d, "A")
    _, _, w2 = writhe_numbers(d, la)
    return canonical_pair(j_polynomial(d, la)), abs(w2)


def cmd_fuzz(cfg: RunConfig, out) -> int:
    failures = 0
    export = []
    for name, d in _diagrams(cfg):
        try:
            ref = _invariants(d)
        except CablingError as exc:
            raise DomainError(f"{name}: J is defined for pseudo-classical knots only ({exc})") from None
        steps = 0
        for t in range(cfg.trials):
            seed = cfg.seed + t
            try:
                traj = random_move_sequence(d, cfg.moves, seed, cfg.max_crossings)
            except MoveError as exc:
                out.write(f"FAIL {name} seed={seed}: {exc}\n")
                failures += 1
                continue
            for k, (mv, e) in enumerate(traj):
                steps += 1
                if _invariants(e) != ref:
                    out.write(f"FAIL {name} seed={seed} step={k + 1}: {mv} changed J or |w2|\n")
                    failures += 1
                    break
            if cfg.output:
                export.append({"diagram": name, "seed": seed,
                               "steps": [{"move": repr(mv), "diagram": diagram_to_json(e)}
                                         for mv, e in traj]})
        out.write(f"{name}: {cfg.trials} trajectories, {steps} moves checked, "
                  f"J={serialize(ref[0])}, |w2|={ref[1]}\n")
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                json.dump(export, fh, sort_keys=True)
        except OSError as exc:
            raise OSError(f"{cfg.output}: {exc.strerror or exc}") from None
    out.write("fuzz: " + ("PASS" if not failures else f"FAIL ({failures} trajectories)") + "\n")
    return EXIT_OK if not failures else EXIT_DOMAIN


COMMANDS = {
    "validate": cmd_validate,
    "j": cmd_j,
    "bracket": cmd_bracket,
    "cover": cmd_cover,
    "writhe": cmd_writhe,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nonorbracket",
                                description="Bracket invariants of knots in thickened surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("paths", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--labeling", choices=("A", "B"), default="A")
    p.add_argument("--canonical", action="store_true", help="print the smaller of p(u), p(1/u)")
    p.add_argument("--generalized", action="store_true", help="homology-class refinement of J")
    p.add_argument("--moves", type=int, default=20, help="moves per fuzz trajectory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-crossings", type=int, default=16)
    p.add_argument("-o", "--output")
    return p


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(ns.command, ns.paths, ns.format, ns.labeling, ns.canonical, ns.generalized,
                     ns.moves, ns.seed, ns.trials, ns.max_crossings, ns.output)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_IO
    try:
        return COMMANDS[cfg.command](cfg, out)
    except DomainError as exc:
        sys.stderr.write(f"nonorbracket: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"nonorbracket: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
