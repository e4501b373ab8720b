"""Shipped AR-quivers of odd-dimensional ADE singularity categories.

Entries live in a directory of ``<type>.tq`` translation-quiver files with a
``<type>.json`` metadata file each. The directory defaults to the packaged
data and can be overridden by ``ARSOBSTRUCT_CATALOGUE`` or an explicit path.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import ArsError, EvenDimension, OutOfCatalogue
from .quiver import (
    ValuedTranslationQuiver,
    connected_components,
    detect_loops,
    detect_two_cycles,
    parse_translation_quiver,
)

MAX_INDEX = {"A": 40, "D": 41}
E_RANGE = (6, 7, 8)
ENV_VAR = "ARSOBSTRUCT_CATALOGUE"


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    n: int

    def __post_init__(self):
        f, n = self.family, self.n
        ok = (f == "A" and n >= 1) or (f == "D" and n >= 4) or (f == "E" and n in E_RANGE)
        if not ok:
            raise OutOfCatalogue(f"{f}_{n} is not an ADE type")

    @classmethod
    def parse(cls, text: str) -> "ADEType":
        m = re.fullmatch(r"\s*([ADEade])\s*_?\s*\{?(\d+)\}?\s*", text)
        if not m:
            raise OutOfCatalogue(f"cannot read an ADE type from {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}"

    def __str__(self) -> str:
        return f"{self.family}_{self.n}"


def knoerrer_normalize(t: ADEType, d: int) -> tuple[ADEType, int]:
    """Odd dimensions share one singularity category; return the d = 1 representative."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if d % 2 == 0:
        raise EvenDimension(f"dimension {d} is even; only odd dimensions are covered")
    return t, 1


@dataclass(frozen=True)
class CatalogueEntry:
    type: ADEType
    ar_quiver: ValuedTranslationQuiver
    has_loop: bool
    indecomposable_count: int
    in_frakS: bool
    citations: dict = field(default_factory=dict)

    def tau_orbits(self) -> list[tuple[str, ...]]:
        return self.ar_quiver.tau_orbits()


def catalogue_dir(path: str | os.PathLike | None = None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("arsobstruct") / "data"))


def in_range(t: ADEType) -> bool:
    if t.family == "E":
        return t.n in E_RANGE
    return t.n <= MAX_INDEX[t.family]


def shipped_types() -> list[ADEType]:
    out = [ADEType("A", n) for n in range(1, MAX_INDEX["A"] + 1)]
    out += [ADEType("D", n) for n in range(4, MAX_INDEX["D"] + 1)]
    out += [ADEType("E", n) for n in E_RANGE]
    return out


@lru_cache(maxsize=None)
def _load(directory: str, name: str) -> CatalogueEntry:
    base = Path(directory)
    qpath, mpath = base / f"{name}.tq", base / f"{name}.json"
    if not qpath.exists() or not mpath.exists():
        raise OutOfCatalogue(f"no catalogue files for {name} in {base}")
    tq = parse_translation_quiver(qpath.read_text(), source=str(qpath))
    meta = json.loads(mpath.read_text())
    t = ADEType.parse(meta["type"])
    entry = CatalogueEntry(
        t, tq, bool(meta["has_loop"]), int(meta["indecomposable_count"]), bool(meta["in_frakS"]),
        dict(meta.get("citations", {})),
    )
    if entry.has_loop != bool(detect_loops(tq)):
        raise ArsError(f"{name}: has_loop metadata disagrees with the quiver")
    if any(v != 1 for v in tq.valuation.values()):
        raise ArsError(f"{name}: valuation different from 1")
    return entry


def get_entry(t: ADEType | str, path: str | os.PathLike | None = None) -> CatalogueEntry:
    if isinstance(t, str):
        t = ADEType.parse(t)
    if not in_range(t):
        raise OutOfCatalogue(f"{t} is outside the shipped range")
    return _load(str(catalogue_dir(path).resolve()), t.name)


@dataclass
class EntryReport:
    name: str
    passed: bool
    problems: list[str]
    checks: list[str]


def validate_catalogue(path: str | os.PathLike | None = None, types=None) -> list[EntryReport]:
    """Run the structural checks and the named reductions on every entry.

    Failures are collected in the report rather than raised.
    """
    from .mesh import is_reducible, reduce_ade  # local import: mesh depends on this module

    directory = catalogue_dir(path)
    reports = []
    for t in types or shipped_types():
        problems, checks = [], []
        try:
            entry = get_entry(t, directory)
            tq = entry.ar_quiver
            checks.append("translation axioms")
            if len(connected_components(tq)) != 1:
                problems.append("not connected")
            checks.append("connected")
            loops = bool(detect_loops(tq))
            if loops != (t.family == "A" and t.n % 2 == 0):
                problems.append(f"loop presence {loops} unexpected for {t}")
            checks.append("loops only for A_even")
            checks.append(f"2-cycles: {len(detect_two_cycles(tq))}")
            if entry.indecomposable_count != len(tq.vertices):
                problems.append("indecomposable_count differs from the vertex count")
            if is_reducible(t):
                target, _ = reduce_ade(t, directory)
                checks.append(f"reduces to {target}")
        except ArsError as exc:
            problems.append(f"{type(exc).__name__}: {exc}")
        reports.append(EntryReport(t.name, not problems, problems, checks))
    return reports
