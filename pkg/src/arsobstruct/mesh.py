"""Mesh algebras of translation quivers and reductions by tau-orbit removal."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .catalogue import ADEType, get_entry
from .errors import OutOfCatalogue, ReductionMismatch, UnknownComponent
from .fields import QQ, Field
from .path_algebra import AlgebraPresentation
from .quiver import (
    Arrow,
    Quiver,
    ValuedTranslationQuiver,
    connected_components,
    quiver_isomorphic,
    remove_tau_orbits,
)


@dataclass(frozen=True)
class DoubledQuiver:
    """Each valued arrow ``a`` is replaced by ``a(a)`` parallel arrows ``a.1, a.2, ...``."""

    base: ValuedTranslationQuiver
    quiver: Quiver
    sigma: dict
    origin: dict  # expanded arrow id -> (base arrow id, copy index)


def double_quiver(tq: ValuedTranslationQuiver) -> DoubledQuiver:
    arrows, origin = [], {}
    for a in tq.arrows:
        for k in range(1, tq.valuation[a.id] + 1):
            aid = f"{a.id}.{k}"
            arrows.append(Arrow(aid, a.source, a.target))
            origin[aid] = (a.id, k)
    sigma = {aid: f"{tq.sigma[base]}.{k}" for aid, (base, k) in origin.items()}
    return DoubledQuiver(tq, Quiver(tq.vertices, tuple(arrows)), sigma, origin)


def mesh_presentation(tq: ValuedTranslationQuiver, field: Field = QQ) -> AlgebraPresentation:
    """Mesh algebra on the opposite of the doubled quiver.

    For each vertex ``v`` the relation is the sum over arrows ``a: x -> v`` of
    the path ``a^op * sigma(a)^op`` from ``v`` through ``x`` to ``tau(v)``.
    """
    dq = double_quiver(tq)
    op = Quiver(dq.quiver.vertices, tuple(Arrow(a.id, a.target, a.source) for a in dq.quiver.arrows))
    relations = []
    for v in op.vertices:
        terms = tuple((Fraction(1), (a.id, dq.sigma[a.id])) for a in dq.quiver.arrows if a.target == v)
        if terms:
            relations.append(terms)
    return AlgebraPresentation(op, tuple(relations), field)


# ---------------------------------------------------------------- reductions

@dataclass(frozen=True)
class ReductionStep:
    source: ADEType
    orbits: tuple[tuple[str, ...], ...]
    target: ADEType
    mapping: dict  # vertex bijection onto the catalogue target
    result: ValuedTranslationQuiver

    def to_json(self) -> dict:
        return {
            "from": str(self.source),
            "removed_orbits": [list(o) for o in self.orbits],
            "to": str(self.target),
        }


def reduction_orbits(t: ADEType) -> list[tuple[ADEType, tuple[tuple[str, ...], ...]]]:
    """The orbit removals for one type, as (target, orbits) stages."""
    if t.family == "D" and t.n % 2 == 1 and t.n >= 5:
        m = (t.n - 1) // 2
        orbits = tuple((str(2 * k), str(2 * k + 1)) for k in range(2 * m - 2))
        return [(ADEType("A", 3), orbits)]
    if t == ADEType("E", 6):
        return [(ADEType("A", 3), (("1", "2"), ("6",)))]
    e7 = (ADEType("D", 4), (("3", "4"), ("5", "6"), ("13", "14")))
    if t == ADEType("E", 7):
        return [e7]
    if t == ADEType("E", 8):
        return [(ADEType("E", 7), (("1", "2"),)), e7]
    raise OutOfCatalogue(f"no reduction is defined for {t}")


def is_reducible(t: ADEType) -> bool:
    return (t.family == "D" and t.n % 2 == 1 and t.n >= 5) or t.family == "E"


def reduce_ade(source: ADEType | str, catalogue: str | os.PathLike | None = None) -> tuple[ADEType, list[ReductionStep]]:
    if isinstance(source, str):
        source = ADEType.parse(source)
    current = get_entry(source, catalogue).ar_quiver
    stage_type = source
    steps = []
    for target, orbits in reduction_orbits(source):
        reduced = remove_tau_orbits(current, orbits)
        expected = get_entry(target, catalogue).ar_quiver
        mapping = quiver_isomorphic(reduced, expected)
        if mapping is None:
            raise ReductionMismatch(f"{stage_type} minus {orbits} is not the AR-quiver of {target}")
        steps.append(ReductionStep(stage_type, orbits, target, mapping, reduced))
        current, stage_type = reduced, target
    return stage_type, steps


def drop_components(tq: ValuedTranslationQuiver, keep: Iterable) -> ValuedTranslationQuiver:
    """Restrict to the chosen components, given by index or by a member vertex."""
    comps = connected_components(tq)
    chosen = set()
    for sel in keep:
        if isinstance(sel, int):
            if not 0 <= sel < len(comps):
                raise UnknownComponent(f"no component with index {sel}")
            chosen.add(sel)
        else:
            hit = [k for k, c in enumerate(comps) if sel in c]
            if not hit:
                raise UnknownComponent(f"no component contains {sel!r}")
            chosen.add(hit[0])
    drop = [c for k, c in enumerate(comps) if k not in chosen]
    return remove_tau_orbits(tq, drop)
