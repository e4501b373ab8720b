"""Seeded random presentations: at most 4 vertices and 6 arrows, with monomial
and binomial relations."""

from __future__ import annotations

import random
from fractions import Fraction

from arsobstruct.errors import NotAdmissibleWithinCap
from arsobstruct.fields import QQ
from arsobstruct.path_algebra import AlgebraPresentation, instantiate
from arsobstruct.quiver import Arrow, Quiver


def _paths(arrows, length):
    out = [(a.id,) for a in arrows]
    ends = {a.id: (a.source, a.target) for a in arrows}
    for _ in range(length - 1):
        out = [p + (a.id,) for p in out for a in arrows if ends[p[-1]][1] == a.source]
    return out


def random_presentation(rng: random.Random, field=QQ) -> AlgebraPresentation:
    n = rng.randint(1, 4)
    vertices = [str(k + 1) for k in range(n)]
    m = rng.randint(1, 6)
    arrows = []
    for k in range(m):
        arrows.append(Arrow(f"a{k}", rng.choice(vertices), rng.choice(vertices)))
    ends = {a.id: (a.source, a.target) for a in arrows}
    candidates = _paths(arrows, 2) + _paths(arrows, 3)
    rng.shuffle(candidates)
    relations = []
    used = set()
    for p in candidates[: rng.randint(0, 8)]:
        if p in used:
            continue
        endpoints = (ends[p[0]][0], ends[p[-1]][1])
        partners = [q for q in candidates if q != p and q not in used
                    and (ends[q[0]][0], ends[q[-1]][1]) == endpoints]
        if partners and rng.random() < 0.4:
            q = rng.choice(partners)
            c = Fraction(rng.choice([1, -1, 2]))
            relations.append(((Fraction(1), p), (-c, q)))
            used |= {p, q}
        else:
            relations.append(((Fraction(1), p),))
            used.add(p)
    return AlgebraPresentation(Quiver(tuple(vertices), tuple(arrows)), tuple(relations), field)


def admissible_corpus(seed: int, count: int, cap: int = 10):
    """First ``count`` generated presentations that are admissible within ``cap``."""
    rng = random.Random(seed)
    out = []
    tried = 0
    while len(out) < count:
        tried += 1
        p = random_presentation(rng)
        try:
            out.append((p, instantiate(p, cap)))
        except NotAdmissibleWithinCap:
            continue
    return out, tried
