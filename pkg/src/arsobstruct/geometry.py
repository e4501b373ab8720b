"""Geometric inputs: plane branch systems for cA_n germs and exceptional-curve
configurations of small resolutions.

Polynomial arithmetic is delegated to sympy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import sympy

from .errors import (
    EmptyConfiguration,
    GeometryError,
    NotMutuallyPrime,
    NotSingular,
    NotVanishingAtOrigin,
    ParseError,
    ZeroLinearPart,
)
from .quiver import Arrow, Quiver, connected_components

Z0, Z1 = sympy.symbols("z0 z1")
NORMAL_BUNDLES = ("(-1,-1)", "other", "unknown")


# ---------------------------------------------------------------- branch systems

def parse_polynomial(text: str, line: int | None = None, source: str | None = None) -> sympy.Poly:
    expr_text = text.replace("^", "**").replace("z_0", "z0").replace("z_1", "z1")
    try:
        expr = sympy.sympify(expr_text, locals={"z0": Z0, "z1": Z1}, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}", line, source) from None
    extra = expr.free_symbols - {Z0, Z1}
    if extra:
        raise ParseError(f"unexpected symbols {sorted(map(str, extra))} in {text!r}", line, source)
    try:
        return sympy.Poly(expr, Z0, Z1, domain="QQ")
    except sympy.PolynomialError as exc:
        raise ParseError(f"not a polynomial: {text!r} ({exc})", line, source) from None


@dataclass(frozen=True)
class BranchSystem:
    """Branches f_1, ..., f_n in z0, z1; the germ is g = f_1 ... f_n."""

    branches: tuple[sympy.Poly, ...]

    @classmethod
    def from_strings(cls, polys: Sequence[str]) -> "BranchSystem":
        return cls(tuple(parse_polynomial(p) for p in polys))

    @classmethod
    def parse(cls, text: str, source: str | None = None) -> "BranchSystem":
        polys = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                polys.append(parse_polynomial(line, n, source))
        return cls(tuple(polys))

    @property
    def product(self) -> sympy.Poly:
        g = sympy.Poly(1, Z0, Z1, domain="QQ")
        for f in self.branches:
            g = g * f
        return g

    def describe(self) -> list[str]:
        return [str(f.as_expr()) for f in self.branches]


@dataclass(frozen=True)
class CAnRecognition:
    n: int
    pairwise_coprime: bool
    transverse_node: bool
    small_resolution: bool

    @property
    def cA_index(self) -> int:
        return self.n - 1

    def to_json(self) -> dict:
        return {
            "branches": self.n,
            "pairwise_coprime": self.pairwise_coprime,
            "transverse_node": self.transverse_node,
            "small_resolution": self.small_resolution,
            "cA_index": self.cA_index,
        }


def _linear_part(f: sympy.Poly) -> tuple:
    return (f.coeff_monomial(Z0), f.coeff_monomial(Z1))


def _shares_branch(f: sympy.Poly, g: sympy.Poly) -> bool:
    """Common factor through the origin (a unit factor does not count)."""
    h = sympy.gcd(f, g)
    return h.total_degree() > 0 and h.eval({Z0: 0, Z1: 0}) == 0


def recognize_cAn(b: BranchSystem) -> CAnRecognition:
    fs = b.branches
    for i, f in enumerate(fs, 1):
        if f.is_zero or f.eval({Z0: 0, Z1: 0}) != 0:
            raise NotVanishingAtOrigin(i)
        if _linear_part(f) == (0, 0):
            raise ZeroLinearPart(i)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if _shares_branch(fs[i], fs[j]):
                raise NotMutuallyPrime(i + 1, j + 1)
    if len(fs) < 2:
        raise NotSingular(f"{len(fs)} smooth branch(es) give a smooth threefold germ")
    transverse = False
    if len(fs) == 2:
        (a, c), (d, e) = _linear_part(fs[0]), _linear_part(fs[1])
        transverse = a * e - c * d != 0
    return CAnRecognition(len(fs), True, transverse, True)


# ---------------------------------------------------------------- curve configurations

@dataclass(frozen=True)
class CurveConfiguration:
    curves: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = ()
    normal_bundle: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.curves)) != len(self.curves):
            raise GeometryError("duplicate curve name")
        known = set(self.curves)
        seen = set()
        edges = []
        for a, b in self.edges:
            if a not in known or b not in known:
                raise GeometryError(f"intersection {a}-{b} names an unknown curve")
            if a == b:
                raise GeometryError(f"curve {a} cannot meet itself")
            key = frozenset((a, b))
            if key not in seen:
                seen.add(key)
                edges.append((a, b))
        nb = {c: self.normal_bundle.get(c, "unknown") for c in self.curves}
        for c, tag in nb.items():
            if tag not in NORMAL_BUNDLES:
                raise GeometryError(f"unknown normal bundle tag {tag!r} for {c}")
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "normal_bundle", nb)

    @classmethod
    def parse(cls, text: str, source: str | None = None) -> "CurveConfiguration":
        curves, edges, nb = [], [], {}
        for n, raw in enumerate(text.splitlines(), 1):
            tok = raw.split("#", 1)[0].split()
            if not tok:
                continue
            if tok[0] == "curve" and len(tok) in (2, 3):
                curves.append(tok[1])
                if len(tok) == 3:
                    m = re.fullmatch(r"nb=(.+)", tok[2])
                    if not m or m.group(1) not in NORMAL_BUNDLES:
                        raise ParseError(f"bad normal bundle tag {tok[2]!r}", n, source)
                    nb[tok[1]] = m.group(1)
            elif tok[0] == "meet" and len(tok) == 3:
                edges.append((tok[1], tok[2]))
            else:
                raise ParseError(f"cannot parse line {raw.strip()!r}", n, source)
        try:
            return cls(tuple(curves), tuple(edges), nb)
        except GeometryError as exc:
            raise ParseError(str(exc), None, source) from None

    def intersection_graph(self) -> Quiver:
        return Quiver(self.curves, tuple(Arrow(f"{a}-{b}", a, b) for a, b in self.edges))


@dataclass(frozen=True)
class Skeleton:
    """Arrows every cluster-tilting quiver of the configuration must contain."""

    quiver: Quiver
    mandated: tuple[str, ...]
    undetermined: tuple[str, ...]  # curves whose loop status is unknown


def ct_quiver_skeleton(c: CurveConfiguration) -> Skeleton:
    arrows = []
    for a, b in c.edges:
        arrows += [Arrow(f"{a}>{b}", a, b), Arrow(f"{b}>{a}", b, a)]
    for curve in c.curves:
        if c.normal_bundle[curve] == "other":
            arrows.append(Arrow(f"loop:{curve}", curve, curve))
    q = Quiver(c.curves, tuple(arrows))
    unknown = tuple(x for x in c.curves if c.normal_bundle[x] == "unknown")
    return Skeleton(q, tuple(a.id for a in arrows), unknown)


@dataclass(frozen=True)
class CurveClassification:
    outcome: str  # "nodal" | "obstructed" | "undetermined"
    witness: dict | None = None
    reason: str = ""


def classify_curve_config(c: CurveConfiguration) -> CurveClassification:
    if not c.curves:
        raise EmptyConfiguration("no exceptional curves given")
    if len(connected_components(c.intersection_graph())) > 1:
        return CurveClassification("undetermined", None, "exceptional locus given as disconnected")
    if c.edges:
        a, b = c.edges[0]
        return CurveClassification("obstructed", {"kind": "two_cycle", "vertices": [a, b]},
                                   "intersecting curves force a 2-cycle")
    curve = c.curves[0]
    tag = c.normal_bundle[curve]
    if tag == "other":
        return CurveClassification("obstructed", {"kind": "loop", "vertices": [curve]},
                                   "normal bundle other than O(-1)+O(-1) forces a loop")
    if tag == "(-1,-1)":
        return CurveClassification("nodal", None, "single (-1,-1)-curve")
    return CurveClassification("undetermined", None, "normal bundle of the single curve unknown")
