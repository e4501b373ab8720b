"""Finite quivers, valued quivers and valued stable translation quivers.

Vertex labels are opaque strings. Every structure keeps its declaration order,
which makes text and DOT output byte-stable.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    AxiomViolation,
    DoubleArrow,
    NotBijective,
    OrbitNotClosed,
    ParseError,
    QuiverError,
    ResultNotTranslationQuiver,
    SizeLimitExceeded,
    ValuationMismatch,
)

ISOMORPHISM_VERTEX_CAP = 128


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex label")
        vs = set(self.vertices)
        ids = set()
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.id!r} has an endpoint outside the vertex set")
            if a.id in ids:
                raise QuiverError(f"duplicate arrow id {a.id!r}")
            ids.add(a.id)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple]) -> "Quiver":
        """Build from ``(src, dst)`` or ``(id, src, dst)`` tuples."""
        arrows = []
        for k, e in enumerate(edges):
            if len(e) == 2:
                arrows.append(Arrow(f"a{k}", e[0], e[1]))
            else:
                arrows.append(Arrow(*e))
        return cls(tuple(vertices), tuple(arrows))

    @property
    def quiver(self) -> "Quiver":
        return self

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise QuiverError(f"unknown arrow {arrow_id!r}")

    def arrows_between(self, x: str, y: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x and a.target == y]

    def successors(self, x: str) -> set[str]:
        return {a.target for a in self.arrows if a.source == x}

    def predecessors(self, x: str) -> set[str]:
        return {a.source for a in self.arrows if a.target == x}

    def arrow_counts(self) -> dict[tuple[str, str], int]:
        return dict(Counter((a.source, a.target) for a in self.arrows))

    def arrow_count_matrix(self) -> list[list[int]]:
        c = self.arrow_counts()
        return [[c.get((x, y), 0) for y in self.vertices] for x in self.vertices]

    def induced(self, keep: Iterable[str]) -> "Quiver":
        ks = set(keep)
        return Quiver(
            tuple(v for v in self.vertices if v in ks),
            tuple(a for a in self.arrows if a.source in ks and a.target in ks),
        )


@dataclass(frozen=True)
class ValuedQuiver:
    quiver: Quiver
    valuation: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        val = {a.id: int(self.valuation.get(a.id, 1)) for a in self.quiver.arrows}
        object.__setattr__(self, "valuation", val)
        seen = set()
        for a in self.quiver.arrows:
            key = (a.source, a.target)
            if key in seen:
                raise DoubleArrow(f"more than one arrow {a.source!r} -> {a.target!r}")
            seen.add(key)
        for aid, v in val.items():
            if v < 1:
                raise QuiverError(f"valuation of {aid!r} must be >= 1, got {v}")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def arrow_between(self, x: str, y: str) -> Arrow | None:
        for a in self.quiver.arrows:
            if a.source == x and a.target == y:
                return a
        return None


@dataclass(frozen=True)
class ValuedTranslationQuiver:
    """A validated valued stable translation quiver.

    Construct through :func:`build_translation_quiver`; ``sigma`` maps an arrow
    ``x -> y`` to the unique arrow ``tau(y) -> x``.
    """

    base: ValuedQuiver
    tau: Mapping[str, str]
    sigma: Mapping[str, str]

    @property
    def quiver(self) -> Quiver:
        return self.base.quiver

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.base.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.base.quiver.arrows

    @property
    def valuation(self) -> Mapping[str, int]:
        return self.base.valuation

    def tau_orbit(self, x: str) -> tuple[str, ...]:
        orbit = [x]
        y = self.tau[x]
        while y != x:
            orbit.append(y)
            y = self.tau[y]
        return tuple(orbit)

    def tau_orbits(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for v in self.vertices:
            if v not in seen:
                orb = self.tau_orbit(v)
                seen.update(orb)
                out.append(orb)
        return out


def build_translation_quiver(vq: ValuedQuiver, tau: Mapping[str, str]) -> ValuedTranslationQuiver:
    vs = vq.quiver.vertices
    vset = set(vs)
    if set(tau) != vset or set(tau.values()) != vset or len(set(tau.values())) != len(vs):
        raise NotBijective("tau must be a bijection on the vertex set")
    q = vq.quiver
    succ = defaultdict(set)
    pred = defaultdict(set)
    for a in q.arrows:
        succ[a.source].add(a.target)
        pred[a.target].add(a.source)
    for x in vs:
        if succ[tau[x]] != pred[x]:
            raise AxiomViolation(
                x, f"successors of tau({x})={sorted(succ[tau[x]])} but predecessors={sorted(pred[x])}"
            )
    by_ends = {(a.source, a.target): a for a in q.arrows}
    sigma = {}
    for a in q.arrows:
        partner = by_ends.get((tau[a.target], a.source))
        if partner is None:  # pragma: no cover - excluded by the axiom check
            raise AxiomViolation(a.target)
        if vq.valuation[partner.id] != vq.valuation[a.id]:
            raise ValuationMismatch(a.id)
        sigma[a.id] = partner.id
    return ValuedTranslationQuiver(vq, dict((v, tau[v]) for v in vs), sigma)


def translation_quiver(
    vertices: Iterable[str],
    arrows: Iterable[tuple],
    tau: Mapping[str, str] | None = None,
    valuation: Mapping[str, int] | None = None,
) -> ValuedTranslationQuiver:
    """Shorthand: arrows as ``(src, dst)`` or ``(id, src, dst)``; tau defaults to identity."""
    q = Quiver.from_edges(vertices, arrows)
    t = dict(tau) if tau is not None else {v: v for v in q.vertices}
    return build_translation_quiver(ValuedQuiver(q, dict(valuation or {})), t)


def detect_loops(q) -> set[str]:
    return {a.source for a in q.quiver.arrows if a.is_loop}


def detect_two_cycles(q) -> set[frozenset]:
    ends = {(a.source, a.target) for a in q.quiver.arrows if not a.is_loop}
    return {frozenset((x, y)) for (x, y) in ends if (y, x) in ends}


def remove_tau_orbits(tq: ValuedTranslationQuiver, orbits: Iterable[Iterable[str]]) -> ValuedTranslationQuiver:
    removed: set[str] = set()
    vset = set(tq.vertices)
    for orb in orbits:
        orb = list(orb)
        for v in orb:
            if v not in vset:
                raise QuiverError(f"unknown vertex {v!r}")
        oset = set(orb)
        for v in orb:
            if tq.tau[v] not in oset:
                raise OrbitNotClosed(v)
        removed |= oset
    if not removed:
        return tq
    keep = [v for v in tq.vertices if v not in removed]
    sub = tq.quiver.induced(keep)
    vq = ValuedQuiver(sub, {a.id: tq.valuation[a.id] for a in sub.arrows})
    try:
        return build_translation_quiver(vq, {v: tq.tau[v] for v in keep})
    except AxiomViolation as exc:  # pragma: no cover - removal of closed orbits keeps the axiom
        raise ResultNotTranslationQuiver(exc.vertex) from exc


def connected_components(q) -> list[tuple[str, ...]]:
    """Components of the underlying undirected graph.

    For translation quivers the tau-links count as edges as well, so a
    component is always tau-stable.
    """
    quiver = q.quiver
    parent = {v: v for v in quiver.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for a in quiver.arrows:
        union(a.source, a.target)
    tau = getattr(q, "tau", None)
    if tau:
        for x, y in tau.items():
            union(x, y)
    groups: dict[str, list[str]] = {}
    for v in quiver.vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(g) for g in groups.values()]


def _valued_adjacency(q) -> dict[tuple[str, str], tuple[int, ...]]:
    val = getattr(q, "valuation", None)
    adj: dict[tuple[str, str], list[int]] = defaultdict(list)
    for a in q.quiver.arrows:
        adj[(a.source, a.target)].append(val[a.id] if val else 1)
    return {k: tuple(sorted(v)) for k, v in adj.items()}


def quiver_isomorphic(a, b, cap: int = ISOMORPHISM_VERTEX_CAP) -> dict[str, str] | None:
    """A vertex bijection preserving arrows, valuations and tau, or ``None``.

    Works on plain quivers too (then only arrows are matched).
    """
    qa, qb = a.quiver, b.quiver
    if len(qa.vertices) > cap or len(qb.vertices) > cap:
        raise SizeLimitExceeded(f"isomorphism test limited to {cap} vertices")
    if len(qa.vertices) != len(qb.vertices) or len(qa.arrows) != len(qb.arrows):
        return None
    if len(detect_loops(a)) != len(detect_loops(b)):
        return None
    adj_a, adj_b = _valued_adjacency(a), _valued_adjacency(b)
    if sorted(adj_a.values()) != sorted(adj_b.values()):
        return None
    tau_a = getattr(a, "tau", None)
    tau_b = getattr(b, "tau", None)
    if (tau_a is None) != (tau_b is None):
        return None

    def signature(q, adj, tau, v):
        out = sorted((w, adj[(v, w)]) for (u, w) in adj if u == v and w != v)
        inn = sorted((u, adj[(u, v)]) for (u, w) in adj if w == v and u != v)
        orbit = 0
        if tau is not None:
            orbit, y = 1, tau[v]
            while y != v:
                orbit, y = orbit + 1, tau[y]
        return (
            tuple(sorted(x[1] for x in out)),
            tuple(sorted(x[1] for x in inn)),
            adj.get((v, v), ()),
            orbit,
            tau is not None and tau[v] == v,
        )

    sig_a = {v: signature(qa, adj_a, tau_a, v) for v in qa.vertices}
    sig_b = {v: signature(qb, adj_b, tau_b, v) for v in qb.vertices}
    if Counter(sig_a.values()) != Counter(sig_b.values()):
        return None

    # visit vertices of a in BFS order so neighbours are mapped early
    nbrs = defaultdict(set)
    for (u, w) in adj_a:
        nbrs[u].add(w)
        nbrs[w].add(u)
    if tau_a:
        for u, w in tau_a.items():
            nbrs[u].add(w)
            nbrs[w].add(u)
    order: list[str] = []
    seen: set[str] = set()
    for start in qa.vertices:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nbrs[v], key=qa.vertices.index):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w) -> bool:
        if sig_a[v] != sig_b[w]:
            return False
        if adj_a.get((v, v)) != adj_b.get((w, w)):
            return False
        for u, x in mapping.items():
            if adj_a.get((v, u)) != adj_b.get((w, x)) or adj_a.get((u, v)) != adj_b.get((x, w)):
                return False
        if tau_a is not None:
            tv, iv = tau_a[v], None
            if tv in mapping and mapping[tv] != tau_b[w]:
                return False
            for u, x in mapping.items():
                if tau_a[u] == v and tau_b[x] != w:
                    return False
            del iv
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in qb.vertices:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return {v: mapping[v] for v in qa.vertices}
    return None


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(q) -> str:
    """DOT digraph; tau is drawn as dashed edges ``x -> tau(x)``."""
    quiver = q.quiver
    val = getattr(q, "valuation", None)
    tau = getattr(q, "tau", None)
    lines = ["digraph {"]
    for v in quiver.vertices:
        lines.append(f"  {_quote(v)};")
    for a in quiver.arrows:
        label = str(val[a.id]) if val is not None else a.id
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [label={_quote(label)}];")
    if tau is not None:
        for v in quiver.vertices:
            lines.append(f"  {_quote(v)} -> {_quote(tau[v])} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tokens(line: str) -> list[str]:
    return line.split("#", 1)[0].split()


def parse_translation_quiver(text: str, source: str | None = None) -> ValuedTranslationQuiver:
    """Parse the line-oriented ``vertex`` / ``arrow`` / ``tau`` format."""
    vertices: list[str] = []
    arrows: list[Arrow] = []
    valuation: dict[str, int] = {}
    tau: dict[str, str] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        tok = _tokens(raw)
        if not tok:
            continue
        kind = tok[0]
        if kind == "vertex" and len(tok) == 2:
            vertices.append(tok[1])
        elif kind == "arrow" and len(tok) in (4, 5):
            arrows.append(Arrow(tok[1], tok[2], tok[3]))
            if len(tok) == 5:
                try:
                    valuation[tok[1]] = int(tok[4])
                except ValueError:
                    raise ParseError(f"bad valuation {tok[4]!r}", n, source) from None
        elif kind == "tau" and len(tok) == 3:
            if tok[1] in tau:
                raise ParseError(f"tau({tok[1]}) given twice", n, source)
            tau[tok[1]] = tok[2]
        else:
            raise ParseError(f"cannot parse line {raw.strip()!r}", n, source)
    try:
        vq = ValuedQuiver(Quiver(tuple(vertices), tuple(arrows)), valuation)
    except QuiverError as exc:
        raise ParseError(str(exc), None, source) from exc
    return build_translation_quiver(vq, tau)


def format_translation_quiver(tq: ValuedTranslationQuiver, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines += [f"vertex {v}" for v in tq.vertices]
    for a in tq.arrows:
        v = tq.valuation[a.id]
        lines.append(f"arrow {a.id} {a.source} {a.target}" + (f" {v}" if v != 1 else ""))
    lines += [f"tau {v} {tq.tau[v]}" for v in tq.vertices]
    return "\n".join(lines) + "\n"
