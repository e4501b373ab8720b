"""Path algebras of finite quivers modulo admissible ideals.

Composition is diagrammatic: ``p*q`` traverses ``p`` first, then ``q``. A
path is stored as ``(source_vertex, arrow_ids)``; the trivial path at ``v`` is
``(v, ())``.

Ideals generated by length-homogeneous relations are handled degree by degree,
which never materialises the (possibly exponential) set of all paths. Other
relations are treated in the arrow-adically complete path algebra: the ideal
is computed modulo ``rad^L`` for increasing ``L``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    BasisMismatch,
    FieldError,
    FieldMismatch,
    MixedEndpointsInRelation,
    NonComposablePath,
    NotAdmissibleWithinCap,
    ParseError,
    QuiverError,
    RelationTooShort,
    UnknownArrow,
)
from .fields import QQ, Field, field_from_spec
from .quiver import Arrow, Quiver, ValuedQuiver

DEFAULT_LENGTH_CAP = 32
# number of paths allowed in the dense computation for non-homogeneous relations
PATH_BUDGET = 4000
# candidate paths allowed in a single degree of the graded computation
LEVEL_BUDGET = 5000

Path = tuple[str, tuple[str, ...]]
Term = tuple[Fraction, tuple[str, ...]]


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[tuple[Term, ...], ...] = ()
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        arrows = {a.id: a for a in self.quiver.arrows}
        for rel in self.relations:
            ends = set()
            for coef, path in rel:
                if len(path) < 2:
                    raise RelationTooShort(f"relation term {'*'.join(path) or '1'!r} has length < 2")
                for aid in path:
                    if aid not in arrows:
                        raise UnknownArrow(f"unknown arrow {aid!r}")
                for a, b in zip(path, path[1:]):
                    if arrows[a].target != arrows[b].source:
                        raise NonComposablePath(f"{a}*{b} is not composable")
                ends.add((arrows[path[0]].source, arrows[path[-1]].target))
            if len(ends) > 1:
                raise MixedEndpointsInRelation("relation terms have different endpoints")

    def arrow(self, aid: str) -> Arrow:
        return self.quiver.arrow(aid)

    @property
    def is_homogeneous(self) -> bool:
        return all(len({len(p) for _, p in rel}) <= 1 for rel in self.relations)

    def with_field(self, F: Field) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, self.relations, F)


def path_source(q: Quiver, path: Path) -> str:
    return path[0]


def path_target(q: Quiver, path: Path) -> str:
    return q.arrow(path[1][-1]).target if path[1] else path[0]


def format_path(path: Path) -> str:
    return "*".join(path[1]) if path[1] else f"e_{path[0]}"


# ---------------------------------------------------------------- parsing

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?(?=\s|\*))?\s*\*?\s*(?P<path>[^\s*+-][^\s*]*(?:\s*\*\s*[^\s*+-][^\s*]*)*)"
)


def _parse_relation(body: str, line: int, source: str | None) -> list[Term]:
    terms: list[Term] = []
    pos = 0
    body = body.strip()
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse relation term at {body[pos:]!r}", line, source)
        if terms and m.group("sign") is None:
            raise ParseError(f"missing '+' or '-' before {body[pos:]!r}", line, source)
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        path = tuple(p.strip() for p in m.group("path").split("*"))
        terms.append((coef, path))
        pos = m.end()
        while pos < len(body) and body[pos].isspace():
            pos += 1
    if not terms:
        raise ParseError("empty relation", line, source)
    return terms


def parse_presentation(text: str, source: str | None = None) -> AlgebraPresentation:
    """Parse the ``field`` / ``vertex`` / ``arrow`` / ``relation`` format."""
    F: Field = QQ
    vertices: list[str] = []
    arrows: list[Arrow] = []
    raw_relations: list[tuple[int, list[Term]]] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        tok = rest.split()
        if kw == "field":
            try:
                F = field_from_spec(rest)
            except FieldError as exc:
                raise ParseError(str(exc), n, source) from None
        elif kw == "vertex" and tok:
            vertices.extend(tok)
        elif kw == "arrow" and len(tok) == 3:
            arrows.append(Arrow(*tok))
        elif kw == "relation" and tok:
            raw_relations.append((n, _parse_relation(rest, n, source)))
        else:
            raise ParseError(f"cannot parse line {raw.strip()!r}", n, source)
    try:
        q = Quiver(tuple(vertices), tuple(arrows))
    except QuiverError as exc:
        raise ParseError(str(exc), None, source) from None
    ids = {a.id: a for a in arrows}
    relations = []
    for n, terms in raw_relations:
        combined: dict[tuple[str, ...], Fraction] = {}
        ends = set()
        for coef, path in terms:
            for aid in path:
                if aid not in ids:
                    raise UnknownArrow(f"unknown arrow {aid!r}", n, source)
            for a, b in zip(path, path[1:]):
                if ids[a].target != ids[b].source:
                    raise NonComposablePath(f"{a}*{b} is not composable", n, source)
            if len(path) < 2:
                raise RelationTooShort(f"term {'*'.join(path)!r} has length < 2", n, source)
            ends.add((ids[path[0]].source, ids[path[-1]].target))
            combined[path] = combined.get(path, Fraction(0)) + coef
        if len(ends) > 1:
            raise MixedEndpointsInRelation("relation terms have different endpoints", n, source)
        relations.append(tuple((c, p) for p, c in combined.items() if c))
    return AlgebraPresentation(q, tuple(r for r in relations if r), F)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_presentation(p: AlgebraPresentation) -> str:
    F = p.field
    lines = ["field Q" if F.characteristic == 0 else f"field F {F.characteristic}"]
    lines.append("vertex " + " ".join(p.quiver.vertices))
    lines += [f"arrow {a.id} {a.source} {a.target}" for a in p.quiver.arrows]
    for rel in p.relations:
        parts = []
        for k, (c, path) in enumerate(rel):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = ("" if mag == 1 else _format_coef(mag) + " ") + "*".join(path)
            parts.append(body if k == 0 and sign == "+" else f"{sign} {body}")
        lines.append("relation " + " ".join(parts))
    return "\n".join(lines) + "\n"


def opposite(p: AlgebraPresentation) -> AlgebraPresentation:
    """Presentation of the opposite algebra: arrows and relation paths reversed."""
    q = Quiver(p.quiver.vertices, tuple(Arrow(a.id, a.target, a.source) for a in p.quiver.arrows))
    rels = tuple(tuple((c, tuple(reversed(path))) for c, path in rel) for rel in p.relations)
    return AlgebraPresentation(q, rels, p.field)


# ---------------------------------------------------------------- instances

Sparse = dict[int, object]


@dataclass(frozen=True, eq=False)
class AlgebraInstance:
    """A finite-dimensional quotient with a normal-form basis of paths.

    ``rmul[i][arrow]`` is the normal form of ``basis[i] * arrow`` as a sparse
    vector over the basis.
    """

    presentation: AlgebraPresentation
    field: Field
    basis: tuple[Path, ...]
    rmul: tuple[dict[str, Sparse], ...]
    nilpotency: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.presentation.quiver.vertices

    def index(self, path: Path) -> int:
        idx = self._cache.get("index")
        if idx is None:
            idx = {b: k for k, b in enumerate(self.basis)}
            self._cache["index"] = idx
        return idx[path]

    def source(self, i: int) -> str:
        return self.basis[i][0]

    def target(self, i: int) -> str:
        return path_target(self.quiver, self.basis[i])

    def length(self, i: int) -> int:
        return len(self.basis[i][1])

    def basis_between(self, x: str, y: str) -> list[int]:
        """Indices of basis paths from ``x`` to ``y``."""
        return [i for i in range(self.dim) if self.source(i) == x and self.target(i) == y]

    def basis_from(self, x: str) -> list[int]:
        return [i for i in range(self.dim) if self.source(i) == x]

    def basis_to(self, y: str) -> list[int]:
        return [i for i in range(self.dim) if self.target(i) == y]

    def idempotent(self, v: str) -> int:
        return self.index((v, ()))

    def times_arrow(self, vec: Sparse, aid: str) -> Sparse:
        out: Sparse = {}
        norm = self.field.norm
        for i, c in vec.items():
            for j, d in self.rmul[i].get(aid, {}).items():
                out[j] = norm(out.get(j, 0) + c * d)
        return {k: v for k, v in out.items() if v}

    def times_path(self, vec: Sparse, arrows: Sequence[str]) -> Sparse:
        for aid in arrows:
            if not vec:
                break
            vec = self.times_arrow(vec, aid)
        return vec

    def mul_basis(self, i: int, j: int) -> Sparse:
        key = ("mul", i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.target(i) != self.source(j):
            res: Sparse = {}
        else:
            res = self.times_path({i: self.field.one}, self.basis[j][1])
        self._cache[key] = res
        return res

    def path_element(self, path: Sequence[str] | Path) -> Sparse:
        """Normal form of a path given as arrow ids (or as a ``Path``)."""
        if isinstance(path, tuple) and len(path) == 2 and isinstance(path[1], tuple):
            src, arrows = path
        else:
            arrows = tuple(path)
            if not arrows:
                raise BasisMismatch("empty arrow sequence; use idempotent()")
            src = self.quiver.arrow(arrows[0]).source
        return self.times_path({self.idempotent(src): self.field.one}, arrows)

    def vector(self, sparse: Sparse) -> list:
        v = [self.field.zero] * self.dim
        for k, c in sparse.items():
            v[k] = c
        return v


def _path_key(q: Quiver, path: Path):
    order = q.__dict__.setdefault("_arrow_order", {a.id: k for k, a in enumerate(q.arrows)})
    if not path[1]:
        return (0, (q.vertices.index(path[0]),))
    return (len(path[1]), tuple(order[a] for a in path[1]))


def _coerce_relations(p: AlgebraPresentation, F: Field) -> list[list[tuple[object, tuple[str, ...]]]]:
    out = []
    for rel in p.relations:
        terms = []
        for c, path in rel:
            try:
                x = F(c)
            except FieldError as exc:
                raise FieldMismatch(str(exc)) from None
            if x:
                terms.append((x, path))
        if terms:
            out.append(terms)
    return out


def instantiate(p: AlgebraPresentation, length_cap: int = DEFAULT_LENGTH_CAP, field: Field | None = None) -> AlgebraInstance:
    if length_cap < 1:
        raise ValueError("length_cap must be positive")
    F = field or p.field
    rels = _coerce_relations(p, F)
    if all(len({len(path) for _, path in r}) == 1 for r in rels):
        return _instantiate_graded(p, F, rels, length_cap)
    return _instantiate_filtered(p, F, rels, length_cap)


def _instantiate_graded(p, F: Field, rels, cap: int) -> AlgebraInstance:
    q = p.quiver
    arrows_from: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        arrows_from[a.source].append(a)
    basis: list[Path] = [(v, ()) for v in q.vertices]
    target = {b: b[0] for b in basis}
    rmul: list[dict[str, Sparse]] = [{} for _ in basis]
    levels: list[list[int]] = [list(range(len(basis)))]
    rel_by_len: dict[int, list] = {}
    for r in rels:
        rel_by_len.setdefault(len(r[0][1]), []).append(r)

    def walk(vec: Sparse, arrows: Sequence[str]) -> Sparse:
        norm = F.norm
        for aid in arrows:
            nxt: Sparse = {}
            for i, c in vec.items():
                for j, d in rmul[i].get(aid, {}).items():
                    nxt[j] = norm(nxt.get(j, 0) + c * d)
            vec = {k: x for k, x in nxt.items() if x}
        return vec

    ell = 0
    while True:
        ell += 1
        prev = levels[ell - 1]
        cands = [(b, a.id) for b in prev for a in arrows_from[target[basis[b]]]]
        if len(cands) > LEVEL_BUDGET:
            raise NotAdmissibleWithinCap(
                cap, f"degree {ell} has {len(cands)} candidate paths (budget {LEVEL_BUDGET}); "
                     "admissibility not certified")
        cands.sort(key=lambda c: _path_key(q, (basis[c[0]][0], basis[c[0]][1] + (c[1],))))
        col = {c: k for k, c in enumerate(cands)}
        rows = []
        for m, rs in rel_by_len.items():
            if m > ell:
                continue
            for r in rs:
                src = q.arrow(r[0][1][0]).source
                for u in levels[ell - m]:
                    if target[basis[u]] != src:
                        continue
                    row: Sparse = {}
                    for c, path in r:
                        vec = walk({u: F.one}, path[:-1])
                        for b, x in vec.items():
                            k = col[(b, path[-1])]
                            row[k] = F.norm(row.get(k, 0) + c * x)
                    rows.append(row)
        red, pivots = linalg.sparse_rref(rows, F)
        pivset = set(pivots)
        new_idx = {}
        level = []
        for k, (b, aid) in enumerate(cands):
            if k not in pivset:
                path = (basis[b][0], basis[b][1] + (aid,))
                new_idx[k] = len(basis)
                level.append(len(basis))
                basis.append(path)
                target[path] = q.arrow(aid).target
                rmul.append({})
        for k, (b, aid) in enumerate(cands):
            if k in new_idx:
                rmul[b][aid] = {new_idx[k]: F.one}
        for row, pc in zip(red, pivots):
            b, aid = cands[pc]
            rmul[b][aid] = {new_idx[j]: F.norm(-x) for j, x in row.items() if j != pc}
        if not level:
            return AlgebraInstance(p, F, tuple(basis), tuple(rmul), ell)
        if ell >= cap:
            raise NotAdmissibleWithinCap(cap)
        levels.append(level)


def _all_paths(q: Quiver, max_len: int) -> list[Path]:
    out: list[Path] = [(v, ()) for v in q.vertices]
    frontier = list(out)
    arrows_from: dict[str, list[Arrow]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        arrows_from[a.source].append(a)
    for _ in range(max_len):
        nxt = []
        for pth in frontier:
            for a in arrows_from[path_target(q, pth)]:
                nxt.append((pth[0], pth[1] + (a.id,)))
        out.extend(nxt)
        frontier = nxt
        if len(out) > PATH_BUDGET:
            raise NotAdmissibleWithinCap(
                max_len, f"more than {PATH_BUDGET} paths of length <= {max_len}; admissibility not certified")
    out.sort(key=lambda pth: _path_key(q, pth))
    return out


def _ideal_rows(q: Quiver, F: Field, rels, paths: list[Path], max_len: int) -> list[Sparse]:
    """Spanning rows of the ideal truncated to paths of length <= max_len."""
    col = {pth: k for k, pth in enumerate(paths)}
    by_target: dict[tuple[str, int], list[Path]] = {}
    by_source: dict[tuple[str, int], list[Path]] = {}
    for pth in paths:
        by_target.setdefault((path_target(q, pth), len(pth[1])), []).append(pth)
        by_source.setdefault((pth[0], len(pth[1])), []).append(pth)
    rows = []
    for r in rels:
        lo = min(len(path) for _, path in r)
        src = q.arrow(r[0][1][0]).source
        dst = q.arrow(r[0][1][-1]).target
        for i in range(max_len - lo + 1):
            for j in range(max_len - lo - i + 1):
                for u in by_target.get((src, i), ()):
                    for v in by_source.get((dst, j), ()):
                        row: Sparse = {}
                        for c, path in r:
                            full = u[1] + path + v[1]
                            if len(full) <= max_len:
                                k = col[(u[0], full)]
                                row[k] = F.norm(row.get(k, 0) + c)
                        rows.append(row)
    return rows


def _instantiate_filtered(p, F: Field, rels, cap: int) -> AlgebraInstance:
    q = p.quiver
    for L in range(1, cap + 1):
        paths = _all_paths(q, L)
        n_top = sum(1 for pth in paths if len(pth[1]) == L)
        rows = _ideal_rows(q, F, rels, paths, L)
        _, piv = linalg.sparse_rref(rows, F)
        top_start = len(paths) - n_top
        if sum(1 for c in piv if c >= top_start) == n_top:
            break
    else:
        raise NotAdmissibleWithinCap(cap)
    paths = [pth for pth in paths if len(pth[1]) < L]
    rows = _ideal_rows(q, F, rels, paths, L - 1)
    red, piv = linalg.sparse_rref(rows, F)
    pivset = set(piv)
    keep = [k for k in range(len(paths)) if k not in pivset]
    new_idx = {k: n for n, k in enumerate(keep)}
    col = {pth: k for k, pth in enumerate(paths)}
    pivot_row = dict(zip(piv, red))

    def reduce(k: int) -> Sparse:
        if k in new_idx:
            return {new_idx[k]: F.one}
        row = pivot_row[k]
        return {new_idx[j]: F.norm(-x) for j, x in row.items() if j != k}

    basis = tuple(paths[k] for k in keep)
    rmul: list[dict[str, Sparse]] = []
    for b in basis:
        table: dict[str, Sparse] = {}
        for a in q.arrows:
            if a.source != path_target(q, b):
                continue
            ext = (b[0], b[1] + (a.id,))
            table[a.id] = reduce(col[ext]) if ext in col else {}
        rmul.append(table)
    return AlgebraInstance(p, F, basis, tuple(rmul), L)


# ---------------------------------------------------------------- operations

def _as_sparse(a: AlgebraInstance, u) -> Sparse:
    if isinstance(u, dict):
        if any(not (0 <= k < a.dim) for k in u):
            raise BasisMismatch("element index outside the basis")
        return u
    if len(u) != a.dim:
        raise BasisMismatch(f"element has {len(u)} coordinates, basis has {a.dim}")
    return {k: c for k, c in enumerate(u) if c}


def multiply(a: AlgebraInstance, u, v):
    """Product ``u*v`` (u first). Dense lists in, dense list out; dicts stay sparse."""
    su, sv = _as_sparse(a, u), _as_sparse(a, v)
    out: Sparse = {}
    norm = a.field.norm
    for i, x in su.items():
        for j, y in sv.items():
            for k, z in a.mul_basis(i, j).items():
                out[k] = norm(out.get(k, 0) + x * y * z)
    out = {k: c for k, c in out.items() if c}
    if isinstance(u, dict) and isinstance(v, dict):
        return out
    return a.vector(out)


def radical_power_dims(a: AlgebraInstance) -> list[int]:
    lengths = [a.length(i) for i in range(a.dim)]
    return [sum(1 for x in lengths if x >= k) for k in range(a.nilpotency + 1)]


def quiver_of_algebra(a: AlgebraInstance) -> ValuedQuiver:
    """Gabriel quiver: valuation on x -> y is dim e_x rad e_y / e_x rad^2 e_y."""
    counts: dict[tuple[str, str], int] = {}
    for i in range(a.dim):
        if a.length(i) == 1:
            key = (a.source(i), a.target(i))
            counts[key] = counts.get(key, 0) + 1
    arrows = []
    val = {}
    for x in a.vertices:
        for y in a.vertices:
            if (x, y) in counts:
                aid = f"{x}->{y}"
                arrows.append(Arrow(aid, x, y))
                val[aid] = counts[(x, y)]
    return ValuedQuiver(Quiver(a.vertices, tuple(arrows)), val)


def arrow_count_matrix(q: Quiver) -> list[list[int]]:
    return q.arrow_count_matrix()


def is_associative_on_basis(a: AlgebraInstance, indices: Iterable[int] | None = None) -> bool:
    idx = list(range(a.dim)) if indices is None else list(indices)
    for i in idx:
        for j in idx:
            ij = a.mul_basis(i, j)
            for k in idx:
                left = multiply(a, ij, {k: a.field.one})
                right = multiply(a, {i: a.field.one}, a.mul_basis(j, k))
                if left != right:
                    return False
    return True
