"""Modules over an :class:`AlgebraInstance` as quiver representations.

Modules are right modules. An arrow ``a: x -> y`` acts by a matrix of shape
``dim M_y x dim M_x`` on column vectors, so the path ``a*b`` acts by
``M(b) @ M(a)``. With this convention ``P_x = e_x A`` and
``dim Ext^1(S_x, S_y)`` equals the number of arrows ``x -> y``.

A morphism ``M -> N`` is a dict mapping each vertex ``x`` to a matrix of shape
``dim N_x x dim M_x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import linalg
from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    GorensteinUnverified,
    ParseError,
    RepresentationError,
    UnknownVertex,
)
from .fields import Field
from .path_algebra import AlgebraInstance, format_path, instantiate, opposite
from .quiver import Arrow, Quiver, ValuedQuiver, ValuedTranslationQuiver, build_translation_quiver

Matrix = list[list]
Morphism = dict[str, Matrix]

ENUMERATION_BUDGET = 10**6
END_ENUMERATION_BUDGET = 2**20
DEFAULT_HOMOLOGICAL_CAP = 8


@dataclass(frozen=True)
class AtLeast:
    """A homological dimension known only to be at least ``n``."""

    n: int

    def __str__(self) -> str:
        return f">={self.n}"


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: AlgebraInstance
    dims: Mapping[str, int]
    maps: Mapping[str, Matrix]
    # internal constructions (sums, kernels, projectives) satisfy the relations by design
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        a = self.algebra
        dims = {v: int(self.dims.get(v, 0)) for v in a.vertices}
        for v in self.dims:
            if v not in dims:
                raise UnknownVertex(f"unknown vertex {v!r}")
        F = a.field
        maps = {}
        for arr in a.quiver.arrows:
            m = self.maps.get(arr.id)
            rows, cols = dims[arr.target], dims[arr.source]
            if m is None:
                m = linalg.zeros(rows, cols, F)
            m = [[F(x) for x in row] for row in m]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise RepresentationError(f"matrix of arrow {arr.id!r} has the wrong shape")
            maps[arr.id] = m
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        for rel in a.presentation.relations if self.check else ():
            if not linalg.is_zero(self._relation_matrix(rel)):
                raise RepresentationError("a relation does not vanish on the representation")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def path_matrix(self, arrows) -> Matrix:
        """Matrix of the path ``arrows[0]*arrows[1]*...`` (first arrow acts first)."""
        a = self.algebra
        F = a.field
        src = a.quiver.arrow(arrows[0]).source
        m = linalg.identity(self.dims[src], F)
        for aid in arrows:
            arr = a.quiver.arrow(aid)
            m = linalg.matmul(self.maps[aid], m, F, inner=self.dims[arr.source])
        return m

    def basis_matrix(self, i: int) -> Matrix:
        """Action of the basis path ``i`` of the algebra."""
        a = self.algebra
        path = a.basis[i]
        if not path[1]:
            return linalg.identity(self.dims[path[0]], a.field)
        return self.path_matrix(path[1])

    def _relation_matrix(self, rel) -> Matrix:
        a = self.algebra
        F = a.field
        first = a.quiver.arrow(rel[0][1][0])
        last = a.quiver.arrow(rel[0][1][-1])
        out = linalg.zeros(self.dims[last.target], self.dims[first.source], F)
        for c, path in rel:
            m = self.path_matrix(path)
            cf = F(c)
            out = [[F.norm(x + cf * y) for x, y in zip(r1, r2)] for r1, r2 in zip(out, m)]
        return out

    def is_zero(self) -> bool:
        return self.dim == 0

    def offsets(self) -> dict[str, int]:
        out, k = {}, 0
        for v in self.algebra.vertices:
            out[v] = k
            k += self.dims[v]
        return out

    def global_matrix(self, f: Morphism, target: "Representation") -> Matrix:
        """Block-diagonal matrix of a morphism ``self -> target``."""
        F = self.field
        g = linalg.zeros(target.dim, self.dim, F)
        ro, co = target.offsets(), self.offsets()
        for v in self.algebra.vertices:
            for i, row in enumerate(f[v]):
                for j, x in enumerate(row):
                    g[ro[v] + i][co[v] + j] = x
        return g

    def key(self) -> tuple:
        """Hashable coordinates (dimension vector plus all matrix entries)."""
        return (self.dim_vector(),) + tuple(
            tuple(tuple(r) for r in self.maps[a.id]) for a in self.algebra.quiver.arrows
        )


def _check_same(M: Representation, N: Representation) -> None:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules live over different algebra instances")


def zero_module(a: AlgebraInstance) -> Representation:
    return Representation(a, {}, {})


def direct_sum(a: AlgebraInstance, mods: Iterable[Representation]) -> Representation:
    mods = list(mods)
    for m in mods:
        if m.algebra is not a:
            raise AlgebraMismatch("summand over a different algebra")
    F = a.field
    dims = {v: sum(m.dims[v] for m in mods) for v in a.vertices}
    maps = {}
    for arr in a.quiver.arrows:
        big = linalg.zeros(dims[arr.target], dims[arr.source], F)
        r0 = c0 = 0
        for m in mods:
            for i, row in enumerate(m.maps[arr.id]):
                for j, x in enumerate(row):
                    big[r0 + i][c0 + j] = x
            r0 += m.dims[arr.target]
            c0 += m.dims[arr.source]
        maps[arr.id] = big
    return Representation(a, dims, maps, check=False)


# ---------------------------------------------------------------- standard modules

def _opposite_instance(a: AlgebraInstance) -> AlgebraInstance:
    op = a._cache.get("opposite")
    if op is None:
        op = instantiate(opposite(a.presentation), max(a.nilpotency, 2) + 1, field=a.field)
        op._cache["opposite"] = a
        a._cache["opposite"] = op
    return op


def dual(M: Representation, over: AlgebraInstance | None = None) -> Representation:
    """``D M = Hom_k(M, k)``, a module over the opposite algebra."""
    target = over or _opposite_instance(M.algebra)
    fixed = {}
    for arr in M.algebra.quiver.arrows:
        rows, cols = M.dims[arr.source], M.dims[arr.target]
        if rows and cols:
            fixed[arr.id] = linalg.transpose(M.maps[arr.id])
        else:
            fixed[arr.id] = linalg.zeros(rows, cols, M.field)
    return Representation(target, dict(M.dims), fixed)


def _projective(a: AlgebraInstance, v: str) -> Representation:
    key = ("projective", v)
    hit = a._cache.get(key)
    if hit is not None:
        return hit
    F = a.field
    at = {x: [i for i in a.basis_from(v) if a.target(i) == x] for x in a.vertices}
    pos = {i: k for x in a.vertices for k, i in enumerate(at[x])}
    maps = {}
    for arr in a.quiver.arrows:
        m = linalg.zeros(len(at[arr.target]), len(at[arr.source]), F)
        for col, b in enumerate(at[arr.source]):
            for j, c in a.rmul[b].get(arr.id, {}).items():
                m[pos[j]][col] = c
        maps[arr.id] = m
    P = Representation(a, {x: len(at[x]) for x in a.vertices}, maps, check=False)
    object.__setattr__(P, "_paths", at)
    a._cache[key] = P
    return P


def standard_module(a: AlgebraInstance, kind: str, vertex: str) -> Representation:
    if vertex not in a.vertices:
        raise UnknownVertex(f"unknown vertex {vertex!r}")
    if kind == "simple":
        return Representation(a, {vertex: 1}, {})
    if kind == "projective":
        return _projective(a, vertex)
    if kind == "injective":
        op = _opposite_instance(a)
        return dual(_projective(op, vertex), over=a)
    raise RepresentationError(f"unknown module kind {kind!r}")


def regular_module(a: AlgebraInstance) -> Representation:
    return direct_sum(a, [_projective(a, v) for v in a.vertices])


# ---------------------------------------------------------------- morphisms

def _unknown_layout(M: Representation, N: Representation) -> tuple[dict[str, int], int]:
    off, k = {}, 0
    for v in M.algebra.vertices:
        off[v] = k
        k += N.dims[v] * M.dims[v]
    return off, k


def _vec_to_morphism(M, N, vec, off) -> Morphism:
    f = {}
    for v in M.algebra.vertices:
        r, c = N.dims[v], M.dims[v]
        f[v] = [[vec[off[v] + i * c + j] for j in range(c)] for i in range(r)]
    return f


def morphism_vector(f: Morphism, vertices) -> list:
    return [x for v in vertices for row in f[v] for x in row]


def hom_space(M: Representation, N: Representation) -> list[Morphism]:
    """A basis of Hom(M, N)."""
    _check_same(M, N)
    a = M.algebra
    F = a.field
    off, n = _unknown_layout(M, N)
    rows = []
    for arr in a.quiver.arrows:
        s, t = arr.source, arr.target
        Nm, Mm = N.maps[arr.id], M.maps[arr.id]
        # N(a) f_s - f_t M(a) = 0, entrywise
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [F.zero] * n
                for k in range(N.dims[s]):
                    x = Nm[i][k]
                    if x:
                        idx = off[s] + k * M.dims[s] + j
                        row[idx] = F.norm(row[idx] + x)
                for k in range(M.dims[t]):
                    x = Mm[k][j]
                    if x:
                        idx = off[t] + i * M.dims[t] + k
                        row[idx] = F.norm(row[idx] - x)
                if any(row):
                    rows.append(row)
    basis = linalg.nullspace(rows, n, F) if n else []
    return [_vec_to_morphism(M, N, v, off) for v in basis]


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def compose(g: Morphism, f: Morphism, F: Field, middle: Representation | None = None) -> Morphism:
    """``g o f`` (apply ``f`` first)."""
    out = {}
    for v in f:
        inner = middle.dims[v] if middle is not None else None
        out[v] = linalg.matmul(g[v], f[v], F, inner=inner)
    return out


def _span_rank(vectors: list[list], F: Field) -> int:
    return linalg.rank(vectors, F) if vectors and vectors[0] else 0


def stable_hom(M: Representation, N: Representation) -> int:
    """dim of Hom(M, N) modulo maps factoring through a projective."""
    _check_same(M, N)
    homs = hom_space(M, N)
    if not homs:
        return 0
    cover = projective_cover(N)
    through = [compose(cover.map, g, M.field, cover.module) for g in hom_space(M, cover.module)]
    verts = M.algebra.vertices
    return len(homs) - _span_rank([morphism_vector(h, verts) for h in through], M.field)


# ---------------------------------------------------------------- covers, syzygies, resolutions

@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: Representation  # the projective P
    map: Morphism  # P -> M, surjective with kernel in rad P
    tops: tuple[str, ...]  # vertex of each indecomposable summand, in order


def radical_subspace(M: Representation, v: str) -> Matrix:
    """Spanning vectors (rows) of (rad M)_v."""
    a = M.algebra
    vecs = []
    for arr in a.quiver.arrows:
        if arr.target == v and M.dims[arr.source]:
            vecs.extend(linalg.transpose(M.maps[arr.id], M.dims[v]))
    return [list(x) for x in vecs]


def top_vectors(M: Representation) -> dict[str, list[list]]:
    F = M.field
    out = {}
    for v in M.algebra.vertices:
        rad = radical_subspace(M, v)
        out[v] = linalg.complement_basis(rad, M.dims[v], F) if M.dims[v] else []
    return out


def projective_cover(M: Representation) -> ProjectiveCover:
    a = M.algebra
    F = a.field
    tops = top_vectors(M)
    summands, gens = [], []
    for v in a.vertices:
        for vec in tops[v]:
            summands.append(_projective(a, v))
            gens.append((v, vec))
    P = direct_sum(a, summands)
    f: Morphism = {y: linalg.zeros(M.dims[y], P.dims[y], F) for y in a.vertices}
    col0 = {y: 0 for y in a.vertices}
    for (v, vec), Pv in zip(gens, summands):
        at = Pv._paths
        for y in a.vertices:
            for k, b in enumerate(at[y]):
                img = _act(M, a.basis[b], vec) if M.dims[y] else []
                for i, x in enumerate(img):
                    f[y][i][col0[y] + k] = x
            col0[y] += len(at[y])
    return ProjectiveCover(P, f, tuple(v for v, _ in gens))


def _act(M: Representation, path, vec: list) -> list:
    """Image of a vector at the source of ``path`` under the path action."""
    F = M.field
    for aid in path[1]:
        vec = linalg.matvec(M.maps[aid], vec, F)
    return vec


def kernel(f: Morphism, source: Representation) -> tuple[Representation, Morphism]:
    """Kernel submodule of ``f: source -> ?`` with its inclusion."""
    a = source.algebra
    F = a.field
    basis, free = {}, {}
    for v in a.vertices:
        n = source.dims[v]
        if n == 0:
            basis[v], free[v] = [], []
        elif not f[v]:
            basis[v], free[v] = linalg.identity(n, F), list(range(n))
        else:
            basis[v], free[v] = linalg.nullspace_free(f[v], n, F)
    dims = {v: len(basis[v]) for v in a.vertices}
    maps = {}
    for arr in a.quiver.arrows:
        s, t = arr.source, arr.target
        m = linalg.zeros(dims[t], dims[s], F)
        if dims[s] and dims[t]:
            for j, vec in enumerate(basis[s]):
                img = linalg.matvec(source.maps[arr.id], vec, F)
                # coordinates in the kernel basis sit at the free columns
                for i, c in enumerate(free[t]):
                    m[i][j] = img[c]
        maps[arr.id] = m
    K = Representation(a, dims, maps, check=False)
    inc = {v: linalg.transpose(basis[v], source.dims[v]) if basis[v] else linalg.zeros(source.dims[v], 0, F)
           for v in a.vertices}
    return K, inc


def syzygy(M: Representation) -> tuple[Representation, Morphism, ProjectiveCover]:
    cover = projective_cover(M)
    K, inc = kernel(cover.map, cover.module)
    return K, inc, cover


@dataclass(frozen=True, eq=False)
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M``.

    ``differentials[k]`` is ``d_{k+1}: P_{k+1} -> P_k``; ``syzygies[k]`` is
    ``Omega^{k+1} M`` with inclusion ``inclusions[k]`` into ``P_k``.
    """

    module: Representation
    projectives: tuple[Representation, ...]
    tops: tuple[tuple[str, ...], ...]
    augmentation: Morphism
    differentials: tuple[Morphism, ...]
    syzygies: tuple[Representation, ...]
    inclusions: tuple[Morphism, ...]
    terminated: bool

    @property
    def length(self) -> int | None:
        """Projective dimension if the resolution terminated within the degree."""
        if not self.terminated:
            return None
        return max(len(self.projectives) - 1, 0)

    def multiplicity(self, k: int, vertex: str) -> int:
        return self.tops[k].count(vertex) if k < len(self.tops) else 0

    def is_minimal(self) -> bool:
        """Every differential lands in the radical of its target."""
        a = self.module.algebra
        F = a.field
        for k, d in enumerate(self.differentials):
            src, dst = self.projectives[k + 1], self.projectives[k]
            if not _into_radical(d, src, dst, F):
                return False
        return True

    def is_exact(self) -> bool:
        F = self.module.field
        verts = self.module.algebra.vertices
        maps = [self.augmentation] + list(self.differentials)
        mods = [self.module] + list(self.projectives)
        for v in verts:
            ranks = [linalg.rank(m[v], F) if m[v] and m[v][0] else 0 for m in maps]
            if ranks[0] != self.module.dims[v]:
                return False
            for k in range(1, len(maps)):
                prod = linalg.matmul(maps[k - 1][v], maps[k][v], F, inner=mods[k].dims[v])
                if not linalg.is_zero(prod):
                    return False
                if ranks[k] != mods[k].dims[v] - ranks[k - 1]:
                    return False
            if self.terminated and self.projectives:
                last = len(maps) - 1
                kernel_dim = mods[last + 1].dims[v] - ranks[last] if last + 1 < len(mods) else 0
                if kernel_dim:
                    return False
        return True


def _into_radical(d: Morphism, src: Representation, dst: Representation, F: Field) -> bool:
    """Whether the image of ``d`` lies in rad(dst)."""
    for v in dst.algebra.vertices:
        if not src.dims[v] or not dst.dims[v]:
            continue
        rad = radical_subspace(dst, v)
        base = linalg.rank(rad, F) if rad else 0
        cols = linalg.transpose(d[v], src.dims[v])
        if linalg.rank(rad + cols, F) != base:
            return False
    return True


def minimal_projective_resolution(M: Representation, degree: int, dim_budget: int | None = None) -> Resolution:
    """Resolution up to ``P_degree`` (stops early once a syzygy vanishes).

    With ``dim_budget`` the computation also stops, unterminated, after the
    first syzygy whose dimension exceeds the budget.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    F = M.field
    projectives, tops, diffs, syz, incs = [], [], [], [], []
    augmentation: Morphism = {}
    current = M
    prev_inc = None
    terminated = M.is_zero()
    for k in range(degree + 1):
        if current.is_zero():
            terminated = True
            break
        K, inc, cover = syzygy(current)
        projectives.append(cover.module)
        tops.append(cover.tops)
        if k == 0:
            augmentation = cover.map
        else:
            diffs.append(compose(prev_inc, cover.map, F, current))
        syz.append(K)
        incs.append(inc)
        current, prev_inc = K, inc
        if dim_budget is not None and K.dim > dim_budget:
            break
    else:
        terminated = current.is_zero()
    if not augmentation:
        augmentation = {v: linalg.zeros(M.dims[v], 0, F) for v in M.algebra.vertices}
    return Resolution(M, tuple(projectives), tuple(tops), augmentation, tuple(diffs), tuple(syz), tuple(incs), terminated)


def _resolution(M: Representation, degree: int) -> Resolution:
    cache = M.__dict__.setdefault("_resolutions", {})
    best = None
    for d, r in cache.items():
        if d >= degree or r.terminated:
            best = r
            break
    if best is None:
        best = minimal_projective_resolution(M, degree)
        cache[degree] = best
    return best


def ext_dim(M: Representation, N: Representation, k: int) -> int:
    _check_same(M, N)
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return hom_dim(M, N)
    res = _resolution(M, k)
    if len(res.syzygies) < k or res.syzygies[k - 1].is_zero():
        return 0
    omega = res.syzygies[k - 1]
    inc = res.inclusions[k - 1]
    P = res.projectives[k - 1]
    homs = hom_space(omega, N)
    if not homs:
        return 0
    F = M.field
    restricted = [compose(f, inc, F, P) for f in hom_space(P, N)]
    verts = M.algebra.vertices
    return len(homs) - _span_rank([morphism_vector(h, verts) for h in restricted], F)


def simple_ext_matrix(a: AlgebraInstance, k: int = 1) -> list[list[int]]:
    """``[dim Ext^k(S_x, S_y)]`` read off the minimal resolutions of simples."""
    out = []
    for x in a.vertices:
        res = _resolution(standard_module(a, "simple", x), k)
        out.append([res.multiplicity(k, y) for y in a.vertices])
    return out


def projective_dimension(M: Representation, cap: int, dim_budget: int | None = None) -> int | AtLeast:
    """Exact value below ``cap``, else ``AtLeast(cap)``.

    ``dim_budget`` bounds the dimension of the syzygies computed; when it is
    exceeded the answer is the lower bound ``AtLeast(k)`` for the last
    syzygy ``Omega^k`` reached, which may be smaller than ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if M.is_zero():
        return 0
    if dim_budget is None:
        res = _resolution(M, cap - 1)
    else:
        res = minimal_projective_resolution(M, cap - 1, dim_budget)
    # syzygies[j-1] is Omega^j M; pdim = least j with Omega^{j+1} = 0
    for j, K in enumerate(res.syzygies):
        if K.is_zero():
            return j
    return AtLeast(min(cap, len(res.syzygies)))


def homological_dimension(a: AlgebraInstance, M: Representation, side: str = "projective",
                          cap: int = DEFAULT_HOMOLOGICAL_CAP) -> int | AtLeast:
    if M.algebra is not a:
        raise AlgebraMismatch("module over a different algebra")
    if side == "projective":
        return projective_dimension(M, cap)
    if side == "injective":
        return projective_dimension(dual(M), cap)
    raise RepresentationError(f"unknown side {side!r}")


@dataclass(frozen=True)
class GorensteinResult:
    gorenstein: bool
    left_idim: int | AtLeast
    right_idim: int | AtLeast

    def __bool__(self) -> bool:
        return self.gorenstein

    @property
    def dimension(self) -> int | None:
        if not self.gorenstein:
            return None
        return max(self.left_idim, self.right_idim)


def _max_dim(values) -> int | AtLeast:
    worst: int | AtLeast = 0
    for d in values:
        if isinstance(d, AtLeast):
            return d
        worst = max(worst, d)
    return worst


def is_gorenstein(a: AlgebraInstance, cap: int = DEFAULT_HOMOLOGICAL_CAP) -> GorensteinResult:
    """Injective dimension of the regular module on both sides.

    ``right_idim`` is idim of A as a right module, the maximum of pdim over the
    injective right modules; ``left_idim`` is the same over the opposite algebra.
    """
    key = ("gorenstein", cap)
    hit = a._cache.get(key)
    if hit is not None:
        return hit
    op = _opposite_instance(a)
    right = _max_dim(projective_dimension(standard_module(a, "injective", v), cap) for v in a.vertices)
    left = _max_dim(projective_dimension(standard_module(op, "injective", v), cap) for v in op.vertices)
    res = GorensteinResult(not isinstance(left, AtLeast) and not isinstance(right, AtLeast), left, right)
    a._cache[key] = res
    return res


@dataclass(frozen=True)
class GPCertificate:
    value: bool
    checked_degrees: tuple[int, ...]
    failing_degree: int | None = None

    def __bool__(self) -> bool:
        return self.value


def is_gorenstein_projective(a: AlgebraInstance, M: Representation, cap: int = DEFAULT_HOMOLOGICAL_CAP) -> GPCertificate:
    """Check Ext^i(M, A) = 0 for 1 <= i <= max(idim A, cap)."""
    if M.algebra is not a:
        raise AlgebraMismatch("module over a different algebra")
    g = is_gorenstein(a, cap + 1)
    if not g:
        raise GorensteinUnverified(f"injective dimension of the regular module exceeds {cap}")
    top = max(g.dimension, cap)
    projs = [_projective(a, v) for v in a.vertices]
    checked = []
    for i in range(1, top + 1):
        checked.append(i)
        if any(ext_dim(M, P, i) for P in projs):
            return GPCertificate(False, tuple(checked), i)
    return GPCertificate(True, tuple(checked))


def is_projective(M: Representation) -> bool:
    return projective_cover(M).module.dim == M.dim


# ---------------------------------------------------------------- endomorphisms over finite fields

def _global_endos(M: Representation) -> list[Matrix]:
    return [M.global_matrix(f, M) for f in hom_space(M, M)]


def _combinations(F: Field, n: int) -> Iterator[tuple]:
    return itertools.product(F.elements(), repeat=n)


def _combine(mats: list[Matrix], coefs, F: Field, size: int) -> Matrix:
    out = linalg.zeros(size, size, F)
    for c, m in zip(coefs, mats):
        if c:
            for i in range(size):
                row, src = out[i], m[i]
                for j in range(size):
                    if src[j]:
                        row[j] = F.norm(row[j] + c * src[j])
    return out


def endomorphism_structure(M: Representation, budget: int = END_ENUMERATION_BUDGET) -> tuple[bool, list[Matrix]]:
    """``(local, radical_basis)`` for End(M) over a finite field.

    End(M) is local iff each element is nilpotent or invertible; then the
    nilpotent elements form the radical.
    """
    F = M.field
    if not F.is_finite():
        raise RepresentationError("endomorphism enumeration needs a finite field")
    if M.is_zero():
        return False, []
    mats = _global_endos(M)
    if F.characteristic ** len(mats) > budget:
        raise BudgetExceeded(f"End has {F.characteristic}^{len(mats)} elements")
    n = M.dim
    nilpotent = []
    for coefs in _combinations(F, len(mats)):
        if not any(coefs):
            continue
        m = _combine(mats, coefs, F, n)
        if linalg.mat_power_is_zero(m, F):
            nilpotent.append(m)
        elif not linalg.is_invertible(m, F):
            return False, []
    flat = [[x for row in m for x in row] for m in nilpotent]
    rad = []
    if flat:
        r, _ = linalg.rref(flat, F)
        rad = [[row[i * n:(i + 1) * n] for i in range(n)] for row in r]
    return True, rad


def is_indecomposable(M: Representation, budget: int = END_ENUMERATION_BUDGET) -> bool:
    return endomorphism_structure(M, budget)[0]


def isomorphic_indecomposables(X: Representation, Y: Representation) -> bool:
    """Iso test for indecomposable X and Y (local endomorphism rings)."""
    _check_same(X, Y)
    if X.dim_vector() != Y.dim_vector():
        return False
    F = X.field
    fs, gs = hom_space(X, Y), hom_space(Y, X)
    for f in fs:
        for g in gs:
            m = X.global_matrix(compose(g, f, F, Y), X)
            if not linalg.mat_power_is_zero(m, F):
                return True
    return False


# ---------------------------------------------------------------- enumeration

def _field_instance(a: AlgebraInstance, F: Field | None) -> AlgebraInstance:
    if F is None or F == a.field:
        if not a.field.is_finite():
            raise RepresentationError("enumeration needs a finite field")
        return a
    cache = a._cache.setdefault("over_field", {})
    if F not in cache:
        cache[F] = instantiate(a.presentation, max(a.nilpotency, 1) + 1, field=F)
    return cache[F]


def _dimension_vectors(a: AlgebraInstance, bound) -> list[dict[str, int]]:
    if isinstance(bound, int):
        bound = {v: bound for v in a.vertices}
    elif not isinstance(bound, Mapping):
        bound = dict(zip(a.vertices, bound))
    ranges = [range(bound.get(v, 0) + 1) for v in a.vertices]
    out = []
    for dv in itertools.product(*ranges):
        if any(dv):
            out.append(dict(zip(a.vertices, dv)))
    out.sort(key=lambda d: (sum(d.values()), tuple(d[v] for v in a.vertices)))
    return out


def _gl(n: int, F: Field) -> list[Matrix]:
    mats = []
    for entries in _combinations(F, n * n):
        m = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if linalg.is_invertible(m, F):
            mats.append(m)
    return mats


def _conjugates(a: AlgebraInstance, dims, maps, F, gl) -> set[tuple]:
    """Keys of every representation isomorphic to ``maps`` with the same dims."""
    verts = a.vertices
    arrows = a.quiver.arrows
    inv = {}
    orbit = set()
    for choice in itertools.product(*(gl[dims[v]] for v in verts)):
        g = dict(zip(verts, choice))
        key = []
        for arr in arrows:
            gt = g[arr.target]
            gs_key = (arr.source, id(g[arr.source]))
            if gs_key not in inv:
                inv[gs_key] = linalg.inverse(g[arr.source], F) if dims[arr.source] else []
            m = maps[arr.id]
            if dims[arr.source] and dims[arr.target]:
                m = linalg.matmul(linalg.matmul(gt, m, F), inv[gs_key], F)
            key.append(tuple(tuple(r) for r in m))
        orbit.add(tuple(key))
    return orbit


def enumerate_indecomposables(a: AlgebraInstance, bound=2, field: Field | None = None,
                              budget: int = ENUMERATION_BUDGET) -> list[Representation]:
    """All indecomposables with dimension vector within ``bound``, up to isomorphism.

    Exhaustive over a finite field. Every isomorphism class is found once by
    marking the whole GL-orbit of each representation the first time it is met.
    """
    A = _field_instance(a, field)
    F = A.field
    q = F.characteristic
    arrows = A.quiver.arrows
    dvs = _dimension_vectors(A, bound)
    total = 0
    for d in dvs:
        total += q ** sum(d[x.source] * d[x.target] for x in arrows)
    if total > budget:
        raise BudgetExceeded(f"{total} matrix tuples exceed the budget of {budget}")
    gl_cache: dict[int, list[Matrix]] = {}
    # a relation can be checked once its last arrow (in declaration order) is assigned
    order = {x.id: k for k, x in enumerate(arrows)}
    rel_at: dict[int, list] = {}
    for rel in A.presentation.relations:
        last = max(order[aid] for _, path in rel for aid in path)
        rel_at.setdefault(last, []).append(rel)
    found: list[Representation] = []
    for d in dvs:
        for n in set(d.values()):
            if n not in gl_cache:
                gl_cache[n] = _gl(n, F)
        seen: set[tuple] = set()
        shapes = [(d[x.target], d[x.source]) for x in arrows]

        def assign(k: int, maps: dict):
            if k == len(arrows):
                yield dict(maps)
                return
            r, c = shapes[k]
            for entries in _combinations(F, r * c):
                maps[arrows[k].id] = [list(entries[i * c:(i + 1) * c]) for i in range(r)]
                if all(_relation_vanishes(A, d, maps, rel) for rel in rel_at.get(k, ())):
                    yield from assign(k + 1, maps)
            maps.pop(arrows[k].id, None)

        for maps in assign(0, {}):
            key = tuple(tuple(tuple(r) for r in maps[x.id]) for x in arrows)
            if key in seen:
                continue
            orbit = _conjugates(A, d, maps, F, gl_cache)
            seen |= orbit
            M = Representation(A, d, maps)
            if is_indecomposable(M):
                canon = min(orbit)
                canon_maps = {x.id: [list(r) for r in m] for x, m in zip(arrows, canon)}
                found.append(Representation(A, d, canon_maps))
    found.sort(key=lambda M: (M.dim, M.key()))
    return found


def _relation_vanishes(A: AlgebraInstance, dims, maps, rel) -> bool:
    F = A.field
    q = A.quiver
    first = q.arrow(rel[0][1][0]).source
    last = q.arrow(rel[0][1][-1]).target
    if not dims[first] or not dims[last]:
        return True
    acc = None
    for c, path in rel:
        m = linalg.identity(dims[first], F)
        for aid in path:
            arr = q.arrow(aid)
            m = linalg.matmul(maps[aid], m, F, inner=dims[arr.source])
        cf = F(c)
        m = [[F.norm(cf * x) for x in row] for row in m]
        acc = m if acc is None else [[F.norm(x + y) for x, y in zip(r1, r2)] for r1, r2 in zip(acc, m)]
    return linalg.is_zero(acc)


# ---------------------------------------------------------------- stable category of GP modules

@dataclass(frozen=True, eq=False)
class StableGPQuiver:
    """Quiver of the stable category of Gorenstein-projective modules found.

    ``syzygy[i]`` is the index of the vertex isomorphic to Omega of module
    ``i`` (or ``None`` if it falls outside the enumeration bound).
    """

    quiver: Quiver
    modules: tuple[Representation, ...]
    syzygy: tuple[int | None, ...]

    def components(self) -> list[tuple[str, ...]]:
        """Components linked by arrows and by the syzygy (shift) functor."""
        verts = self.quiver.vertices
        parent = list(range(len(verts)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        idx = {v: k for k, v in enumerate(verts)}
        links = [(idx[x.source], idx[x.target]) for x in self.quiver.arrows]
        links += [(i, j) for i, j in enumerate(self.syzygy) if j is not None]
        for i, j in links:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[str]] = {}
        for k, v in enumerate(verts):
            groups.setdefault(find(k), []).append(v)
        return [tuple(g) for g in groups.values()]

    def translation_quiver(self) -> ValuedTranslationQuiver:
        """Lift to a translation quiver with the syzygy functor as translation.

        Parallel arrows become one valued arrow. Fails with a QuiverError when
        some syzygy lies outside the enumeration or the axiom does not hold.
        """
        verts = self.quiver.vertices
        if any(j is None for j in self.syzygy):
            raise RepresentationError("a syzygy lies outside the enumeration bound")
        counts: dict[tuple[str, str], int] = {}
        for x in self.quiver.arrows:
            counts[(x.source, x.target)] = counts.get((x.source, x.target), 0) + 1
        arrows = tuple(Arrow(f"{s}->{t}", s, t) for s, t in counts)
        vq = ValuedQuiver(Quiver(verts, arrows), {f"{s}->{t}": m for (s, t), m in counts.items()})
        return build_translation_quiver(vq, {v: verts[j] for v, j in zip(verts, self.syzygy)})


def module_label(M: Representation) -> str:
    """Short label: dimension vector, then a running index added by callers."""
    return "".join(str(x) for x in M.dim_vector())


def stable_gp_quiver(a: AlgebraInstance, bound=2, field: Field | None = None,
                     cap: int | None = None, budget: int = ENUMERATION_BUDGET) -> StableGPQuiver:
    A = _field_instance(a, field)
    F = A.field
    g = is_gorenstein(A, cap or DEFAULT_HOMOLOGICAL_CAP)
    if not g:
        raise GorensteinUnverified("algebra not Gorenstein within the cap")
    gp_cap = cap if cap is not None else max(g.dimension, 1)
    mods = [M for M in enumerate_indecomposables(A, bound, budget=budget)
            if not is_projective(M) and is_gorenstein_projective(A, M, gp_cap)]
    labels = []
    counts: dict[str, int] = {}
    for M in mods:
        base = module_label(M)
        counts[base] = counts.get(base, 0) + 1
        labels.append(f"M{base}_{counts[base]}")
    verts = A.vertices
    n = len(mods)
    radicals = [endomorphism_structure(M)[1] for M in mods]

    def rad_maps(i, j) -> list[Morphism]:
        X, Y = mods[i], mods[j]
        if i != j:
            return hom_space(X, Y)
        return [_unflatten(m, X) for m in radicals[i]]

    def factoring(i, j) -> list[list]:
        X, Y = mods[i], mods[j]
        cover = projective_cover(Y)
        return [morphism_vector(compose(cover.map, h, F, cover.module), verts)
                for h in hom_space(X, cover.module)]

    rad_cache = {(i, j): rad_maps(i, j) for i in range(n) for j in range(n)}
    arrows = []
    for i in range(n):
        for j in range(n):
            rad = [morphism_vector(f, verts) for f in rad_cache[(i, j)]]
            if not rad:
                continue
            proj = factoring(i, j)
            sq = []
            for k in range(n):
                for f in rad_cache[(i, k)]:
                    for h in rad_cache[(k, j)]:
                        sq.append(morphism_vector(compose(h, f, F, mods[k]), verts))
            lower = _span_rank(sq + proj, F)
            upper = _span_rank(rad + sq + proj, F)
            for m in range(upper - lower):
                arrows.append(Arrow(f"{labels[i]}->{labels[j]}#{m}", labels[i], labels[j]))
    syz = []
    for M in mods:
        K = syzygy(M)[0]
        hit = next((k for k, Y in enumerate(mods) if isomorphic_indecomposables(K, Y)), None)
        syz.append(hit)
    return StableGPQuiver(Quiver(tuple(labels), tuple(arrows)), tuple(mods), tuple(syz))


def _unflatten(m: Matrix, X: Representation) -> Morphism:
    off = X.offsets()
    return {v: [row[off[v]:off[v] + X.dims[v]] for row in m[off[v]:off[v] + X.dims[v]]]
            for v in X.algebra.vertices}


# ---------------------------------------------------------------- text format

def format_representation(M: Representation) -> str:
    F = M.field
    lines = [f"dimension {v} {M.dims[v]}" for v in M.algebra.vertices]
    for arr in M.algebra.quiver.arrows:
        m = M.maps[arr.id]
        if not m or not m[0]:
            continue
        lines.append(f"matrix {arr.id}")
        lines += [" ".join(F.format(x) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_representation(a: AlgebraInstance, text: str, source: str | None = None) -> Representation:
    """``dimension <vertex> <n>`` lines, then ``matrix <arrow>`` blocks of rows."""
    dims: dict[str, int] = {}
    maps: dict[str, Matrix] = {}
    current = None
    F = a.field
    lines = [(n, raw.split("#", 1)[0].strip()) for n, raw in enumerate(text.splitlines(), 1)]
    for n, line in lines:
        if not line:
            continue
        tok = line.split()
        if tok[0] == "dimension" and len(tok) == 3:
            if tok[1] not in a.vertices:
                raise UnknownVertex(f"{source or '<input>'}:{n}: unknown vertex {tok[1]!r}")
            dims[tok[1]] = int(tok[2])
            current = None
        elif tok[0] == "matrix" and len(tok) == 2:
            try:
                a.quiver.arrow(tok[1])
            except Exception:
                raise ParseError(f"unknown arrow {tok[1]!r}", n, source) from None
            current = tok[1]
            maps[current] = []
        elif current is not None:
            try:
                maps[current].append([F(x) for x in tok])
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), n, source) from None
        else:
            raise ParseError(f"cannot parse line {line!r}", n, source)
    return Representation(a, dims, maps)


def describe_module(M: Representation) -> str:
    a = M.algebra
    parts = [f"{v}:{M.dims[v]}" for v in a.vertices if M.dims[v]]
    return "dim (" + ", ".join(parts) + ")"


__all__ = [
    "AtLeast", "Representation", "Resolution", "ProjectiveCover", "GorensteinResult", "GPCertificate",
    "StableGPQuiver", "standard_module", "regular_module", "direct_sum", "dual", "hom_space", "hom_dim",
    "stable_hom", "projective_cover", "syzygy", "kernel", "minimal_projective_resolution", "ext_dim",
    "simple_ext_matrix", "projective_dimension", "homological_dimension", "is_gorenstein",
    "is_gorenstein_projective", "is_projective", "endomorphism_structure", "is_indecomposable",
    "isomorphic_indecomposables", "enumerate_indecomposables", "stable_gp_quiver",
    "format_representation", "parse_representation", "format_path",
]
