"""Independent brute-force oracles.

Nothing here calls the package's linear algebra or normal-form code; the
oracles work on explicit path lists with their own Fraction elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def rank_frac(rows: list[list]) -> int:
    """Rank over the rationals by plain Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def rank_mod(rows: list[list], p: int) -> int:
    m = [[int(x) % p for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def paths_by_length(vertices, arrows, max_len):
    """arrows: list of (id, src, dst). Paths as (start, tuple of ids), grouped by length."""
    out = [[(v, ()) for v in vertices]]
    for _ in range(max_len):
        nxt = []
        for start, p in out[-1]:
            end = start if not p else next(d for i, s, d in arrows if i == p[-1])
            for i, s, d in arrows:
                if s == end:
                    nxt.append((start, p + (i,)))
        out.append(nxt)
    return out


def graded_quotient_dims(vertices, arrows, relations, max_len=12):
    """Dimensions of the graded pieces of kQ/I for length-homogeneous relations.

    ``relations`` is a list of {arrow tuple: coefficient}. The degree-l part of
    the ideal is spanned by u * r * w over all paths u, w of matching length.
    Returns the list of quotient dimensions by degree, stopping at the first
    degree where the quotient vanishes.
    """
    by_len = paths_by_length(vertices, arrows, max_len)
    src = {i: s for i, s, d in arrows}
    dst = {i: d for i, s, d in arrows}
    dims = []
    for L in range(max_len + 1):
        level = [p for _, p in by_len[L]] if L else [("e", v) for v in vertices]
        if L == 0:
            dims.append(len(vertices))
            continue
        pos = {p: k for k, p in enumerate(level)}
        rows = []
        for rel in relations:
            deg = len(next(iter(rel)))
            if deg > L:
                continue
            some = next(iter(rel))
            rs, rt = src[some[0]], dst[some[-1]]
            for a in range(L - deg + 1):
                lefts = [p for st, p in by_len[a] if (dst[p[-1]] if p else st) == rs]
                rights = [p for st, p in by_len[L - deg - a] if st == rt]
                for u, w in product(lefts, rights):
                    row = [0] * len(level)
                    for path, c in rel.items():
                        row[pos[u + path + w]] += c
                    rows.append(row)
        d = len(level) - (rank_frac(rows) if rows else 0)
        dims.append(d)
        if d == 0:
            break
    return dims


def monomial_basis(vertices, arrows, zero_paths, max_len=12):
    """Paths that contain no forbidden subpath (monomial algebras)."""
    bad = {tuple(z) for z in zero_paths}
    by_len = paths_by_length(vertices, arrows, max_len)
    basis = []
    for L, level in enumerate(by_len):
        keep = []
        for st, p in level:
            if not any(p[i:j] in bad for i in range(len(p)) for j in range(i + 2, len(p) + 1)):
                keep.append((st, p))
        if L and not keep:
            break
        basis.extend(keep)
    return basis


def ext1_by_derivations(M_dims, M_maps, N_dims, N_maps, arrows, relations, p=None):
    """dim Ext^1(M, N) in rep(Q, I), computed from extensions by derivations.

    A module is (dims: vertex -> int, maps: arrow id -> matrix of shape
    dim_target x dim_source). An extension 0 -> N -> E -> M -> 0 has
    E_a = [[N_a, d_a], [0, M_a]] with d_a : M_src -> N_dst, and E satisfies the
    relations iff a linear condition on (d_a) holds. Ext^1 is the solution space
    modulo the inner derivations d_a = N_a f_src - f_dst M_a.
    Paths act diagrammatically: the path a*b acts as E_b @ E_a.
    """
    src = {i: s for i, s, d in arrows}
    dst = {i: d for i, s, d in arrows}
    # variable layout: for each arrow, entries of d_a (rows N_dst, cols M_src)
    var = {}
    for i, s, d in arrows:
        for r in range(N_dims[d]):
            for c in range(M_dims[s]):
                var[(i, r, c)] = len(var)
    nv = len(var)

    def mat_id(n):
        return [[int(r == c) for c in range(n)] for r in range(n)]

    def mul(a, b, rows, inner, cols):
        return [[sum(a[r][k] * b[k][c] for k in range(inner)) for c in range(cols)] for r in range(rows)]

    def path_mat(maps, dims, path, start):
        m = mat_id(dims[start])
        for aid in path:
            m = mul(maps[aid], m, dims[dst[aid]], dims[src[aid]], dims[start])
        return m

    eqs = []
    for rel in relations:
        some = next(iter(rel))
        s0, t0 = src[some[0]], dst[some[-1]]
        block = [[[0] * nv for _ in range(M_dims[s0])] for _ in range(N_dims[t0])]
        for path, coef in rel.items():
            for j, aid in enumerate(path):
                left = path_mat(N_maps, N_dims, path[j + 1:], dst[aid])  # N_dst(aid) -> N_t0
                right = path_mat(M_maps, M_dims, path[:j], s0)  # M_s0 -> M_src(aid)
                for r in range(N_dims[t0]):
                    for c in range(M_dims[s0]):
                        for x in range(N_dims[dst[aid]]):
                            lx = left[r][x]
                            if not lx:
                                continue
                            for y in range(M_dims[src[aid]]):
                                ry = right[y][c]
                                if ry:
                                    block[r][c][var[(aid, x, y)]] += coef * lx * ry
        for r in range(N_dims[t0]):
            for c in range(M_dims[s0]):
                eqs.append(block[r][c])
    rk = (rank_mod(eqs, p) if p else rank_frac(eqs)) if eqs and nv else 0
    cocycles = nv - rk
    # inner derivations: image of f = (f_v : M_v -> N_v)
    fvars = {}
    for v in M_dims:
        for r in range(N_dims[v]):
            for c in range(M_dims[v]):
                fvars[(v, r, c)] = len(fvars)
    cols = []
    for (v, r, c) in fvars:
        f = {w: [[0] * M_dims[w] for _ in range(N_dims[w])] for w in M_dims}
        f[v][r][c] = 1
        vec = [0] * nv
        for i, s, d in arrows:
            a = mul(N_maps[i], f[s], N_dims[d], N_dims[s], M_dims[s])
            b = mul(f[d], M_maps[i], N_dims[d], M_dims[d], M_dims[s])
            for x in range(N_dims[d]):
                for y in range(M_dims[s]):
                    vec[var[(i, x, y)]] = a[x][y] - b[x][y]
        cols.append(vec)
    rb = (rank_mod(cols, p) if p else rank_frac(cols)) if cols and nv else 0
    return cocycles - rb


def simple_module(vertices, arrows, v):
    dims = {w: int(w == v) for w in vertices}
    maps = {i: [[0] * dims[s] for _ in range(dims[d])] for i, s, d in arrows}
    return dims, maps


def ideal_ranks(vertices, arrows, generators, max_len):
    """Rank of the two-sided ideal generated by ``generators`` in each length.

    Generators are {arrow tuple: coefficient} and may mix endpoints; the
    product u * g * w keeps only the composable terms.
    """
    by_len = paths_by_length(vertices, arrows, max_len)
    src = {i: s for i, s, d in arrows}
    dst = {i: d for i, s, d in arrows}
    all_paths = [(st, p) for level in by_len for st, p in level]

    def composable(p, q):
        return not p or not q or dst[p[-1]] == src[q[0]]

    ranks = []
    for L in range(max_len + 1):
        level = by_len[L] if L else []
        pos = {p: k for k, (_, p) in enumerate(level)}
        rows = []
        for g in generators:
            deg = len(next(iter(g)))
            if deg > L:
                continue
            for st_u, u in all_paths:
                if len(u) > L - deg:
                    continue
                for st_w, w in all_paths:
                    if len(u) + deg + len(w) != L:
                        continue
                    row = [0] * len(level)
                    for path, c in g.items():
                        # trivial u and w act as idempotents at their vertex
                        if not u and st_u != src[path[0]]:
                            continue
                        if not w and st_w != dst[path[-1]]:
                            continue
                        if composable(u, path) and composable(path, w):
                            row[pos[u + path + w]] += c
                    if any(row):
                        rows.append(row)
        ranks.append(rank_frac(rows) if rows else 0)
    return ranks


def expected_region(family, n):
    """Outcome, certificate kinds and final type per the flowchart regions."""
    K, L, R, S = "KnoerrerNormalize", "CatalogueLoop", "AuslanderSolbergReduction", "FrakSContrapositive"
    if family == "A" and n == 1:
        return "nodal_unobstructed", [K], None
    if family == "A" and n % 2 == 0:
        return "obstructed", [K, L], None
    if family == "A" or (family == "D" and n % 2 == 0):
        return "obstructed", [K, S], f"{family}_{n}"
    if family == "D" or (family, n) == ("E", 6):
        return "obstructed", [K, R, S], "A_3"
    if (family, n) == ("E", 7):
        return "obstructed", [K, R, S], "D_4"
    return "obstructed", [K, R, R, S], "D_4"


def flowchart_grid():
    types = [("A", n) for n in range(1, 10)] + [("D", n) for n in range(4, 10)] + [("E", n) for n in (6, 7, 8)]
    return [(f, n, d) for f, n in types for d in (1, 3, 5)]
