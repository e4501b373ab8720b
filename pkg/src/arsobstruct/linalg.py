"""Dense exact linear algebra over a :class:`~arsobstruct.fields.Field`.

Matrices are lists of rows. Nothing here mutates its arguments.
"""

from __future__ import annotations

from .fields import Field


def zeros(rows: int, cols: int, F: Field) -> list[list]:
    z = F.zero
    return [[z] * cols for _ in range(rows)]


def identity(n: int, F: Field) -> list[list]:
    m = zeros(n, n, F)
    for i in range(n):
        m[i][i] = F.one
    return m


def matmul(a: list[list], b: list[list], F: Field, inner: int | None = None) -> list[list]:
    """Product ``a @ b``. ``inner`` is needed only when ``a`` has no rows."""
    if not a:
        return []
    n = len(a[0]) if inner is None else inner
    cols = len(b[0]) if b else 0
    if n == 0:
        return zeros(len(a), cols, F)
    norm, z = F.norm, F.zero
    bt = list(zip(*b)) if cols else []
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        if not nz:
            out.append([z] * cols)
            continue
        out.append([norm(sum(x * col[k] for k, x in nz)) for col in bt])
    return out


def matvec(a: list[list], v: list, F: Field) -> list:
    norm = F.norm
    nz = [(k, y) for k, y in enumerate(v) if y]
    if not nz:
        return [F.zero] * len(a)
    return [norm(sum(row[k] * y for k, y in nz)) for row in a]


def transpose(a: list[list], cols: int | None = None) -> list[list]:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def is_zero(a: list[list]) -> bool:
    return all(not x for row in a for x in row)


def rref(a: list[list], F: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = [list(r) for r in a]
    if not m:
        return [], []
    ncols = len(m[0])
    norm, inv = F.norm, F.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != 1:
            s = inv(piv)
            m[r] = [norm(x * s) for x in m[r]]
        prow = m[r]
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nzc:
                    row[j] = norm(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def sparse_rref(rows, F: Field) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows (``{column: value}``).

    Returns the nonzero reduced rows sorted by pivot column and the pivots, as
    :func:`rref` does for dense input.
    """
    norm, inv = F.norm, F.inv
    basis: dict[int, dict] = {}  # pivot column -> reduced row
    users: dict[int, set[int]] = {}  # column -> pivots of rows with a nonzero entry there
    for raw in rows:
        row = {c: x for c, x in raw.items() if x}
        for c in [c for c in row if c in basis]:
            f = row.get(c)
            if not f:
                continue
            for j, y in basis[c].items():
                v = norm(row.get(j, 0) - f * y)
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        if not row:
            continue
        lead = min(row)
        s = inv(row[lead])
        row = {j: norm(x * s) for j, x in row.items()}
        for pc in list(users.get(lead, ())):
            other = basis[pc]
            f = other[lead]
            for j, y in row.items():
                v = norm(other.get(j, 0) - f * y)
                if v:
                    if j not in other:
                        users.setdefault(j, set()).add(pc)
                    other[j] = v
                else:
                    other.pop(j, None)
                    users[j].discard(pc)
        basis[lead] = row
        for j in row:
            users.setdefault(j, set()).add(lead)
    pivots = sorted(basis)
    return [basis[c] for c in pivots], pivots


def rank(a: list[list], F: Field) -> int:
    return len(rref(a, F)[1])


def nullspace(a: list[list], ncols: int, F: Field) -> list[list]:
    """Basis (as a list of vectors) of ``{x : a x = 0}``."""
    return nullspace_free(a, ncols, F)[0]


def nullspace_free(a: list[list], ncols: int, F: Field) -> tuple[list[list], list[int]]:
    """Nullspace basis together with its free columns.

    Basis vector ``j`` is 1 at ``free[j]`` and 0 at the other free columns, so
    the coordinates of a kernel vector ``x`` are ``[x[c] for c in free]``.
    """
    if not a:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)], list(range(ncols))
    r, piv = rref(a, F)
    pivset = set(piv)
    basis, free_cols = [], []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(r, piv):
            if row[free]:
                v[pc] = F.norm(-row[free])
        basis.append(v)
        free_cols.append(free)
    return basis, free_cols


def column_space(a: list[list], ncols: int, F: Field) -> list[list]:
    """Basis of the column space of ``a`` as a list of column vectors."""
    if not a or ncols == 0:
        return []
    r, piv = rref(transpose(a), F)
    return [list(row) for row in r]


def solve(a: list[list], b: list, F: Field, ncols: int | None = None) -> list | None:
    """One solution of ``a x = b`` or ``None``."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [F.zero] * n if all(not x for x in b) else None
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, piv = rref(aug, F)
    if piv and piv[-1] == n:
        return None
    x = [F.zero] * n
    for row, pc in zip(r, piv):
        x[pc] = row[n]
    return x


def solve_matrix(a: list[list], b: list[list], F: Field, ncols: int) -> list[list] | None:
    """Solve ``a X = b`` column by column (``a`` has ``ncols`` columns)."""
    bcols = len(b[0]) if b else 0
    if bcols == 0:
        return [[] for _ in range(ncols)]
    if not a:
        return zeros(ncols, bcols, F) if is_zero(b) else None
    r, piv = rref([list(row) + list(brow) for row, brow in zip(a, b)], F)
    if piv and piv[-1] >= ncols:
        return None
    x = zeros(ncols, bcols, F)
    for row, pc in zip(r, piv):
        x[pc] = list(row[ncols:])
    return x


def complement_basis(sub: list[list], n: int, F: Field) -> list[list]:
    """Standard vectors extending the span of ``sub`` (vectors of length n) to F^n."""
    # the non-pivot standard vectors complete the echelon rows to a triangular basis
    pivset = set(rref([list(v) for v in sub], F)[1]) if sub else set()
    extra = []
    for i in range(n):
        if i not in pivset:
            e = [F.zero] * n
            e[i] = F.one
            extra.append(e)
    return extra


def mat_power_is_zero(a: list[list], F: Field) -> bool:
    """True iff the square matrix ``a`` is nilpotent."""
    n = len(a)
    if n == 0:
        return True
    p = [list(r) for r in a]
    steps = 1
    while steps < n:
        p = matmul(p, p, F)
        steps *= 2
        if is_zero(p):
            return True
    return is_zero(p)


def is_invertible(a: list[list], F: Field) -> bool:
    return len(a) == (len(a[0]) if a else 0) and rank(a, F) == len(a)


def inverse(a: list[list], F: Field) -> list[list]:
    n = len(a)
    aug = [list(row) + idr for row, idr in zip(a, identity(n, F))]
    r, piv = rref(aug, F)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]
