"""Exact linear algebra over Q(i) scalars.

Sparse vectors are zero-free dicts ``key -> Scalar`` with sortable keys;
matrices appear either as lists of column dicts (operator matrices) or as
dense lists of lists (Grams, frames).  Everything is deterministic: pivot
choice is always the smallest key / first eligible index, never a magnitude
heuristic, so repeated runs produce identical bases.
"""

from __future__ import annotations

from .errors import DegeneracyError, DimensionError
from .scalars import ONE, Scalar, ZERO

Vec = dict


def vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_sub(u: Vec, v: Vec) -> Vec:
    return vec_add(u, vec_scale(v, Scalar(-1)))


def vec_scale(v: Vec, c: Scalar) -> Vec:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vec_axpy(u: Vec, c: Scalar, v: Vec) -> Vec:
    """u + c*v, zero-stripped."""
    if not c:
        return dict(u)
    out = dict(u)
    for k, x in v.items():
        s = out.get(k)
        t = x * c
        if s is None:
            out[k] = t
        else:
            s = s + t
            if s:
                out[k] = s
            else:
                del out[k]
    return out


class Echelon:
    """Row space accumulator with expression tracking.

    Rows are kept mutually reduced (each pivot key is zero in every other
    row), so membership tests and coordinates are exact single passes.
    Every stored row knows its expansion in terms of the vectors originally
    added, keyed by caller-supplied tags.
    """

    def __init__(self):
        self.rows: list[tuple[object, Vec, Vec]] = []  # (pivot, row, expr)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> tuple[Vec, Vec]:
        """Return (residual, combo): vec = residual + sum combo[tag]*v_tag."""
        res = dict(vec)
        combo: Vec = {}
        for pivot, row, expr in self.rows:
            c = res.get(pivot)
            if c:
                res = vec_axpy(res, -c, row)
                combo = vec_axpy(combo, c, expr)
        return res, combo

    def add(self, vec: Vec, tag) -> bool:
        """Insert vec (with identity expression tag); False if dependent."""
        res, combo = self.reduce(vec)
        if not res:
            return False
        expr = vec_axpy({tag: ONE}, Scalar(-1), combo)
        pivot = min(res)
        inv = res[pivot].inverse()
        row = vec_scale(res, inv)
        expr = vec_scale(expr, inv)
        # keep older rows reduced against the new pivot
        for t, (p, r, e) in enumerate(self.rows):
            c = r.get(pivot)
            if c:
                self.rows[t] = (p, vec_axpy(r, -c, row), vec_axpy(e, -c, expr))
        self.rows.append((pivot, row, expr))
        return True

    def coordinates(self, vec: Vec) -> Vec | None:
        """Expression of vec in the added vectors, or None if outside."""
        res, combo = self.reduce(vec)
        if res:
            return None
        return combo

    def contains(self, vec: Vec) -> bool:
        res, _ = self.reduce(vec)
        return not res


def rref_rows(rows: list[Vec], col_order: list | None = None):
    """Reduced row echelon form.  Returns (reduced_rows, pivot_cols).

    rows are dicts col -> Scalar; col_order fixes the pivot search order
    (sorted union of keys when omitted).
    """
    if col_order is None:
        cols = set()
        for r in rows:
            cols.update(r)
        col_order = sorted(cols)
    work = [dict(r) for r in rows]
    pivots: list = []
    used: list[int] = []
    for col in col_order:
        hit = None
        for idx, row in enumerate(work):
            if idx in used:
                continue
            if row.get(col):
                hit = idx
                break
        if hit is None:
            continue
        row = work[hit]
        inv = row[col].inverse()
        row = vec_scale(row, inv)
        work[hit] = row
        for idx, other in enumerate(work):
            if idx == hit:
                continue
            c = other.get(col)
            if c:
                work[idx] = vec_axpy(other, -c, row)
        used.append(hit)
        pivots.append(col)
    reduced = [work[i] for i in used]
    return reduced, pivots


def kernel_basis(columns: list[Vec], ncols: int | None = None) -> list[Vec]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, deterministic order.

    Kernel vectors are dicts j -> Scalar over column indices 0..ncols-1.
    """
    if ncols is None:
        ncols = len(columns)
    rows_keys = set()
    for col in columns:
        rows_keys.update(col)
    rows = {k: {} for k in rows_keys}
    for j, col in enumerate(columns):
        for k, c in col.items():
            rows[k][j] = c
    reduced, pivots = rref_rows(list(rows.values()), col_order=list(range(ncols)))
    pivot_set = set(pivots)
    by_pivot = {}
    for row in reduced:
        by_pivot[min(k for k in row if row[k])] = row
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v: Vec = {free: ONE}
        for p in pivots:
            c = by_pivot[p].get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def rank_columns(columns: list[Vec]) -> int:
    ech = Echelon()
    r = 0
    for j, col in enumerate(columns):
        if ech.add(col, j):
            r += 1
    return r


def solve_columns(columns: list[Vec], target: Vec) -> Vec | None:
    """Coefficients x with sum_j x_j*columns[j] = target, or None."""
    ech = Echelon()
    for j, col in enumerate(columns):
        ech.add(col, j)
    return ech.coordinates(target)


# -- dense helpers (small matrices: frames, Grams) ---------------------------


def identity_matrix(n: int) -> list[list[Scalar]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zero_matrix(n: int, m: int | None = None) -> list[list[Scalar]]:
    m = n if m is None else m
    return [[ZERO for _ in range(m)] for _ in range(n)]


def mat_mul(a: list[list[Scalar]], b: list[list[Scalar]]) -> list[list[Scalar]]:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise DimensionError("matrix product shape mismatch")
    out = zero_matrix(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if not c:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] = oi[j] + c * bt[j]
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c: Scalar):
    return [[x * c for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_conj_transpose(a):
    return [[x.conjugate() for x in col] for col in zip(*a)]


def mat_vec(a: list[list[Scalar]], v: list[Scalar]) -> list[Scalar]:
    return [sum((c * x for c, x in zip(row, v) if c and x), ZERO) for row in a]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_invert(a: list[list[Scalar]]) -> list[list[Scalar]]:
    """Gauss-Jordan inverse; raises DegeneracyError when singular."""
    n = len(a)
    work = [list(row) + ident for row, ident in zip(a, identity_matrix(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise DegeneracyError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_det(a: list[list[Scalar]]) -> Scalar:
    n = len(a)
    work = [list(row) for row in a]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        pivot = work[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for r in range(col + 1, n):
            if work[r][col]:
                c = work[r][col] * inv
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return det


def symmetric_signature(mat: list[list[Scalar]]) -> tuple[int, int, int]:
    """(positives, negatives, zeros) of a real symmetric matrix.

    Exact congruence diagonalization (Lagrange); never touches radicals.
    """
    n = len(mat)
    work = [list(row) for row in mat]
    for i in range(n):
        for j in range(n):
            if not work[i][j].is_real():
                raise DimensionError("signature of a non-real matrix")
            if work[i][j] != work[j][i]:
                raise DimensionError("signature of a non-symmetric matrix")

    def swap(i, j):
        work[i], work[j] = work[j], work[i]
        for row in work:
            row[i], row[j] = row[j], row[i]

    def add_into(i, j, c: Scalar):
        # row_i += c*row_j ; col_i += c*col_j
        work[i] = [x + c * y for x, y in zip(work[i], work[j])]
        for row in work:
            row[i] = row[i] + c * row[j]

    pos = neg = zero = 0
    for k in range(n):
        if not work[k][k]:
            hit = next((i for i in range(k + 1, n) if work[i][i]), None)
            if hit is not None:
                swap(k, hit)
            else:
                pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                             if work[i][j]), None)
                if pair is None:
                    zero += n - k
                    break
                i, j = pair
                add_into(i, j, ONE)
                if i != k:
                    swap(k, i)
        a = work[k][k]
        s = a.real_sign()
        if s > 0:
            pos += 1
        else:
            neg += 1
        inv = a.inverse()
        for i in range(k + 1, n):
            c = work[i][k]
            if c:
                add_into(i, k, -(c * inv))
    return pos, neg, zero


def is_symmetric_positive_definite(mat: list[list[Scalar]]) -> bool:
    try:
        pos, negv, zero = symmetric_signature(mat)
    except DimensionError:
        return False
    return negv == 0 and zero == 0
