"""Exact sparse linear algebra over the rationals.

Matrices are dictionaries (row, col) -> nonzero Fraction.  Rank and kernel
computations run a fraction-free integer elimination: each row is cleared of
denominators, pivots are chosen by sparsity (fewest-entries row, then
fewest-entries column), and updated rows are renormalised by their gcd to
keep coefficient growth in check.  Independent column blocks of the support
graph are eliminated separately.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

Vector = dict  # {index: Fraction}, zero entries absent

ZERO = Fraction(0)


def vec_add(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for k, val in v.items():
        s = out.get(k, ZERO) + val
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_sub(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for k, val in v.items():
        s = out.get(k, ZERO) - val
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * val for k, val in v.items()}


def vec_axpy(out: Vector, c, v: Vector) -> None:
    """In place out += c*v."""
    if not c:
        return
    for k, val in v.items():
        s = out.get(k, ZERO) + c * val
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def vec_dot(u: Vector, v: Vector):
    if len(u) > len(v):
        u, v = v, u
    return sum((val * v[k] for k, val in u.items() if k in v), start=ZERO)


class SparseMatrix:
    """Immutable-by-convention sparse rational matrix."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        data = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), val in items:
                val = Fraction(val)
                if not val:
                    continue
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                data[(i, j)] = val
        self.entries = data

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ent = {}
        for i, row in enumerate(rows):
            for j, val in enumerate(row):
                if val:
                    ent[(i, j)] = Fraction(val)
        return cls(nrows, ncols, ent)

    @classmethod
    def from_columns(cls, nrows, columns):
        ent = {}
        for j, col in enumerate(columns):
            for i, val in col.items():
                if val:
                    ent[(i, j)] = Fraction(val)
        return cls(nrows, len(columns), ent)

    @classmethod
    def assemble(cls, nrows, ncols, blocks):
        """Build from [(row_off, col_off, matrix, scale), ...]."""
        ent = {}
        for row_off, col_off, mat, scale in blocks:
            if mat is None:
                continue
            scale = Fraction(scale)
            if not scale:
                continue
            for (i, j), val in mat.entries.items():
                key = (row_off + i, col_off + j)
                s = ent.get(key, ZERO) + scale * val
                if s:
                    ent[key] = s
                else:
                    ent.pop(key, None)
        return cls(nrows, ncols, ent)

    # -- basic access -------------------------------------------------
    def get(self, i, j):
        return self.entries.get((i, j), ZERO)

    def column(self, j) -> Vector:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def rows_list(self):
        rows = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    @property
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("SparseMatrix is unhashable")

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def to_dense(self):
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        ent = dict(self.entries)
        for key, v in other.entries.items():
            s = ent.get(key, ZERO) + v
            if s:
                ent[key] = s
            else:
                ent.pop(key, None)
        return SparseMatrix(self.nrows, self.ncols, ent)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        rows_of_self = {}
        for (i, k), v in self.entries.items():
            rows_of_self.setdefault(k, []).append((i, v))
        ent = {}
        for (k, j), w in other.entries.items():
            hits = rows_of_self.get(k)
            if not hits:
                continue
            for i, v in hits:
                key = (i, j)
                s = ent.get(key, ZERO) + v * w
                if s:
                    ent[key] = s
                else:
                    ent.pop(key, None)
        return SparseMatrix(self.nrows, other.ncols, ent)

    def apply(self, v: Vector) -> Vector:
        cols = {}
        for (i, j), val in self.entries.items():
            cols.setdefault(j, []).append((i, val))
        out = {}
        for j, c in v.items():
            for i, val in cols.get(j, ()):
                s = out.get(i, ZERO) + c * val
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def transpose(self):
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def tensor(self, other):
        """Kronecker product, row-major index convention."""
        ent = {}
        for (i1, j1), v1 in self.entries.items():
            for (i2, j2), v2 in other.entries.items():
                ent[(i1 * other.nrows + i2, j1 * other.ncols + j2)] = v1 * v2
        return SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols, ent)

    def submatrix(self, rows, cols):
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        ent = {}
        for (i, j), v in self.entries.items():
            if i in rmap and j in cmap:
                ent[(rmap[i], cmap[j])] = v
        return SparseMatrix(len(rows), len(cols), ent)

    # -- elimination-backed queries ------------------------------------
    def rank(self) -> int:
        rows = _integer_rows(self)
        total = 0
        for comp_rows in _split_components(rows):
            total += len(_echelonize(comp_rows, set()))
        return total

    def kernel_basis(self) -> list:
        """Basis of {v : Mv = 0}, exact rational vectors."""
        rows = _integer_rows(self)
        touched = set()
        for r in rows:
            touched.update(r)
        basis = [{c: Fraction(1)} for c in range(self.ncols) if c not in touched]
        for comp_rows in _split_components(rows):
            comp_cols = set()
            for r in comp_rows:
                comp_cols.update(r)
            pivots = _echelonize(comp_rows, set())
            pivot_cols = {pc for pc, _ in pivots}
            for f in sorted(comp_cols - pivot_cols):
                basis.append(_back_substitute(pivots, f))
        basis.sort(key=lambda v: min(v))
        return basis

    def rank_kernel(self):
        ker = self.kernel_basis()
        return self.ncols - len(ker), ker

    def solve(self, b: Vector):
        """One solution of Mx = b, or None."""
        return self.solve_many([b])[0]

    def solve_many(self, bs):
        """Solve Mx = b for each b; aligned list of solutions (None if inconsistent)."""
        rows = self.rows_list()
        aug = []
        sentinel = self.ncols
        for i, row in enumerate(rows):
            r = dict(row)
            for k, b in enumerate(bs):
                if b.get(i):
                    r[sentinel + k] = b[i]
            if r:
                aug.append(r)
        int_rows = [_clear_denominators(r) for r in aug]
        forbidden = set(range(sentinel, sentinel + len(bs)))
        pivots = _echelonize(int_rows, forbidden)
        # Inconsistent systems leave a row supported on sentinel columns only.
        bad = set()
        for pc, row in pivots:
            if pc >= sentinel:
                bad.update(k - sentinel for k in row if k >= sentinel)
        sols = []
        for k in range(len(bs)):
            if k in bad:
                sols.append(None)
                continue
            sols.append(_solve_back(pivots, sentinel, k, self.ncols))
        return sols

    def image_basis(self) -> list:
        """Columns forming a basis of the column space (original column vectors)."""
        span = Subspace(self.nrows)
        out = []
        for col in self.columns():
            if span.add(col):
                out.append(col)
        return out


# ---------------------------------------------------------------------------
# elimination internals
# ---------------------------------------------------------------------------


def _clear_denominators(row: Vector) -> dict:
    if not row:
        return {}
    denom = 1
    for v in row.values():
        denom = denom * v.denominator // gcd(denom, v.denominator)
    out = {}
    for k, v in row.items():
        out[k] = int(v * denom)
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _integer_rows(M: SparseMatrix):
    rows = [dict() for _ in range(M.nrows)]
    for (i, j), v in M.entries.items():
        rows[i][j] = v
    return [_clear_denominators(r) for r in rows if r]


def _split_components(rows):
    """Group rows by connected component of the shared-column graph."""
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        if first not in parent:
            parent[first] = first
        r0 = find(first)
        for c in it:
            if c not in parent:
                parent[c] = r0
            else:
                parent[find(c)] = r0
                r0 = find(c)
    groups = {}
    for row in rows:
        if not row:
            continue
        groups.setdefault(find(next(iter(row))), []).append(row)
    return list(groups.values())


def _normalize_int_row(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _echelonize(rows, forbidden_cols):
    """Integer row elimination choosing sparse pivots.

    Returns the finished pivot rows as [(pivot_col, row_dict), ...] in
    elimination order.  Once a row is finished it is never modified, so a
    finished row may still contain later pivot columns; back substitution
    walks the list in reverse.
    """
    active = {}
    col_rows = {}
    heap = []
    for rid, row in enumerate(rows):
        if not row:
            continue
        active[rid] = row
        for c in row:
            col_rows.setdefault(c, set()).add(rid)
        heapq.heappush(heap, (len(row), rid))

    pivots = []
    while active:
        # Smallest active row (lazy heap; stale sizes are re-pushed).
        while heap:
            size, rid = heapq.heappop(heap)
            if rid not in active:
                continue
            if len(active[rid]) != size:
                heapq.heappush(heap, (len(active[rid]), rid))
                continue
            break
        else:
            break
        prow = active.pop(rid)
        candidates = [c for c in prow if c not in forbidden_cols]
        if not candidates:
            # Row supported on forbidden columns only: keep as a pivot row on
            # a forbidden column so inconsistency is detectable.
            pc = min(prow)
        else:
            pc = min(candidates, key=lambda c: (len(col_rows.get(c, ())), c))
        for c in prow:
            col_rows[c].discard(rid)
        pivots.append((pc, prow))
        if pc in forbidden_cols:
            continue
        pval = prow[pc]
        for rid2 in list(col_rows.get(pc, ())):
            row2 = active[rid2]
            factor = row2[pc]
            new_row = {}
            for c, v in row2.items():
                new_row[c] = pval * v
            for c, v in prow.items():
                s = new_row.get(c, 0) - factor * v
                if s:
                    new_row[c] = s
                else:
                    new_row.pop(c, None)
            new_row = _normalize_int_row(new_row)
            for c in row2:
                if c not in new_row:
                    col_rows[c].discard(rid2)
            for c in new_row:
                if c not in row2:
                    col_rows.setdefault(c, set()).add(rid2)
            if new_row:
                active[rid2] = new_row
                heapq.heappush(heap, (len(new_row), rid2))
            else:
                del active[rid2]
                for c in row2:
                    col_rows[c].discard(rid2)
    return pivots


def _back_substitute(pivots, free_col):
    """Kernel vector with 1 at free_col, solving the echelon rows."""
    x = {free_col: Fraction(1)}
    for pc, row in reversed(pivots):
        s = ZERO
        for c, v in row.items():
            if c != pc and c in x:
                s += v * x[c]
        if s:
            x[pc] = -s / row[pc]
    return x


def _solve_back(pivots, sentinel, k, ncols):
    """Particular solution reading the k-th augmented column; free vars 0."""
    # A pivot row encodes sum(row[c]*x_c) = row[col] for the k-th system.
    x = {}
    col = sentinel + k
    for pc, row in reversed(pivots):
        if pc >= sentinel:
            continue
        s = Fraction(row.get(col, 0))
        for c, v in row.items():
            if c != pc and c < sentinel and c in x:
                s -= v * x[c]
        if s:
            x[pc] = s / row[pc]
    return x


# ---------------------------------------------------------------------------
# subspaces and quotients
# ---------------------------------------------------------------------------


class Subspace:
    """Row-reduced span of vectors in Q^dim with canonical reduction."""

    def __init__(self, dim, vectors=()):
        self.dim = dim
        self._rows = {}  # pivot_col -> reduced row with pivot value 1
        for v in vectors:
            self.add(v)

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, v: Vector) -> Vector:
        out = dict(v)
        hits = [c for c in out if c in self._rows]
        while hits:
            for c in hits:
                coef = out.get(c)
                if not coef:
                    continue
                vec_axpy(out, -coef, self._rows[c])
            hits = [c for c in out if c in self._rows]
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        """Insert v; True if the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        pc = min(r)
        pval = r[pc]
        row = {k: val / pval for k, val in r.items()}
        for other in self._rows.values():
            coef = other.get(pc)
            if coef:
                vec_axpy(other, -coef, row)
        self._rows[pc] = row
        return True

    def basis(self):
        return [dict(self._rows[c]) for c in sorted(self._rows)]

    def pivot_cols(self):
        return sorted(self._rows)


class QuotientSpace:
    """Q^dim modulo a span; complement coordinates are the non-pivot ones."""

    def __init__(self, dim, span_vectors=()):
        self.dim = dim
        self.sub = Subspace(dim, span_vectors)
        self.complement = [c for c in range(dim) if c not in self.sub._rows]
        self._index = {c: j for j, c in enumerate(self.complement)}

    @property
    def qdim(self):
        return len(self.complement)

    def project(self, v: Vector) -> Vector:
        r = self.sub.reduce(v)
        return {self._index[c]: val for c, val in r.items()}

    def lift(self, w: Vector) -> Vector:
        return {self.complement[j]: val for j, val in w.items()}

    def projection_matrix(self) -> SparseMatrix:
        cols = [self.project({i: Fraction(1)}) for i in range(self.dim)]
        return SparseMatrix.from_columns(self.qdim, cols)

    def section_matrix(self) -> SparseMatrix:
        cols = [{self.complement[j]: Fraction(1)} for j in range(self.qdim)]
        return SparseMatrix.from_columns(self.dim, cols)
