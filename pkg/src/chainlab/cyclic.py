"""Bar and Hochschild complexes, cyclic operators, and their bicomplexes.

All inputs are discrete (degree-zero) algebras, so the graded signs collapse:
the Bar differential is -b' with b' the alternating sum of adjacent
contractions, the Hochschild differential is b = b' + (-1)^p (wrap term), and
the cyclic rotation on p+1 tensor factors carries the sign (-1)^p.

Totalization convention (validated by the d.d = 0 construction check): the
Hochschild columns keep b, the Bar columns keep -b', the horizontal maps 1-t
and N are used unmodified, and the total differential is the plain sum.  The
squares then anticommute degreewise, which the constructor asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import Algebra, Bimodule
from .complexes import ChainComplex, ChainMap, HomologySpace, HomologyReport, Interval
from .errors import SizeLimit, UnitError
from .sparse import QuotientSpace, SparseMatrix, Vector

ONE = Fraction(1)

DEFAULT_SIZE_LIMIT = 2_000_000


def _guard(dim, size_limit, what):
    limit = DEFAULT_SIZE_LIMIT if size_limit is None else size_limit
    if dim > limit:
        raise SizeLimit(f"{what} has dimension {dim} > size limit {limit}")


def _word_dims(A: Algebra, M: Bimodule, D):
    return {p: M.dim * A.dim ** p for p in range(D + 1)}


def b_prime_matrix(A: Algebra, M: Bimodule, p: int) -> SparseMatrix:
    """b' on M (x) A^p: alternating sum of the p adjacent contractions."""
    dA, dM = A.dim, M.dim
    src = dM * dA ** p
    tgt = dM * dA ** (p - 1)
    if p < 1:
        raise ValueError("b' starts at degree 1")
    powers = [dA ** t for t in range(p + 1)]  # powers[t] = dA^t
    entries = {}

    def add(r, c, val):
        key = (r, c)
        s = entries.get(key, Fraction(0)) + val
        if s:
            entries[key] = s
        else:
            entries.pop(key, None)

    word = [0] * p
    for col in range(src):
        rest = col
        m_idx = rest // powers[p]
        rest %= powers[p]
        for t in range(p):
            word[t] = rest // powers[p - 1 - t]
            rest %= powers[p - 1 - t]
        # i = 0: module slot times first algebra slot (right action).
        tail = sum(word[t] * powers[p - 1 - t] for t in range(1, p))
        for m2, coef in M.right_basis(m_idx, word[0]).items():
            add(m2 * powers[p - 1] + tail, col, coef)
        # i >= 1: internal products.
        sign = -1
        for i in range(1, p):
            prod = A.mul_basis(word[i - 1], word[i])
            if prod:
                base = m_idx * powers[p - 1]
                for t in range(p):
                    if t == i - 1 or t == i:
                        continue
                    tt = t if t < i else t - 1
                    base += word[t] * powers[p - 2 - tt]
                for k, coef in prod.items():
                    add(base + k * powers[p - 1 - i], col, sign * coef)
            sign = -sign
    return SparseMatrix(tgt, src, entries)


def hoch_matrix(A: Algebra, M: Bimodule, p: int) -> SparseMatrix:
    """b = b' + (-1)^p (last slot wraps onto the module by the left action)."""
    base = b_prime_matrix(A, M, p)
    dA, dM = A.dim, M.dim
    powers = [dA ** t for t in range(p + 1)]
    entries = dict(base.entries)
    sign = 1 if p % 2 == 0 else -1
    word = [0] * p
    for col in range(dM * powers[p]):
        rest = col
        m_idx = rest // powers[p]
        rest %= powers[p]
        for t in range(p):
            word[t] = rest // powers[p - 1 - t]
            rest %= powers[p - 1 - t]
        head = sum(word[t] * powers[p - 2 - t] for t in range(p - 1))
        for m2, coef in M.left_basis(word[p - 1], m_idx).items():
            key = (m2 * powers[p - 1] + head, col)
            s = entries.get(key, Fraction(0)) + sign * coef
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
    return SparseMatrix(base.nrows, base.ncols, entries)


def unit_homotopy(A: Algebra, M: Bimodule, p: int) -> SparseMatrix:
    """s_p = (-1)^p (append the unit): satisfies b' s + s b' = id degreewise."""
    if not A.is_unital:
        raise UnitError("contracting homotopy needs a unital algebra")
    dA, dM = A.dim, M.dim
    src = dM * dA ** p
    tgt = dM * dA ** (p + 1)
    sign = ONE if p % 2 == 0 else -ONE
    entries = {}
    for col in range(src):
        for k, coef in A.unit.items():
            entries[(col * dA + k, col)] = sign * coef
    return SparseMatrix(tgt, src, entries)


@dataclass
class BarComplex:
    complex: ChainComplex
    algebra: Algebra
    module: Bimodule
    bound: int
    b_prime: dict  # p -> b'_p

    def homology(self, rng=None, **kw) -> HomologyReport:
        rng = rng or self.complex.certified
        return self.complex.homology(rng, **kw)


@dataclass
class HochComplex:
    complex: ChainComplex
    algebra: Algebra
    module: Bimodule
    bound: int


def bar_complex(A: Algebra, M: Bimodule | None = None, D: int = 4,
                size_limit=None) -> BarComplex:
    """Augmented Bar complex of (A, M) with differential -b', degrees 0..D."""
    if D < 1:
        raise ValueError("D must be >= 1")
    M = M or Bimodule.regular(A)
    dims = _word_dims(A, M, D)
    _guard(max(dims.values(), default=0), size_limit, "Bar complex top degree")
    bprimes = {p: b_prime_matrix(A, M, p) for p in range(1, D + 1)}
    diffs = {p: bprimes[p].scale(-1) for p in bprimes}
    cx = ChainComplex(dims, diffs, Interval(0, D - 1))
    return BarComplex(cx, A, M, D, bprimes)


def hoch_complex(A: Algebra, M: Bimodule | None = None, D: int = 4,
                 size_limit=None) -> HochComplex:
    if D < 1:
        raise ValueError("D must be >= 1")
    M = M or Bimodule.regular(A)
    dims = _word_dims(A, M, D)
    _guard(max(dims.values(), default=0), size_limit, "Hochschild complex top degree")
    diffs = {p: hoch_matrix(A, M, p) for p in range(1, D + 1)}
    cx = ChainComplex(dims, diffs, Interval(0, D - 1))
    return HochComplex(cx, A, M, D)


def verify_unit_homotopy(A: Algebra, M: Bimodule | None = None, D: int = 4):
    """Exact matrix check of b' s + s b' = id for degrees <= D."""
    M = M or Bimodule.regular(A)
    bc = bar_complex(A, M, D + 1)
    for p in range(0, D + 1):
        s_p = unit_homotopy(A, M, p)
        lhs = bc.b_prime[p + 1] @ s_p
        if p >= 1:
            lhs = lhs + unit_homotopy(A, M, p - 1) @ bc.b_prime[p]
        if lhs != SparseMatrix.identity(M.dim * A.dim ** p):
            return False, p
    return True, None


# ---------------------------------------------------------------------------
# cyclic operators
# ---------------------------------------------------------------------------


def rotation_matrix(A: Algebra, p: int) -> SparseMatrix:
    """t on A^(p+1): signed rotation a_0...a_p -> (-1)^p a_p a_0...a_{p-1}."""
    d = A.dim
    n = d ** (p + 1)
    sign = ONE if p % 2 == 0 else -ONE
    entries = {}
    for col in range(n):
        last = col % d
        rest = col // d
        entries[(last * d ** p + rest, col)] = sign
    return SparseMatrix(n, n, entries)


def norm_matrix(A: Algebra, p: int) -> SparseMatrix:
    """N = sum of t^i for i = 0..p."""
    t = rotation_matrix(A, p)
    acc = SparseMatrix.identity(t.nrows)
    out = acc
    for _ in range(p):
        acc = t @ acc
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# bicomplexes and totalizations
# ---------------------------------------------------------------------------


class CyclicBicomplex:
    """First-quadrant bicomplex, columns alternating Hochschild (even q,
    differential b) and Bar (odd q, differential -b'), horizontal maps 1-t
    (odd q -> even) and N (even q -> odd), materialised to total degree D.

    ncols=2 is the two-column Hochschild totalization; ncols=D+1 the cyclic
    one.  The plain-sum total differential squares to zero degreewise, which
    the ChainComplex constructor asserts.
    """

    def __init__(self, A: Algebra, ncols: int, D: int, size_limit=None):
        self.algebra = A
        self.ncols = ncols
        self.bound = D
        M = Bimodule.regular(A)
        max_p = D
        self._vertical = {}
        for p in range(1, max_p + 1):
            bp = b_prime_matrix(A, M, p)
            self._vertical[("bar", p)] = bp.scale(-1)
            self._vertical[("hoch", p)] = hoch_matrix(A, M, p)
        self._rot = {p: rotation_matrix(A, p) for p in range(0, max_p + 1)}
        self._one_minus_t = {
            p: SparseMatrix.identity(self._rot[p].nrows) - self._rot[p] for p in self._rot
        }
        self._norm = {p: norm_matrix(A, p) for p in range(0, max_p + 1)}
        for p in range(0, max_p + 1):
            if not (self._norm[p] @ self._one_minus_t[p]).is_zero():
                raise ValueError(f"N(1-t) != 0 at row {p}")
            if not (self._one_minus_t[p] @ self._norm[p]).is_zero():
                raise ValueError(f"(1-t)N != 0 at row {p}")

        space = {p: A.dim ** (p + 1) for p in range(0, max_p + 1)}
        _guard(max(space.values(), default=0), size_limit, "bicomplex row")

        # layout[n]: list of (q, p, offset, width) for the degree-n total.
        self.layout = {}
        dims = {}
        for n in range(0, D + 1):
            comps = []
            off = 0
            for q in range(0, min(n, ncols - 1) + 1):
                p = n - q
                w = space[p]
                comps.append((q, p, off, w))
                off += w
            self.layout[n] = comps
            dims[n] = off

        diffs = {}
        for n in range(1, D + 1):
            blocks = []
            tgt = {(q, p): off for q, p, off, _ in self.layout[n - 1]}
            for q, p, off, width in self.layout[n]:
                if p >= 1 and (q, p - 1) in tgt:
                    kind = "hoch" if q % 2 == 0 else "bar"
                    blocks.append((tgt[(q, p - 1)], off, self._vertical[(kind, p)], 1))
                if q >= 1 and (q - 1, p) in tgt:
                    horiz = self._one_minus_t[p] if q % 2 == 1 else self._norm[p]
                    blocks.append((tgt[(q - 1, p)], off, horiz, 1))
            diffs[n] = SparseMatrix.assemble(dims[n - 1], dims[n], blocks)

        self.total = ChainComplex(dims, diffs, Interval(0, D - 1))

    def component_slice(self, n, predicate):
        """Offsets/widths in degree n of the components whose column satisfies
        the predicate, in layout order."""
        return [(q, p, off, w) for q, p, off, w in self.layout[n] if predicate(q)]

    def restriction(self, predicate, relabel=lambda q: q):
        """Sub- or quotient-complex data spanned by the selected columns.

        Returns (complex, per-degree column-index lists into the total).
        """
        dims = {}
        index_lists = {}
        for n in range(0, self.bound + 1):
            idx = []
            for q, p, off, w in self.layout[n]:
                if predicate(q):
                    idx.extend(range(off, off + w))
            index_lists[n] = idx
            dims[n] = len(idx)
        diffs = {}
        for n in range(1, self.bound + 1):
            diffs[n] = self.total.diffs[n].submatrix(index_lists[n - 1], index_lists[n])
        cx = ChainComplex(dims, diffs, Interval(0, self.bound - 1))
        return cx, index_lists

    def induced_map(self, other: "CyclicBicomplex", morphism_matrix: SparseMatrix) -> ChainMap:
        """Chain map on totals induced by an algebra morphism self.A -> other.A."""
        if other.ncols != self.ncols or other.bound != self.bound:
            raise ValueError("bicomplex shapes differ")
        powers = {}
        comps = {}
        for n in range(0, self.bound + 1):
            blocks = []
            tgt = {(q, p): off for q, p, off, _ in other.layout[n]}
            for q, p, off, w in self.layout[n]:
                if p not in powers:
                    mat = morphism_matrix
                    for _ in range(p):
                        mat = mat.tensor(morphism_matrix)
                    powers[p] = mat
                blocks.append((tgt[(q, p)], off, powers[p], 1))
            comps[n] = SparseMatrix.assemble(other.total.dim(n), self.total.dim(n), blocks)
        return ChainMap(self.total, other.total, comps)


def hh_bicomplex(A: Algebra, D: int, size_limit=None) -> CyclicBicomplex:
    return CyclicBicomplex(A, 2, D, size_limit)


def hc_bicomplex(A: Algebra, D: int, size_limit=None) -> CyclicBicomplex:
    return CyclicBicomplex(A, D + 1, D, size_limit)


def hh_homology(A: Algebra, D: int, size_limit=None, jobs=1, reps=False) -> HomologyReport:
    if D < 2:
        raise ValueError("D must be >= 2")
    bc = hh_bicomplex(A, D, size_limit)
    return bc.total.homology(Interval(0, D - 2), jobs=jobs, reps=reps)


def hc_homology(A: Algebra, D: int, size_limit=None, jobs=1, reps=False) -> HomologyReport:
    if D < 2:
        raise ValueError("D must be >= 2")
    bc = hc_bicomplex(A, D, size_limit)
    return bc.total.homology(Interval(0, D - 2), jobs=jobs, reps=reps)


# ---------------------------------------------------------------------------
# Connes exact sequence via the column-shift short exact sequence
# ---------------------------------------------------------------------------


@dataclass
class ConnesReport:
    exact: bool
    checked: Interval
    degrees: dict  # n -> {"at_hh": bool, "at_hc": bool, "at_shift": bool}
    failing_degree: int | None = None

    def to_jsonable(self):
        out = {
            "exact": self.exact,
            "checked_range": self.checked.to_jsonable(),
            "degrees": {str(n): v for n, v in sorted(self.degrees.items())},
        }
        if self.failing_degree is not None:
            out["failing_degree"] = self.failing_degree
        return out


def _induced_matrix(src_reps, raw_map, target_hs: HomologySpace) -> SparseMatrix:
    images = [raw_map(v) for v in src_reps]
    classes = target_hs.classify_many(images) if images else []
    return SparseMatrix.from_columns(target_hs.dim, classes)


def connes_check(A: Algebra, D: int, size_limit=None) -> ConnesReport:
    """Exactness of HH_n -> HC_n -> HC_{n-2} -> HH_{n-1} by rank bookkeeping.

    Uses the degreewise split short exact sequence (columns 0..1) ->
    (all columns) -> (columns >= 2) of the cyclic bicomplex; the last is the
    cyclic total complex shifted by two.
    """
    if D < 3:
        raise ValueError("D must be >= 3")
    bc = hc_bicomplex(A, D, size_limit)
    sub, sub_idx = bc.restriction(lambda q: q <= 1)
    quot, quot_idx = bc.restriction(lambda q: q >= 2)
    total = bc.total

    n_max = D - 2  # nodes need H_{n+1}(quot) and H_{n-1}(sub), both certified
    hs_sub = {n: HomologySpace(sub, n) for n in range(0, n_max + 1)}
    hs_tot = {n: HomologySpace(total, n) for n in range(0, n_max + 1)}
    hs_quot = {n: HomologySpace(quot, n) for n in range(0, n_max + 2)}

    def include(n):
        idx = sub_idx[n]

        def f(v: Vector) -> Vector:
            return {idx[i]: c for i, c in v.items()}

        return f

    def project(n):
        pos = {g: i for i, g in enumerate(quot_idx[n])}

        def f(v: Vector) -> Vector:
            return {pos[g]: c for g, c in v.items() if g in pos}

        return f

    def connecting(n):
        """H_n(quot) -> H_{n-1}(sub): lift, differentiate, land in the sub."""
        idx = quot_idx[n]
        sub_pos = {g: i for i, g in enumerate(sub_idx[n - 1])}
        d_n = total.diffs[n]

        def f(v: Vector) -> Vector:
            lifted = {idx[i]: c for i, c in v.items()}
            w = d_n.apply(lifted)
            out = {}
            for g, c in w.items():
                if g not in sub_pos:
                    raise ValueError("connecting map left the subcomplex")
                out[sub_pos[g]] = c
            return out

        return f

    degrees = {}
    failing = None
    for n in range(0, n_max + 1):
        i_n = _induced_matrix(hs_sub[n].representatives, include(n), hs_tot[n])
        p_n = _induced_matrix(hs_tot[n].representatives, project(n), hs_quot[n])
        del_n1 = _induced_matrix(
            hs_quot[n + 1].representatives, connecting(n + 1), hs_sub[n]
        )
        at_hc = (p_n @ i_n).is_zero() and i_n.rank() + p_n.rank() == hs_tot[n].dim
        at_hh = (i_n @ del_n1).is_zero() and del_n1.rank() + i_n.rank() == hs_sub[n].dim
        if n >= 1:
            del_n = _induced_matrix(
                hs_quot[n].representatives, connecting(n), hs_sub[n - 1]
            )
            at_shift = (del_n @ p_n).is_zero() and p_n.rank() + del_n.rank() == hs_quot[n].dim
        else:
            at_shift = hs_quot[0].dim == 0  # column-shift quotient vanishes in degree 0
        ok = at_hh and at_hc and at_shift
        degrees[n] = {"at_hh": at_hh, "at_hc": at_hc, "at_shift": at_shift}
        if not ok and failing is None:
            failing = n
    return ConnesReport(failing is None, Interval(0, n_max), degrees, failing)


# ---------------------------------------------------------------------------
# quotient-by-rotation model (Connes lambda complex in characteristic zero)
# ---------------------------------------------------------------------------


class LambdaComplex:
    """Degree-n space coker(1 - t) on A^(n+1), differential induced by b."""

    def __init__(self, A: Algebra, D: int, size_limit=None):
        if D < 1:
            raise ValueError("D must be >= 1")
        self.algebra = A
        self.bound = D
        M = Bimodule.regular(A)
        _guard(A.dim ** (D + 1), size_limit, "lambda complex top degree")
        self.quotients = {}
        for p in range(0, D + 1):
            one_minus_t = SparseMatrix.identity(A.dim ** (p + 1)) - rotation_matrix(A, p)
            self.quotients[p] = QuotientSpace(A.dim ** (p + 1), one_minus_t.columns())
        dims = {p: self.quotients[p].qdim for p in range(0, D + 1)}
        diffs = {}
        for p in range(1, D + 1):
            b = hoch_matrix(A, M, p)
            proj = self.quotients[p - 1].projection_matrix()
            section = self.quotients[p].section_matrix()
            induced = proj @ b @ section
            # well-definedness: b maps im(1-t) into im(1-t)
            rot = rotation_matrix(A, p)
            check = proj @ b @ (SparseMatrix.identity(rot.nrows) - rot)
            if not check.is_zero():
                raise ValueError(f"induced differential ill-defined at degree {p}")
            diffs[p] = induced
        self.complex = ChainComplex(dims, diffs, Interval(0, D - 1))

    def project_element(self, p, v: Vector) -> Vector:
        return self.quotients[p].project(v)

    def homology(self, rng=None, **kw) -> HomologyReport:
        rng = rng or self.complex.certified
        return self.complex.homology(rng, **kw)


def lambda_complex(A: Algebra, D: int, size_limit=None) -> LambdaComplex:
    return LambdaComplex(A, D, size_limit)
