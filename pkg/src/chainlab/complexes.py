"""Chain complexes of rational vector spaces, homology, cones, quasi-isomorphisms.

Homological (lower) indexing throughout: d_n maps degree n to degree n-1 and
d_n . d_{n+1} = 0 is asserted exactly when a complex is constructed.  Every
complex carries a certified interval: the degrees where enough boundary data
is materialised for the reported homology to equal the untruncated answer.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DegreeMismatch, RangeNotCertified
from .sparse import SparseMatrix, Subspace, Vector


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int  # inclusive; empty when hi < lo

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    @property
    def empty(self):
        return self.hi < self.lo

    def intersect(self, other):
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def to_jsonable(self):
        return [self.lo, self.hi]


@dataclass
class HomologyReport:
    betti: dict
    certified: Interval
    representatives: dict | None = None

    def betti_tuple(self, lo=None, hi=None):
        lo = self.certified.lo if lo is None else lo
        hi = self.certified.hi if hi is None else hi
        return tuple(self.betti[n] for n in range(lo, hi + 1))

    def to_jsonable(self):
        out = {
            "betti": {str(k): v for k, v in sorted(self.betti.items())},
            "certified_range": self.certified.to_jsonable(),
        }
        if self.representatives is not None:
            out["representatives"] = {
                str(n): [sorted((k, str(v)) for k, v in vec.items()) for vec in vecs]
                for n, vecs in sorted(self.representatives.items())
            }
        return out


class ChainComplex:
    """Bounded chain complex with explicit sparse differentials.

    dims maps each materialised degree to its dimension (a contiguous
    interval), diffs[n] is d_n for lo < n <= hi.  Degrees outside the
    materialised window are treated as zero spaces only insofar as the
    certified interval claims.
    """

    def __init__(self, dims: dict, diffs: dict, certified: Interval, check=True, bounded_above=False):
        if not dims:
            raise ValueError("empty complex needs at least one degree")
        degrees = sorted(dims)
        if degrees != list(range(degrees[0], degrees[-1] + 1)):
            raise ValueError("degrees must be contiguous")
        self.lo, self.hi = degrees[0], degrees[-1]
        self.dims = dict(dims)
        self.diffs = dict(diffs)
        self.certified = certified
        self.bounded_above = bounded_above  # True: degrees above hi are genuinely zero
        self._ranks = {}
        if check:
            self.validate()

    def validate(self):
        for n in range(self.lo + 1, self.hi + 1):
            d = self.diffs.get(n)
            if d is None:
                raise ValueError(f"missing differential at degree {n}")
            if (d.nrows, d.ncols) != (self.dims[n - 1], self.dims[n]):
                raise ValueError(
                    f"d_{n} has shape {d.nrows}x{d.ncols}, expected "
                    f"{self.dims[n - 1]}x{self.dims[n]}"
                )
        for n in range(self.lo + 2, self.hi + 1):
            prod = self.diffs[n - 1] @ self.diffs[n]
            if not prod.is_zero():
                raise ValueError(f"d_{n - 1} . d_{n} != 0")

    def dim(self, n):
        return self.dims.get(n, 0)

    def differential(self, n) -> SparseMatrix:
        d = self.diffs.get(n)
        if d is not None:
            return d
        return SparseMatrix.zeros(self.dim(n - 1), self.dim(n))

    def rank_d(self, n) -> int:
        if n not in self._ranks:
            d = self.diffs.get(n)
            self._ranks[n] = d.rank() if d is not None else 0
        return self._ranks[n]

    def betti(self, n) -> int:
        if n not in self.certified:
            raise RangeNotCertified(f"degree {n} outside certified {self.certified}")
        return self.dim(n) - self.rank_d(n) - self.rank_d(n + 1)

    def homology(self, rng: Interval, reps=False, jobs=1) -> HomologyReport:
        if rng.lo not in self.certified or rng.hi not in self.certified:
            raise RangeNotCertified(f"requested {rng} outside certified {self.certified}")
        needed = [n for n in range(rng.lo, rng.hi + 2) if n not in self._ranks and n in self.diffs]
        if jobs > 1 and len(needed) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                for n, r in zip(needed, pool.map(lambda m: self.diffs[m].rank(), needed)):
                    self._ranks[n] = r
        betti = {n: self.betti(n) for n in rng}
        representatives = None
        if reps:
            representatives = {n: HomologySpace(self, n).representatives for n in rng}
        return HomologyReport(betti, rng, representatives)

    def euler_characteristic(self):
        return sum((-1) ** n * d for n, d in self.dims.items())


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """C[k]: degree n holds C_{n-k}; differentials gain the sign (-1)^k."""
    sign = -1 if k % 2 else 1
    dims = {n + k: d for n, d in C.dims.items()}
    diffs = {n + k: C.diffs[n].scale(sign) for n in C.diffs}
    cert = Interval(C.certified.lo + k, C.certified.hi + k)
    out = ChainComplex(dims, diffs, cert, check=False, bounded_above=C.bounded_above)
    out._ranks = {n + k: r for n, r in C._ranks.items()}
    return out


class ChainMap:
    """Degreewise map commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, components: dict, check=True):
        self.source = source
        self.target = target
        self.components = dict(components)
        if check:
            self.validate()

    def component(self, n) -> SparseMatrix:
        f = self.components.get(n)
        if f is not None:
            return f
        return SparseMatrix.zeros(self.target.dim(n), self.source.dim(n))

    def validate(self):
        for n, f in self.components.items():
            if (f.nrows, f.ncols) != (self.target.dim(n), self.source.dim(n)):
                raise ValueError(f"component {n} has wrong shape")
        lo = max(self.source.lo, self.target.lo)
        hi = min(self.source.hi, self.target.hi)
        for n in range(lo + 1, hi + 1):
            lhs = self.target.differential(n) @ self.component(n)
            rhs = self.component(n - 1) @ self.source.differential(n)
            if lhs != rhs:
                raise ValueError(f"map fails to commute with differentials at degree {n}")


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone: degree n is target_n + source_{n-1}, d = [[d_T, f],[0, -d_S]].

    Degrees are materialised as far as both inputs carry honest data; above a
    truncated input the cone is cut off and the certified range ends one
    degree earlier.
    """
    s, t = f.source, f.target
    lo = min(t.lo, s.lo + 1)
    t_honest = None if t.bounded_above else t.hi
    s_honest = None if s.bounded_above else s.hi + 1
    limits = [x for x in (t_honest, s_honest) if x is not None]
    bounded = not limits
    hi = max(t.hi, s.hi + 1) if bounded else min(min(limits), max(t.hi, s.hi + 1))
    if hi < lo:
        raise DegreeMismatch("source and target share no usable degrees")
    dims = {n: t.dim(n) + s.dim(n - 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks = [
            (0, 0, t.diffs.get(n), 1),
            (0, t.dim(n), f.components.get(n - 1), 1),
            (t.dim(n - 1), t.dim(n), s.diffs.get(n - 1), -1),
        ]
        diffs[n] = SparseMatrix.assemble(dims[n - 1], dims[n], blocks)
    certified = Interval(lo, hi if bounded else hi - 1)
    if certified.empty:
        raise DegreeMismatch("inputs share no degree with certifiable cone homology")
    return ChainComplex(dims, diffs, certified, bounded_above=bounded)


def homotopy_fiber(f: ChainMap) -> ChainComplex:
    """hofib(f) = cone(f)[-1]; its degree-n homology is H_{n+1} of the cone."""
    return shift(cone(f), -1)


@dataclass
class QuasiIsoVerdict:
    ok: bool
    checked: Interval
    failing_degree: int | None = None
    defect: int | None = None

    def to_jsonable(self):
        out = {"quasi_iso": self.ok, "checked_range": self.checked.to_jsonable()}
        if not self.ok:
            out["failing_degree"] = self.failing_degree
            out["defect"] = self.defect
        return out


def is_quasi_iso(f: ChainMap, rng: Interval, jobs=1) -> QuasiIsoVerdict:
    cn = cone(f)
    rng = rng.intersect(cn.certified)
    report = cn.homology(rng, jobs=jobs)
    for n in rng:
        if report.betti[n]:
            return QuasiIsoVerdict(False, rng, n, report.betti[n])
    return QuasiIsoVerdict(True, rng)


class HomologySpace:
    """Cycles modulo boundaries in one degree, with explicit representatives."""

    def __init__(self, C: ChainComplex, n: int):
        if n not in C.certified:
            raise RangeNotCertified(f"degree {n} outside certified {C.certified}")
        self.complex = C
        self.degree = n
        kernel = C.differential(n).kernel_basis() if C.dim(n) else []
        span = Subspace(C.dim(n))
        boundary_basis = []
        d_in = C.diffs.get(n + 1)
        if d_in is not None:
            for col in d_in.columns():
                if span.add(col):
                    boundary_basis.append(col)
        self.boundaries = boundary_basis
        self.representatives = []
        for v in kernel:
            if span.add(v):
                self.representatives.append(v)
        self._classifier = SparseMatrix.from_columns(
            C.dim(n), boundary_basis + self.representatives
        )
        self._n_bound = len(boundary_basis)

    @property
    def dim(self):
        return len(self.representatives)

    def classify(self, v: Vector) -> Vector:
        """Coordinates of the class [v] over the representative basis."""
        if self.complex.differential(self.degree).apply(v):
            raise ValueError("vector is not a cycle")
        sol = self._classifier.solve(v)
        if sol is None:
            raise ValueError("cycle not in span of boundaries and representatives")
        return {j - self._n_bound: c for j, c in sol.items() if j >= self._n_bound}

    def classify_many(self, vectors):
        sols = self._classifier.solve_many(list(vectors))
        out = []
        for sol in sols:
            if sol is None:
                raise ValueError("cycle not in span of boundaries and representatives")
            out.append({j - self._n_bound: c for j, c in sol.items() if j >= self._n_bound})
        return out
