"""Lie algebra homology and the trace comparison with cyclic homology.

Chevalley-Eilenberg chains on a finite-dimensional Lie algebra g: degree p is
the exterior power on the chosen basis (sorted index tuples, lexicographic),
with differential

    d(x_1 ^ ... ^ x_p) = sum_{r<s} (-1)^{r+s} [x_r, x_s] ^ x_1 ... ^x_r ... ^x_s ... x_p

(1-based positions).  The generalized trace sends a wedge of matrices over an
algebra to the signed sum over cyclic words of matrix-trace coefficients,
landing in the rotation-coinvariants model of the cyclic complex; its
chain-map identity against the Chevalley-Eilenberg differential is an exact
matrix check with a single global sign, frozen below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .algebras import Algebra, Ideal, matrix_algebra
from .complexes import ChainComplex, HomologyReport, Interval
from .cyclic import LambdaComplex, hc_homology, lambda_complex
from .errors import NotNilpotent, SizeLimit
from .sparse import SparseMatrix, Subspace, Vector, vec_axpy

ONE = Fraction(1)

# Frozen convention: Tr . d_CE = TRACE_CHAIN_SIGN * d_lambda . Tr.
TRACE_CHAIN_SIGN = -1


class LieAlgebra:
    """Antisymmetric bracket table with the Jacobi identity checked on build."""

    def __init__(self, dim, labels, bracket, name=None, provenance="custom", check=True):
        self.dim = dim
        self.labels = list(labels) if labels else [f"x{i + 1}" for i in range(dim)]
        self.name = name
        self.provenance = provenance
        self.bracket = {}
        for (i, j), vec in bracket.items():
            v = {k: Fraction(c) for k, c in vec.items() if c}
            if not v:
                continue
            if i == j:
                raise ValueError("[x, x] must vanish")
            if i < j:
                self.bracket[(i, j)] = v
            else:
                self.bracket[(j, i)] = {k: -c for k, c in v.items()}
        if check:
            self._validate()

    def bracket_basis(self, i, j) -> Vector:
        if i == j:
            return {}
        if i < j:
            return self.bracket.get((i, j), {})
        return {k: -c for k, c in self.bracket.get((j, i), {}).items()}

    def bracket_vec(self, x: Vector, y: Vector) -> Vector:
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                vec_axpy(out, ci * cj, self.bracket_basis(i, j))
        return out

    def _validate(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    acc = {}
                    vec_axpy(acc, ONE, self.bracket_vec(self.bracket_basis(i, j), {k: ONE}))
                    vec_axpy(acc, ONE, self.bracket_vec(self.bracket_basis(j, k), {i: ONE}))
                    vec_axpy(acc, ONE, self.bracket_vec(self.bracket_basis(k, i), {j: ONE}))
                    if acc:
                        raise ValueError(f"Jacobi identity fails on triple ({i + 1},{j + 1},{k + 1})")

    def lower_central_series(self):
        """Dims of g = L_1 >= L_2 >= ... until stabilisation or zero."""
        span = Subspace(self.dim, [{i: ONE} for i in range(self.dim)])
        dims = [span.rank]
        while True:
            nxt = Subspace(self.dim)
            for i in range(self.dim):
                for row in span.basis():
                    nxt.add(self.bracket_vec({i: ONE}, row))
            dims.append(nxt.rank)
            if nxt.rank == 0 or nxt.rank == span.rank:
                return dims
            span = nxt

    @property
    def is_nilpotent(self):
        return self.lower_central_series()[-1] == 0

    def __repr__(self):
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim})"


def lie_from_assoc(A: Algebra) -> LieAlgebra:
    """Commutator bracket on the underlying space of an associative algebra."""
    bracket = {}
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            v = dict(A.mul_basis(i, j))
            for k, c in A.mul_basis(j, i).items():
                s = v.get(k, Fraction(0)) - c
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
            if v:
                bracket[(i, j)] = v
    return LieAlgebra(A.dim, A.labels, bracket, name=f"Lie({A.name or 'A'})",
                      provenance="from_assoc")


def gl(A: Algebra, r: int) -> LieAlgebra:
    g = lie_from_assoc(matrix_algebra(A, r))
    g.name = f"gl{r}({A.name or 'A'})"
    g.provenance = "gl"
    return g


def triangular_lie(A: Algebra, I: Ideal, n: int, sigma) -> LieAlgebra:
    """Matrices over A with entry (i, j) confined to I unless i < j in the
    transitive closure of sigma (pairs of 1-based indices).  Must come out
    nilpotent; a non-nilpotent result signals a bad order or ideal."""
    if not A.is_unital:
        raise ValueError("triangular_lie expects a unital ambient algebra")
    less = {(int(a), int(b)) for a, b in sigma}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(less):
            for (c, d) in list(less):
                if b == c and (a, d) not in less:
                    less.add((a, d))
                    changed = True
    if any(a == b for a, b in less):
        raise ValueError("sigma closure is not a strict partial order")

    glA = matrix_algebra(A, n)
    dA = A.dim
    basis_vectors = []
    labels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            pos = (i - 1) * n + (j - 1)
            if (i, j) in less:
                for a in range(dA):
                    basis_vectors.append({pos * dA + a: ONE})
                    labels.append(f"E{i}{j}*{A.labels[a]}")
            else:
                for v in I.basis:
                    basis_vectors.append({pos * dA + k: c for k, c in v.items()})
                    labels.append(f"E{i}{j}*(ideal)")
    dim = len(basis_vectors)
    basis_matrix = SparseMatrix.from_columns(glA.dim, basis_vectors)
    brackets = []
    for a in range(dim):
        for b in range(a + 1, dim):
            x, y = basis_vectors[a], basis_vectors[b]
            comm = glA.mul_vec(x, y)
            for k, c in glA.mul_vec(y, x).items():
                s = comm.get(k, Fraction(0)) - c
                if s:
                    comm[k] = s
                else:
                    comm.pop(k, None)
            brackets.append(((a, b), comm))
    sols = basis_matrix.solve_many([v for _, v in brackets])
    table = {}
    for ((a, b), _), sol in zip(brackets, sols):
        if sol is None:
            raise NotNilpotent("bracket leaves the triangular subspace; bad sigma or ideal")
        if sol:
            table[(a, b)] = sol
    g = LieAlgebra(dim, labels, table, name=f"t^sigma_{n}({A.name or 'A'})",
                   provenance="t_sigma")
    if not g.is_nilpotent:
        raise NotNilpotent("triangular Lie algebra fails the lower-central-series test")
    return g


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg chains
# ---------------------------------------------------------------------------


DEFAULT_EXTERIOR_LIMIT = 2_000_000


@dataclass
class CEComplex:
    complex: ChainComplex
    lie: LieAlgebra
    bound: int
    tuples: dict = field(repr=False)  # p -> list of index tuples

    def homology(self, rng=None, **kw) -> HomologyReport:
        rng = rng or self.complex.certified
        return self.complex.homology(rng, **kw)


def _ce_matrix(g: LieAlgebra, tuples_p, index_pm1, p) -> SparseMatrix:
    entries = {}
    for col, tup in enumerate(tuples_p):
        for r in range(p):
            for s in range(r + 1, p):
                br = g.bracket_basis(tup[r], tup[s])
                if not br:
                    continue
                rest = tup[:r] + tup[r + 1:s] + tup[s + 1:]
                # 1-based positions i = r+1, j = s+1: (-1)^{i+j} = (-1)^{r+s}
                pair_sign = 1 if (r + s) % 2 == 0 else -1
                for c, coef in br.items():
                    if c in rest:
                        continue
                    k = sum(1 for x in rest if x < c)
                    new = rest[:k] + (c,) + rest[k:]
                    sign = pair_sign * (1 if k % 2 == 0 else -1)
                    key = (index_pm1[new], col)
                    val = entries.get(key, Fraction(0)) + sign * coef
                    if val:
                        entries[key] = val
                    else:
                        entries.pop(key, None)
    return SparseMatrix(len(index_pm1), len(tuples_p), entries)


def ce_complex(g: LieAlgebra, D: int, size_limit=None) -> CEComplex:
    if D < 1:
        raise ValueError("D must be >= 1")
    limit = DEFAULT_EXTERIOR_LIMIT if size_limit is None else size_limit
    top = min(D, g.dim)
    for p in range(top + 1):
        if comb(g.dim, p) > limit:
            raise SizeLimit(f"exterior power C({g.dim},{p}) exceeds limit {limit}")
    tuples = {p: list(combinations(range(g.dim), p)) for p in range(top + 1)}
    index = {p: {t: i for i, t in enumerate(tuples[p])} for p in range(top + 1)}
    dims = {p: len(tuples[p]) for p in range(top + 1)}
    diffs = {p: _ce_matrix(g, tuples[p], index[p - 1], p) for p in range(1, top + 1)}
    bounded = top == g.dim
    certified = Interval(0, top if bounded else top - 1)
    cx = ChainComplex(dims, diffs, certified, bounded_above=bounded)
    return CEComplex(cx, g, D, tuples)


def ce_homology(g: LieAlgebra, D: int, size_limit=None, jobs=1, reps=False) -> HomologyReport:
    ce = ce_complex(g, D, size_limit)
    hi = min(D - 1, ce.complex.certified.hi)
    return ce.complex.homology(Interval(0, hi), jobs=jobs, reps=reps)


# ---------------------------------------------------------------------------
# generalized trace
# ---------------------------------------------------------------------------


def generalized_trace_matrix(A: Algebra, r: int, n: int, lam: LambdaComplex,
                             ce: CEComplex) -> SparseMatrix:
    """Wedge degree n+1 of gl_r(A) to the degree-n rotation coinvariants.

    On a wedge of elementary matrices a_i (x) E(i_k, j_k) the image is the
    signed sum over permutations fixing slot 0 of trace(E_0 E_{s(1)} ...) times
    the class of a_0 (x) a_{s(1)} (x) ... in coker(1 - t)."""
    dA = A.dim
    tuples = ce.tuples[n + 1]
    cols = []
    for tup in tuples:
        decoded = []
        for idx in tup:
            pos, a = divmod(idx, dA)
            i, j = divmod(pos, r)
            decoded.append((i, j, a))
        acc: Vector = {}
        i0, j0, a0 = decoded[0]
        if n == 0:
            if i0 == j0:
                vec_axpy(acc, ONE, lam.project_element(0, {a0: ONE}))
        else:
            for perm in permutations(range(1, n + 1)):
                chain = j0
                word_idx = a0
                ok = True
                for t in perm:
                    it, jt, at = decoded[t]
                    if chain != it:
                        ok = False
                        break
                    chain = jt
                    word_idx = word_idx * dA + at
                if not ok or chain != i0:
                    continue
                sgn = _perm_sign(perm)
                vec_axpy(acc, Fraction(sgn), lam.project_element(n, {word_idx: ONE}))
        cols.append(acc)
    return SparseMatrix.from_columns(lam.complex.dim(n), cols)


def _perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    order = sorted(perm)
    pos = {v: i for i, v in enumerate(order)}
    arr = [pos[v] for v in perm]
    for start in range(len(arr)):
        if seen[start]:
            continue
        length = 0
        t = start
        while not seen[t]:
            seen[t] = True
            t = arr[t]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class TraceReport:
    chain_map_ok: bool
    failing_degree: int | None
    sign: int
    degrees: Interval

    def to_jsonable(self):
        return {
            "chain_map": self.chain_map_ok,
            "failing_degree": self.failing_degree,
            "sign_convention": self.sign,
            "degrees": self.degrees.to_jsonable(),
        }


def trace_chain_check(A: Algebra, r: int, N: int, size_limit=None):
    """Exact matrix identity Tr . d_CE = sign * d_lambda . Tr for wedge
    degrees <= N + 1; returns (report, trace matrices, lambda complex, ce)."""
    g = gl(A, r)
    N = min(N, g.dim - 1)  # higher exterior powers vanish
    ce = ce_complex(g, N + 1, size_limit)
    lam = lambda_complex(A, N, size_limit)
    traces = {n: generalized_trace_matrix(A, r, n, lam, ce) for n in range(0, N + 1)}
    failing = None
    for n in range(1, N + 1):
        lhs = traces[n - 1] @ ce.complex.diffs[n + 1]
        rhs = (lam.complex.diffs[n] @ traces[n]).scale(TRACE_CHAIN_SIGN)
        if lhs != rhs:
            failing = n
            break
    report = TraceReport(failing is None, failing, TRACE_CHAIN_SIGN, Interval(1, N))
    return report, traces, lam, ce


# ---------------------------------------------------------------------------
# free graded-commutative model and the stable comparison
# ---------------------------------------------------------------------------


def sym_model_betti(generator_counts: dict, D: int) -> list:
    """Dimensions through degree D of the free graded-commutative algebra on
    generator_counts[n] generators in degree n (odd degrees exterior, even
    polynomial)."""
    series = [0] * (D + 1)
    series[0] = 1
    for n, g in sorted(generator_counts.items()):
        if n <= 0 or g <= 0 or n > D:
            continue
        if n % 2 == 1:
            factor = [comb(g, k) for k in range(0, D // n + 1)]
        else:
            factor = [comb(k + g - 1, g - 1) for k in range(0, D // n + 1)]
        new = [0] * (D + 1)
        for d in range(D + 1):
            if not series[d]:
                continue
            for k, c in enumerate(factor):
                if d + n * k > D:
                    break
                new[d + n * k] += series[d] * c
        series = new
    return series


@dataclass
class LqtReport:
    ce_betti: dict
    sym_betti: dict
    matches: dict
    all_match: bool
    stable: bool
    rank: int
    degrees: Interval

    def to_jsonable(self):
        return {
            "ce_betti": {str(k): v for k, v in sorted(self.ce_betti.items())},
            "sym_model_betti": {str(k): v for k, v in sorted(self.sym_betti.items())},
            "matches": {str(k): v for k, v in sorted(self.matches.items())},
            "all_match": self.all_match,
            "within_stable_range": self.stable,
            "rank": self.rank,
            "degrees": self.degrees.to_jsonable(),
        }


def lqt_verify(A: Algebra, r: int, D: int, size_limit=None, jobs=1) -> LqtReport:
    """Compare CE betti of gl_r(A) against the free graded-commutative model
    on the cyclic homology of A shifted up by one.  Outside the stable range
    r >= D a mismatch is reported, not failed."""
    if not A.is_unital:
        raise ValueError("the stable comparison expects a unital algebra")
    ce_rep = ce_homology(gl(A, r), D + 1, size_limit, jobs=jobs)
    hc_rep = hc_homology(A, D + 2, size_limit, jobs=jobs)
    gens = {n: hc_rep.betti[n - 1] for n in range(1, D + 1)}
    sym = sym_model_betti(gens, D)
    degrees = Interval(0, D)
    ce_betti = {n: ce_rep.betti[n] for n in degrees}
    sym_betti = {n: sym[n] for n in degrees}
    matches = {n: ce_betti[n] == sym_betti[n] for n in degrees}
    return LqtReport(ce_betti, sym_betti, matches, all(matches.values()), r >= D, r, degrees)


@dataclass
class CentralExtensionReport:
    h1: int
    h2: int
    h2_indecomposable: int
    hc1: int
    equal: bool

    def to_jsonable(self):
        return {
            "dim_h1": self.h1,
            "dim_h2": self.h2,
            "dim_h2_indecomposable": self.h2_indecomposable,
            "dim_hc1": self.hc1,
            "equal": self.equal,
        }


def h2_vs_hc1(A: Algebra, r: int, size_limit=None, jobs=1) -> CentralExtensionReport:
    """Compare HC_1(A) with the kernel size of the universal central extension
    of gl_r(A), i.e. the indecomposable part of H_2: products of H_1 classes
    (their exterior square) are discounted from the raw dimension."""
    rep = ce_homology(gl(A, r), 3, size_limit, jobs=jobs)
    h1, h2 = rep.betti[1], rep.betti[2]
    prim = h2 - comb(h1, 2)
    hc1 = hc_homology(A, 3, size_limit, jobs=jobs).betti[1]
    return CentralExtensionReport(h1, h2, prim, hc1, prim == hc1)
