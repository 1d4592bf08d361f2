"""Finite-dimensional associative algebras over Q by structure constants.

Every constructor revalidates associativity on all basis triples, so no
unvalidated algebra can circulate.  Algebras may be non-unital; an optional
augmentation (an algebra map to Q given by a coefficient functional) marks
the local augmented algebras used as test bases.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    AssociativityError,
    IdealNotNilpotent,
    NotAnIdeal,
    NotAugmented,
    UnitError,
)
from .sparse import SparseMatrix, Subspace, Vector, vec_axpy

ONE = Fraction(1)


class Algebra:
    def __init__(self, dim, labels, mul, unit=None, augmentation=None, name=None, check=True):
        self.dim = dim
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("label count != dim")
        self.mul = {}
        for (i, j), vec in mul.items():
            v = {k: Fraction(c) for k, c in vec.items() if c}
            if v:
                self.mul[(i, j)] = v
        self.unit = {k: Fraction(c) for k, c in unit.items() if c} if unit else None
        self.augmentation = (
            {k: Fraction(c) for k, c in augmentation.items() if c} if augmentation else None
        )
        self.name = name
        if check:
            self._validate()
        self.commutative = all(
            self.mul_basis(i, j) == self.mul_basis(j, i)
            for i in range(dim)
            for j in range(i + 1, dim)
        )

    # -- multiplication -------------------------------------------------
    def mul_basis(self, i, j) -> Vector:
        return self.mul.get((i, j), {})

    def mul_vec(self, x: Vector, y: Vector) -> Vector:
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                vec_axpy(out, ci * cj, self.mul_basis(i, j))
        return out

    def power(self, x: Vector, k: int) -> Vector:
        if k < 1:
            raise ValueError("power needs k >= 1")
        out = dict(x)
        for _ in range(k - 1):
            out = self.mul_vec(out, x)
        return out

    @property
    def is_unital(self):
        return self.unit is not None

    def counit(self, x: Vector) -> Fraction:
        """Value of the augmentation functional on x."""
        if self.augmentation is None:
            raise NotAugmented(f"algebra {self.name or ''} has no augmentation")
        return sum((self.augmentation[k] * c for k, c in x.items() if k in self.augmentation),
                   start=Fraction(0))

    def nilpotency_order(self):
        """Least N with all length-N products zero, or None if not nilpotent."""
        span = Subspace(self.dim, [{i: ONE} for i in range(self.dim)])
        power = 1
        while True:
            nxt = Subspace(self.dim)
            for i in range(self.dim):
                for row in span.basis():
                    nxt.add(self.mul_vec({i: ONE}, row))
            power += 1
            if nxt.rank == 0:
                return power
            if nxt.rank == span.rank:
                return None
            span = nxt

    # -- validation -------------------------------------------------------
    def _validate(self):
        for (i, j), vec in self.mul.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ValueError("product index out of range")
            for k in vec:
                if not 0 <= k < self.dim:
                    raise ValueError("product coefficient index out of range")
        for i in range(self.dim):
            for j in range(self.dim):
                left = self.mul_basis(i, j)
                for k in range(self.dim):
                    lhs = self.mul_vec(left, {k: ONE})
                    rhs = self.mul_vec({i: ONE}, self.mul_basis(j, k))
                    if lhs != rhs:
                        raise AssociativityError((i + 1, j + 1, k + 1))
        if self.unit is not None:
            for i in range(self.dim):
                e = {i: ONE}
                if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                    raise UnitError(f"declared unit fails on basis element {i + 1}")
        if self.augmentation is not None:
            if self.unit is not None and self.counit(self.unit) != 1:
                raise UnitError("augmentation does not send the unit to 1")
            for i in range(self.dim):
                for j in range(self.dim):
                    if self.counit(self.mul_basis(i, j)) != self.augmentation.get(i, Fraction(0)) * self.augmentation.get(j, Fraction(0)):
                        raise UnitError(f"augmentation is not multiplicative on pair ({i + 1},{j + 1})")

    def __repr__(self):
        return f"Algebra({self.name or 'anonymous'}, dim={self.dim})"


class Bimodule:
    """Left and right module structure over a single algebra."""

    def __init__(self, algebra: Algebra, dim, left, right, name=None, check=True):
        self.algebra = algebra
        self.dim = dim
        self.left = {k: {m: Fraction(c) for m, c in v.items() if c} for k, v in left.items() if v}
        self.right = {k: {m: Fraction(c) for m, c in v.items() if c} for k, v in right.items() if v}
        self.left = {k: v for k, v in self.left.items() if v}
        self.right = {k: v for k, v in self.right.items() if v}
        self.name = name
        if check:
            self._validate()

    def left_basis(self, a, m) -> Vector:
        return self.left.get((a, m), {})

    def right_basis(self, m, a) -> Vector:
        return self.right.get((m, a), {})

    def right_vec(self, mvec: Vector, avec: Vector) -> Vector:
        out = {}
        for m, cm in mvec.items():
            for a, ca in avec.items():
                vec_axpy(out, cm * ca, self.right_basis(m, a))
        return out

    def left_vec(self, avec: Vector, mvec: Vector) -> Vector:
        out = {}
        for a, ca in avec.items():
            for m, cm in mvec.items():
                vec_axpy(out, ca * cm, self.left_basis(a, m))
        return out

    def _validate(self):
        A = self.algebra
        for a in range(A.dim):
            for b in range(A.dim):
                ab = A.mul_basis(a, b)
                for m in range(self.dim):
                    mv = {m: ONE}
                    if self.left_vec(ab, mv) != self.left_vec({a: ONE}, self.left_vec({b: ONE}, mv)):
                        raise ValueError(f"left action not associative at ({a},{b},{m})")
                    if self.right_vec(mv, ab) != self.right_vec(self.right_vec(mv, {a: ONE}), {b: ONE}):
                        raise ValueError(f"right action not associative at ({m},{a},{b})")
                    lhs = self.right_vec(self.left_vec({a: ONE}, mv), {b: ONE})
                    rhs = self.left_vec({a: ONE}, self.right_vec(mv, {b: ONE}))
                    if lhs != rhs:
                        raise ValueError(f"left/right actions do not commute at ({a},{m},{b})")

    @classmethod
    def regular(cls, A: Algebra):
        left = {(a, m): A.mul_basis(a, m) for a in range(A.dim) for m in range(A.dim)}
        right = {(m, a): A.mul_basis(m, a) for m in range(A.dim) for a in range(A.dim)}
        return cls(A, A.dim, left, right, name="regular", check=False)

    @classmethod
    def trivial(cls, A: Algebra, dim):
        return cls(A, dim, {}, {}, name="trivial")

    @classmethod
    def over_morphism(cls, f: "AlgebraMorphism"):
        """Target algebra as a bimodule over the source, acting through f."""
        A, B = f.source, f.target
        left = {}
        right = {}
        for a in range(A.dim):
            fa = f.apply_basis(a)
            for m in range(B.dim):
                lv = B.mul_vec(fa, {m: ONE})
                rv = B.mul_vec({m: ONE}, fa)
                if lv:
                    left[(a, m)] = lv
                if rv:
                    right[(m, a)] = rv
        return cls(A, B.dim, left, right, name=f"{B.name or 'B'} over f")

    def with_algebra(self, A2: Algebra, basis_map: SparseMatrix):
        """Same module, actions through a change of algebra basis (columns of
        basis_map express A2 basis in the current algebra's coordinates)."""
        left = {}
        right = {}
        for a in range(A2.dim):
            img = basis_map.column(a)
            for m in range(self.dim):
                lv = self.left_vec(img, {m: ONE})
                rv = self.right_vec({m: ONE}, img)
                if lv:
                    left[(a, m)] = lv
                if rv:
                    right[(m, a)] = rv
        return Bimodule(A2, self.dim, left, right, name=self.name, check=False)


class AlgebraMorphism:
    def __init__(self, source: Algebra, target: Algebra, matrix: SparseMatrix,
                 unital_morphism=False, check=True):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.unital_morphism = unital_morphism
        if check:
            self._validate()

    def _validate(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.target.dim, self.source.dim):
            raise ValueError("morphism matrix has wrong shape")
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.apply(self.source.mul_basis(i, j))
                rhs = self.target.mul_vec(self.apply_basis(i), self.apply_basis(j))
                if lhs != rhs:
                    raise ValueError(f"not multiplicative on basis pair ({i + 1},{j + 1})")
        if self.unital_morphism:
            if not (self.source.is_unital and self.target.is_unital):
                raise UnitError("unital_morphism set but an algebra has no unit")
            if self.apply(self.source.unit) != self.target.unit:
                raise UnitError("unit is not preserved")

    def apply_basis(self, i) -> Vector:
        return self.matrix.column(i)

    def apply(self, v: Vector) -> Vector:
        return self.matrix.apply(v)

    def is_surjective(self):
        return self.matrix.rank() == self.target.dim

    def kernel_vectors(self):
        return self.matrix.kernel_basis()


class Ideal:
    """Two-sided ideal given by a spanning set, stored in reduced basis form."""

    def __init__(self, ambient: Algebra, vectors, check=True, name=None):
        self.ambient = ambient
        span = Subspace(ambient.dim, vectors)
        self.basis = span.basis()
        self._span = span
        self.name = name
        self._algebra = None
        if check:
            self._validate()

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v: Vector):
        return self._span.contains(v)

    def _validate(self):
        for i in range(self.ambient.dim):
            for b in self.basis:
                if not self.contains(self.ambient.mul_vec({i: ONE}, b)):
                    raise NotAnIdeal(f"not closed under left multiplication by e{i + 1}")
                if not self.contains(self.ambient.mul_vec(b, {i: ONE})):
                    raise NotAnIdeal(f"not closed under right multiplication by e{i + 1}")

    def inclusion_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_columns(self.ambient.dim, self.basis)

    def coords(self, v: Vector) -> Vector:
        sol = self.inclusion_matrix().solve(v)
        if sol is None:
            raise ValueError("vector not in the ideal")
        return sol

    def as_algebra(self) -> Algebra:
        """The ideal with its induced multiplication, in the reduced basis."""
        if self._algebra is None:
            inc = self.inclusion_matrix()
            prods = []
            for i, x in enumerate(self.basis):
                for j, y in enumerate(self.basis):
                    prods.append(((i, j), self.ambient.mul_vec(x, y)))
            sols = inc.solve_many([p for _, p in prods])
            mul = {}
            for ((i, j), _), sol in zip(prods, sols):
                if sol is None:
                    raise NotAnIdeal("ideal not closed under its own multiplication")
                if sol:
                    mul[(i, j)] = sol
            self._algebra = Algebra(
                self.dim,
                [f"i{k + 1}" for k in range(self.dim)],
                mul,
                name=(self.name or "ideal"),
            )
        return self._algebra

    def nilpotency_order(self):
        """Least N with I^N = 0, or None when the power chain stabilises."""
        span = self._span
        power = 1
        while True:
            nxt = Subspace(self.ambient.dim)
            for x in self.basis:
                for row in span.basis():
                    nxt.add(self.ambient.mul_vec(x, row))
            power += 1
            if nxt.rank == 0:
                return power if span.rank else 1
            if nxt.rank == span.rank:
                return None
            span = nxt

    @property
    def is_nilpotent(self):
        return self.dim == 0 or self.nilpotency_order() is not None


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def matrix_algebra(A: Algebra, r: int) -> Algebra:
    """r x r matrices with entries in A; basis E_ij (x) a, row-major."""
    if r < 1:
        raise ValueError("r must be >= 1")
    d = A.dim
    dim = r * r * d

    def idx(i, j, a):
        return (i * r + j) * d + a

    labels = [f"E{i + 1}{j + 1}*{A.labels[a]}" for i in range(r) for j in range(r) for a in range(d)]
    mul = {}
    for i in range(r):
        for j in range(r):
            for a in range(d):
                for k in range(r):
                    for b in range(d):
                        prod = A.mul_basis(a, b)
                        if prod:
                            mul[(idx(i, j, a), idx(j, k, b))] = {
                                idx(i, k, c): v for c, v in prod.items()
                            }
    unit = None
    if A.is_unital:
        unit = {}
        for i in range(r):
            for a, v in A.unit.items():
                unit[idx(i, i, a)] = v
    return Algebra(dim, labels, mul, unit=unit, name=f"M{r}({A.name or 'A'})")


def matrix_units_trace(A: Algebra, r: int, v: Vector) -> Vector:
    """Trace of an element of matrix_algebra(A, r): sum of diagonal blocks."""
    d = A.dim
    out = {}
    for key, c in v.items():
        pos, a = divmod(key, d)
        i, j = divmod(pos, r)
        if i == j:
            s = out.get(a, Fraction(0)) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
    return out


def unitalization(A: Algebra):
    """Formally adjoin a unit; returns (A_plus, inclusion)."""
    dim = A.dim + 1
    mul = {}
    for i in range(dim):
        mul[(0, i)] = {i: ONE}
        mul[(i, 0)] = {i: ONE}
    for (i, j), v in A.mul.items():
        mul[(i + 1, j + 1)] = {k + 1: c for k, c in v.items()}
    labels = ["1"] + list(A.labels)
    aug = {0: ONE}
    plus = Algebra(dim, labels, mul, unit={0: ONE}, augmentation=aug,
                   name=f"({A.name or 'A'})+")
    inc = AlgebraMorphism(
        A, plus, SparseMatrix(dim, A.dim, {(i + 1, i): ONE for i in range(A.dim)})
    )
    return plus, inc


def tensor(A: Algebra, B: Algebra) -> Algebra:
    """A (x) B with componentwise product; all generators in degree zero."""
    dim = A.dim * B.dim

    def idx(a, b):
        return a * B.dim + b

    labels = [f"{la}(x){lb}" for la in A.labels for lb in B.labels]
    mul = {}
    for (a1, a2), va in A.mul.items():
        for (b1, b2), vb in B.mul.items():
            mul[(idx(a1, b1), idx(a2, b2))] = {
                idx(ka, kb): ca * cb for ka, ca in va.items() for kb, cb in vb.items()
            }
    unit = None
    if A.is_unital and B.is_unital:
        unit = {idx(ka, kb): ca * cb for ka, ca in A.unit.items() for kb, cb in B.unit.items()}
    aug = None
    if A.augmentation is not None and B.augmentation is not None:
        aug = {
            idx(ka, kb): ca * cb
            for ka, ca in A.augmentation.items()
            for kb, cb in B.augmentation.items()
        }
    return Algebra(dim, labels, mul, unit=unit, augmentation=aug,
                   name=f"{A.name or 'A'}(x){B.name or 'B'}")


def product_algebra(A: Algebra, B: Algebra) -> Algebra:
    """Direct product A x B."""
    dim = A.dim + B.dim
    mul = {}
    for (i, j), v in A.mul.items():
        mul[(i, j)] = dict(v)
    for (i, j), v in B.mul.items():
        mul[(A.dim + i, A.dim + j)] = {A.dim + k: c for k, c in v.items()}
    labels = [f"l:{x}" for x in A.labels] + [f"r:{x}" for x in B.labels]
    unit = None
    if A.is_unital and B.is_unital:
        unit = dict(A.unit)
        unit.update({A.dim + k: c for k, c in B.unit.items()})
    return Algebra(dim, labels, mul, unit=unit, name=f"{A.name or 'A'}x{B.name or 'B'}")


def augmentation_ideal(B: Algebra) -> Ideal:
    """Kernel of the augmentation; must be nilpotent (Artinian local case)."""
    if B.augmentation is None:
        raise NotAugmented("algebra carries no augmentation")
    functional = SparseMatrix(1, B.dim, {(0, k): c for k, c in B.augmentation.items()})
    ideal = Ideal(B, functional.kernel_basis(), name=f"Aug({B.name or 'B'})")
    if not ideal.is_nilpotent:
        raise IdealNotNilpotent("augmentation ideal is not nilpotent")
    return ideal


def quotient(A: Algebra, I: Ideal):
    """A/I with the complement-coordinate basis; returns (B, projection)."""
    if I.ambient is not A:
        raise ValueError("ideal does not live in this algebra")
    pivots = set(I._span.pivot_cols())
    complement = [c for c in range(A.dim) if c not in pivots]
    index = {c: k for k, c in enumerate(complement)}

    def project(v: Vector) -> Vector:
        r = I._span.reduce(v)
        return {index[c]: val for c, val in r.items()}

    dim = len(complement)
    mul = {}
    for x in range(dim):
        for y in range(dim):
            prod = project(A.mul_vec({complement[x]: ONE}, {complement[y]: ONE}))
            if prod:
                mul[(x, y)] = prod
    unit = project(A.unit) if A.is_unital else None
    labels = [A.labels[c] for c in complement]
    B = Algebra(dim, labels, mul, unit=unit or None,
                name=f"{A.name or 'A'}/{I.name or 'I'}")
    cols = [project({i: ONE}) for i in range(A.dim)]
    proj = AlgebraMorphism(A, B, SparseMatrix.from_columns(dim, cols))
    return B, proj


def commutator_subspace(A: Algebra):
    """Reduced basis of span{xy - yx}."""
    span = Subspace(A.dim)
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            lhs = A.mul_vec({i: ONE}, {j: ONE})
            rhs = A.mul_vec({j: ONE}, {i: ONE})
            span.add(vec_sub_safe(lhs, rhs))
    return span.basis()


def vec_sub_safe(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for k, val in v.items():
        s = out.get(k, Fraction(0)) - val
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out
