import random
from fractions import Fraction

from chainlab.sparse import QuotientSpace, SparseMatrix, Subspace

from oracle import dense_rank


def random_matrix(rng, nrows, ncols, fill=0.3, denominators=True):
    ent = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < fill:
                num = rng.randint(-5, 5)
                den = rng.randint(1, 4) if denominators else 1
                ent[(i, j)] = Fraction(num, den)
    return SparseMatrix(nrows, ncols, ent)


def test_identity_full_rank():
    M = SparseMatrix.identity(3)
    assert M.rank() == 3
    assert M.kernel_basis() == []


def test_zero_matrix_kernel():
    M = SparseMatrix.zeros(4, 4)
    assert M.rank() == 0
    ker = M.kernel_basis()
    assert len(ker) == 4
    for v in ker:
        assert len(v) == 1


def test_rank_matches_dense_oracle_on_seeded_suite():
    rng = random.Random(2024)
    for nrows, ncols, fill in [(10, 10, 0.3), (20, 30, 0.15), (60, 80, 0.05), (80, 80, 0.05)]:
        M = random_matrix(rng, nrows, ncols, fill)
        r = M.rank()
        assert r == dense_rank(M)
        rank, ker = M.rank_kernel()
        assert rank == r
        assert rank + len(ker) == ncols
        for v in ker:
            assert not M.apply(v)
        span = Subspace(ncols)
        for v in ker:
            assert span.add(v), "kernel vectors must be independent"


def test_solve_consistent_and_inconsistent():
    rng = random.Random(5)
    for _ in range(25):
        M = random_matrix(rng, rng.randint(1, 10), rng.randint(1, 10))
        x = {j: Fraction(rng.randint(-3, 3)) for j in range(M.ncols) if rng.random() < 0.5}
        b = M.apply(x)
        sol = M.solve(b)
        assert sol is not None
        assert M.apply(sol) == b
    M = SparseMatrix.from_dense([[1, 0], [1, 0]])
    assert M.solve({0: Fraction(1), 1: Fraction(2)}) is None


def test_solve_many_mixed():
    M = SparseMatrix.from_dense([[1, 2], [2, 4]])
    good = {0: Fraction(1), 1: Fraction(2)}
    bad = {0: Fraction(1)}
    sols = M.solve_many([good, bad])
    assert sols[0] is not None and M.apply(sols[0]) == good
    assert sols[1] is None


def test_matmul_and_tensor():
    A = SparseMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseMatrix.from_dense([[1, 0], [3, 1]])
    assert (A @ B).to_dense() == SparseMatrix.from_dense([[7, 2], [3, 1]]).to_dense()
    T = A.tensor(B)
    assert T.nrows == 4 and T.ncols == 4
    assert T.get(0, 0) == 1 and T.get(1, 0) == 3 and T.get(0, 2) == 2


def test_image_basis_spans_columns():
    rng = random.Random(8)
    M = random_matrix(rng, 12, 20, 0.2)
    basis = M.image_basis()
    assert len(basis) == M.rank()
    span = Subspace(M.nrows, basis)
    for col in M.columns():
        assert span.contains(col)


def test_subspace_reduce_canonical():
    s = Subspace(3)
    s.add({0: Fraction(1), 1: Fraction(1)})
    r1 = s.reduce({0: Fraction(2)})
    r2 = s.reduce({1: Fraction(-2)})
    assert r1 == r2  # e0 and -e1 agree modulo span(e0 + e1)
    assert s.contains({0: Fraction(3), 1: Fraction(3)})


def test_quotient_space_projection_section():
    q = QuotientSpace(4, [{0: Fraction(1), 2: Fraction(1)}])
    assert q.qdim == 3
    for j in range(q.qdim):
        v = q.lift({j: Fraction(1)})
        assert q.project(v) == {j: Fraction(1)}
    # projection kills the span
    assert q.project({0: Fraction(1), 2: Fraction(1)}) == {}


def test_empty_shapes():
    M = SparseMatrix.zeros(0, 5)
    assert M.rank() == 0
    assert len(M.kernel_basis()) == 5
    N = SparseMatrix.zeros(5, 0)
    assert N.rank() == 0
    assert N.kernel_basis() == []
