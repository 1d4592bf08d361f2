import random
from fractions import Fraction

import pytest

from chainlab.algebras import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    Ideal,
    augmentation_ideal,
    commutator_subspace,
    matrix_algebra,
    matrix_units_trace,
    product_algebra,
    quotient,
    tensor,
    unitalization,
)
from chainlab.errors import AssociativityError, IdealNotNilpotent, NotAnIdeal, UnitError
from chainlab.presets import (
    dual_numbers,
    fat_point,
    product_qq,
    rationals,
    square_zero,
    truncated_poly,
    upper_triangular,
)
from chainlab.sparse import SparseMatrix

ONE = Fraction(1)


def test_presets_validate():
    for A in [rationals(), dual_numbers(), truncated_poly(4), square_zero(2),
              fat_point(), product_qq(), upper_triangular(2), upper_triangular(3)]:
        assert A.dim == len(A.labels)


def test_associativity_error_names_triple():
    # e1e1 = e2, e2e2 = e2, mixed products zero: (e1e1)e2 = e2 but e1(e1e2) = 0
    mul = {(0, 0): {1: ONE}, (1, 1): {1: ONE}}
    with pytest.raises(AssociativityError) as exc:
        Algebra(2, None, mul)
    assert exc.value.triple == (1, 1, 2)


def test_unit_error():
    with pytest.raises(UnitError):
        Algebra(1, None, {}, unit={0: ONE})  # zero multiplication cannot be unital


def test_matrix_algebra_dims_and_unit():
    M2 = matrix_algebra(rationals(), 2)
    assert M2.dim == 4
    assert M2.unit == {0: ONE, 3: ONE}
    M2e = matrix_algebra(dual_numbers(), 2)
    assert M2e.dim == 8
    matrix_algebra(truncated_poly(3), 2)  # associativity revalidated on build


def test_matrix_trace():
    M2 = matrix_algebra(dual_numbers(), 2)
    v = {0 * 2 + 1: ONE, 3 * 2 + 0: Fraction(5)}  # e*E11 + 1*E22
    tr = matrix_units_trace(dual_numbers(), 2, v)
    assert tr == {1: ONE, 0: Fraction(5)}


def test_unitalization_of_zero_mult_is_dual_numbers():
    plus, inc = unitalization(square_zero(1))
    E = dual_numbers()
    assert plus.dim == 2 and plus.mul == E.mul and plus.unit == E.unit
    assert inc.apply_basis(0) == {1: ONE}


def test_unitalization_recovers_augmented_presets():
    for A in [dual_numbers(), truncated_poly(3), truncated_poly(4), fat_point()]:
        ideal = augmentation_ideal(A)
        plus, _ = unitalization(ideal.as_algebra())
        assert plus.dim == A.dim
        assert plus.mul == A.mul and plus.unit == A.unit, A.name


def test_unitalization_of_random_graded_nonunital():
    rng = random.Random(3)
    for _ in range(10):
        # products land in the last basis vector, which multiplies to zero:
        # associative for any coefficients
        mul = {}
        for i in range(2):
            for j in range(2):
                c = rng.randint(-3, 3)
                if c:
                    mul[(i, j)] = {2: Fraction(c)}
        A = Algebra(3, None, mul)
        unitalization(A)  # revalidates associativity on build


def test_tensor_unit_and_commutative_flag():
    Q = rationals()
    E = dual_numbers()
    T = tensor(Q, E)
    assert T.dim == E.dim and T.mul == E.mul
    assert tensor(E, truncated_poly(3)).commutative
    M2 = matrix_algebra(Q, 2)
    assert not tensor(M2, E).commutative


def test_tensor_matrix_algebra_isomorphism():
    E = dual_numbers()
    A = tensor(matrix_algebra(rationals(), 2), E)
    B = matrix_algebra(E, 2)
    assert A.dim == B.dim == 8
    assert A.mul == B.mul  # same structure constants in matching index order
    assert A.unit == B.unit


def test_tensor_associative_on_preset_triples():
    A, B, C = dual_numbers(), truncated_poly(3), product_qq()
    left = tensor(tensor(A, B), C)
    right = tensor(A, tensor(B, C))
    assert left.mul == right.mul and left.dim == right.dim


def test_augmentation_ideal_cases():
    ideal = augmentation_ideal(dual_numbers())
    assert ideal.dim == 1 and ideal.nilpotency_order() == 2
    ideal4 = augmentation_ideal(truncated_poly(4))
    assert ideal4.dim == 3 and ideal4.nilpotency_order() == 4
    with pytest.raises(IdealNotNilpotent):
        augmentation_ideal(product_qq())  # idempotent complement, not nilpotent


def test_quotient_examples():
    E = dual_numbers()
    ideal = augmentation_ideal(E)
    B, proj = quotient(E, ideal)
    assert B.dim == 1 and B.is_unital
    assert proj.is_surjective()

    UT = upper_triangular(2)
    strict = Ideal(UT, [{1: ONE}])  # E12 spans the strictly upper part
    B2, proj2 = quotient(UT, strict)
    QQ = product_qq()
    assert B2.dim == 2 and B2.mul == QQ.mul

    full = Ideal(E, [{0: ONE}, {1: ONE}])
    Z, _ = quotient(E, full)
    assert Z.dim == 0


def test_not_an_ideal_detected():
    M2 = matrix_algebra(rationals(), 2)
    with pytest.raises(NotAnIdeal):
        Ideal(M2, [{0: ONE}])  # span(E11) is not two-sided


def test_ideal_closure_property():
    UT = upper_triangular(2)
    strict = Ideal(UT, [{1: ONE}])
    for i in range(UT.dim):
        for b in strict.basis:
            assert strict.contains(UT.mul_vec({i: ONE}, b))
            assert strict.contains(UT.mul_vec(b, {i: ONE}))


def test_commutator_subspace():
    assert commutator_subspace(truncated_poly(4)) == []
    assert len(commutator_subspace(matrix_algebra(rationals(), 2))) == 3
    assert commutator_subspace(square_zero(3)) == []


def test_bimodule_regular_and_morphism():
    E = dual_numbers()
    M = Bimodule.regular(E)
    assert M.dim == 2
    proj = AlgebraMorphism(E, rationals(), SparseMatrix(1, 2, {(0, 0): ONE}))
    MB = Bimodule.over_morphism(proj)
    assert MB.dim == 1
    # epsilon acts by zero on B
    assert MB.right_basis(0, 1) == {}


def test_morphism_validation():
    E = dual_numbers()
    with pytest.raises(ValueError):
        AlgebraMorphism(E, E, SparseMatrix(2, 2, {(0, 1): ONE, (1, 0): ONE}))  # swap is not multiplicative


def test_product_algebra():
    P = product_algebra(rationals(), rationals())
    assert P.dim == 2 and P.unit == {0: ONE, 1: ONE}
    assert P.mul == product_qq().mul
