from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hochhom import algebra as alg
from hochhom.algebra import AlgebraError, RatMatrix


def xy_square_zero():
    return alg.GradedAlgebra((1, 1), ((2, 0), (1, 1), (0, 2)), name="Q[x,y]/(x2,xy,y2)").to_fd()


CORPUS = [
    (alg.ground_field(), 0),
    (alg.truncated_poly(2), 1),
    (alg.truncated_poly(3), 2),
    (alg.truncated_poly(4), 3),
    (alg.split_pair(), 0),
    (alg.product_of_fields(2), 0),
    (xy_square_zero(), 3),
]


@pytest.mark.parametrize("a", [c[0] for c in CORPUS], ids=lambda a: a.name)
def test_presets_are_algebras(a):
    a.check()


@pytest.mark.parametrize("a,omega", CORPUS, ids=lambda x: getattr(x, "name", str(x)))
def test_omega1_two_ways(a, omega):
    k = alg.omega1_kernel(a)
    l = alg.omega1_leibniz(a)
    assert k.dim == l.dim == omega
    phi = alg.omega1_isomorphism(l, k)
    assert phi is not None
    assert phi.rows == phi.cols == omega


def test_omega1_isomorphism_is_a_module_map():
    a = alg.truncated_poly(3)
    k, l = alg.omega1_kernel(a), alg.omega1_leibniz(a)
    phi = alg.omega1_isomorphism(l, k)
    for i in range(a.dim):
        assert phi @ l.module.action[i] == k.module.action[i] @ phi
        # d is carried to d
        assert phi.apply(l.d.apply({i: 1})) == k.d.apply({i: 1})


def test_unit_first_rebasing():
    a = alg.product_of_fields(3)
    assert not a.unit_is_first
    b, P = a.unit_first()
    b.check()
    assert b.unit == {0: 1}
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = P.apply(b.multiply({i: 1}, {j: 1}))
            rhs = a.multiply(P.apply({i: 1}), P.apply({j: 1}))
            assert lhs == rhs


def test_nilradical():
    dims = [alg.nilradical(a).dim for a, _ in CORPUS]
    assert dims == [0, 1, 2, 3, 0, 0, 2]
    assert alg.is_semisimple(alg.split_pair())
    assert not alg.is_semisimple(alg.truncated_poly(2))


def test_localization_examples():
    sp = alg.split_pair()
    loc = alg.localize(sp, {1: 1})
    assert loc.algebra.dim == 1
    loc.algebra.check()
    assert alg.localize(sp, {0: 1}).algebra.dim == 2
    nil = alg.localize(alg.truncated_poly(3), {1: 1})
    assert nil.zero
    # a unit stays a unit
    assert alg.localize(alg.truncated_poly(3), {0: 1, 1: 5}).algebra.dim == 3


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_localization_is_all_or_nothing_for_local_ring(c):
    a = alg.truncated_poly(3)
    s = {i: v for i, v in enumerate(c) if v}
    loc = alg.localize(a, s)
    assert loc.algebra.dim == (3 if c[0] else 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_localization_of_product(c):
    a = alg.product_of_fields(3)
    s = {i: v for i, v in enumerate(c) if v}
    loc = alg.localize(a, s)
    assert loc.algebra.dim == sum(1 for v in c if v)
    # the structure map is multiplicative
    for i in range(3):
        for j in range(3):
            lhs = loc.proj.apply(a.multiply({i: 1}, {j: 1}))
            rhs = loc.algebra.multiply(loc.proj.apply({i: 1}), loc.proj.apply({j: 1}))
            assert lhs == rhs


def test_localize_module():
    a = alg.product_of_fields(2)
    loc = alg.localize(a, {0: 1})
    m = alg.localize_module(alg.regular_module(a), loc)
    assert m.dim == 1
    m.check()


def test_sym_and_ext_powers():
    q = alg.ground_field()
    f2 = alg.free_module(q, 2)
    assert alg.sym_power(f2, 2).dim == 3
    assert alg.ext_power(f2, 2).dim == 1
    assert alg.ext_power(alg.free_module(q, 1), 2).dim == 0
    a = alg.truncated_poly(2)
    assert alg.sym_power(alg.free_module(a, 2), 2).dim == 6
    assert alg.ext_power(alg.free_module(a, 3), 2).dim == 2 * 3
    assert alg.sym_power(alg.regular_module(a), 0).dim == 2


def test_modules_check():
    a = alg.truncated_poly(3)
    for m in (alg.regular_module(a), alg.free_module(a, 2), alg.residue_module(a), alg.zero_module(a)):
        m.check()
    bad = alg.FDModule(a, 1, (RatMatrix.identity(1), RatMatrix.identity(1), RatMatrix.zero(1, 1)))
    with pytest.raises(AlgebraError):
        bad.check()


def test_hom_space_dims():
    a = alg.truncated_poly(2)
    k, r = alg.residue_module(a), alg.regular_module(a)
    assert alg.hom_space(r, r).dim == 2
    assert alg.hom_space(k, r).dim == 1  # socle
    assert alg.hom_space(r, k).dim == 1
    assert alg.hom_space(k, k).dim == 1


def test_check_rejects_noncommutative():
    mult = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]
    a = alg.FDAlgebra.from_structure_constants(mult, {0: 1})
    a.check()
    bad = alg.FDAlgebra.from_structure_constants([[{0: 1}, {1: 1}], [{0: 1}, {0: 1}]], {0: 1})
    with pytest.raises(AlgebraError):
        bad.check()


@pytest.mark.parametrize("m,w", [(1, 0), (1, 4), (2, 3), (3, 2)])
def test_graded_weight_basis_counts(m, w):
    g = alg.poly(m)
    assert len(g.weight_basis(w)) == alg.monomial_count(m, w) == comb(w + m - 1, m - 1)


def test_graded_quotient():
    g = alg.GradedAlgebra((1,), ((3,),))
    assert g.hilbert(4) == [1, 1, 1, 0, 0]
    assert g.is_finite()
    assert g.multiply((2,), (1,)) is None
    fd = g.to_fd()
    fd.check()
    assert fd.dim == 3


def test_predicted_dims():
    # Omega^j and Sym^j Omega^1 of Q[x_1..x_m]
    assert alg.smooth_hodge_predicted_dim(1, 1, 1, 3) == 1
    assert alg.smooth_hodge_predicted_dim(2, 1, 2, 2) == 1
    assert alg.smooth_hodge_predicted_dim(2, 1, 2, 1) == 0
    assert alg.smooth_hodge_predicted_dim(2, 2, 2, 2) == 3
    assert alg.smooth_hodge_predicted_dim(1, 2, 2, 1) == 0


def test_tensor_budget():
    with pytest.raises(alg.SizeBudgetExceeded):
        alg.tensor_power_index(alg.truncated_poly(4), 20, budget=10**6)
