import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bareiss_det, generic_tail, random_system, rationals, read_fixture, shifted
from simrec.decouple import (
    RegularRecurrence,
    augment,
    char_poly,
    decouple_affine,
    decouple_homogeneous,
    direct_affine_small,
)
from simrec.errors import StructuralConditionError, UnsupportedOrderError
from simrec.exact import Polynomial
from simrec.model import RecurrenceSystem, parse_system
from simrec.oracle import check_regular, iterate

F = Fraction
LAM = Polynomial.variable()
SYMMETRIC = parse_system(read_fixture("symmetric_weights.rec"))


class TestCharPoly:
    def test_scalar(self):
        assert char_poly([[5]]) == Polynomial([5, -1])

    def test_two_by_two(self):
        # trace 5, det -2
        assert char_poly([[1, 2], [3, 4]]) == Polynomial([-2, -5, 1])

    def test_symmetric_system(self):
        assert char_poly(SYMMETRIC.coefficients) == Polynomial([0, -18, 9, -1])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            char_poly([[1, 2]])
        with pytest.raises(ValueError):
            char_poly([])

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_bareiss_at_sample_points(self, n):
        rng = random.Random(n)
        for _ in range(20):
            A = random_system(rng, n).coefficients
            phi = char_poly(A)
            assert phi.degree == n and phi.leading == (-1) ** n
            for t in (F(0), F(1), F(-2), F(3, 7)):
                assert phi(t) == bareiss_det(shifted(A, t))


class TestAugment:
    def test_shape(self):
        aug = augment(SYMMETRIC).entries
        assert aug == ((2, 4, 0, 1), (1, 3, 2, 1), (0, 2, 4, 1), (0, 0, 0, 1))

    def test_identity_system(self):
        s = RecurrenceSystem.build([[1, 0], [0, 1]], affine=[0, 0])
        assert augment(s).entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    @given(st.integers(1, 4).flatmap(lambda n: st.lists(rationals, min_size=n * n + n, max_size=n * n + n).map(lambda v: (n, v))))
    def test_factorizes(self, drawn):
        n, vals = drawn
        s = RecurrenceSystem.build([vals[i * n:(i + 1) * n] for i in range(n)], vals[n * n:])
        assert char_poly(augment(s).entries) == (1 - LAM) * char_poly(s.coefficients)


class TestSignRules:
    @given(rationals)
    def test_order_one_homogeneous(self, a):
        rec = decouple_homogeneous(RecurrenceSystem.build([[a]]))
        assert rec.betas == (a,)

    @given(rationals, rationals, rationals, rationals)
    def test_order_two_homogeneous(self, a, b, c, d):
        rec = decouple_homogeneous(RecurrenceSystem.build([[a, b], [c, d]]))
        assert rec.betas == (a + d, b * c - a * d)

    @given(rationals, rationals)
    def test_order_one_augmented(self, a, k):
        rec = decouple_affine(RecurrenceSystem.build([[a]], [k]))
        assert rec.betas == (1 + a, -a)

    def test_symmetric_system(self):
        assert decouple_homogeneous(RecurrenceSystem.build(SYMMETRIC.coefficients)).betas == (9, -18, 0)
        assert decouple_affine(SYMMETRIC).betas == (10, -27, 18, 0)

    def test_homogeneous_requires_zero_affine(self):
        with pytest.raises(StructuralConditionError):
            decouple_homogeneous(SYMMETRIC)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_augmented_coefficients_sum_to_one(self, n):
        rng = random.Random(100 + n)
        for _ in range(10):
            assert sum(decouple_affine(random_system(rng, n)).betas) == 1


class TestDirectTail:
    def test_symmetric_example(self):
        rec = direct_affine_small(SYMMETRIC)
        assert rec.betas == (9, -18, 0)
        assert rec.tail[0] == -2
        a = iterate(SYMMETRIC, 3).column("a")
        assert a == (0, 1, 7, 43)
        assert 9 * a[2] - 18 * a[1] + 0 * a[0] + rec.tail[0] == 43

    def test_order_one(self):
        rec = direct_affine_small(RecurrenceSystem.build([[F(1, 2)]], [3]))
        assert rec.betas == (F(1, 2),) and rec.tail == (3,)

    def test_order_four_unsupported(self):
        with pytest.raises(UnsupportedOrderError):
            direct_affine_small(random_system(random.Random(0), 4))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tail_matches_matrix_power_oracle(self, n):
        rng = random.Random(7 * n)
        for _ in range(40):
            s = random_system(rng, n)
            rec = direct_affine_small(s)
            assert list(rec.tail) == generic_tail(s, rec.betas)
            assert check_regular(iterate(s, n + 6), rec)

    def test_homogeneous_system_has_zero_tail(self):
        rng = random.Random(3)
        s = random_system(rng, 3)
        s = RecurrenceSystem.build(s.coefficients, initial=s.initial)
        assert direct_affine_small(s).tail == (0, 0, 0)


class TestRegularRecurrence:
    def test_validation(self):
        with pytest.raises(ValueError):
            RegularRecurrence((), "homogeneous")
        with pytest.raises(ValueError):
            RegularRecurrence((F(1),), "direct-tail")
        with pytest.raises(ValueError):
            RegularRecurrence((F(1),), "homogeneous", (F(0),))
        with pytest.raises(ValueError):
            RegularRecurrence((F(2), F(0)), "augmented")

    def test_predict(self):
        rec = RegularRecurrence((F(1), F(1)), "homogeneous")
        assert rec.predict([F(1), F(1), F(2), F(3)]) == 5
        with pytest.raises(ValueError):
            rec.predict([F(1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_decoupled_recurrences_hold(n, seed):
    s = random_system(random.Random(seed), n)
    traj = iterate(s, 2 * n + 4)
    assert check_regular(traj, decouple_affine(s))
    homogeneous = RecurrenceSystem.build(s.coefficients, initial=s.initial)
    assert check_regular(iterate(homogeneous, 2 * n + 3), decouple_homogeneous(homogeneous))
