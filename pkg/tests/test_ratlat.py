import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyfan import ratlat
from polyfan.errors import ZeroVector
from polyfan.ratlat import (det, hermite_normal_form, kernel_basis,
                            lattice_denominator, primitive, rank,
                            smith_normal_form, solve_rational,
                            spans_saturated_basis)


def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b)))
                       for j in range(len(b[0]))) for i in range(len(a)))


class TestPrimitive:
    def test_gcd_normalization(self):
        assert primitive((2, 4)) == (1, 2)

    def test_single_nonzero(self):
        assert primitive((0, 0, 3)) == (0, 0, 1)

    def test_sign_preserved(self):
        assert primitive((-2, 2)) == (-1, 1)

    def test_rational_input(self):
        assert primitive((Fraction(1, 2), Fraction(3, 4))) == (2, 3)

    def test_zero_raises(self):
        with pytest.raises(ZeroVector):
            primitive((0, 0))

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=5),
           st.integers(1, 7))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_and_scale_invariant(self, coords, k):
        v = tuple(coords)
        if ratlat.is_zero(v):
            return
        p = primitive(v)
        assert primitive(p) == p
        assert primitive(ratlat.vscale(k, v)) == p


class TestSmithNormalForm:
    def test_diag_2_3(self):
        divisors, left, right = smith_normal_form(((2, 0), (0, 3)))
        assert divisors == [1, 6]

    def test_identity(self):
        divisors, _, _ = smith_normal_form(
            ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert divisors == [1, 1, 1]

    def test_diag_2_2(self):
        divisors, _, _ = smith_normal_form(((2, 0), (0, 2)))
        assert divisors == [2, 2]

    @pytest.mark.parametrize("seed", range(25))
    def test_transforms_exact(self, seed):
        rng = random.Random(seed)
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-9, 9) for _ in range(cols))
                  for _ in range(rows))
        divisors, left, right = smith_normal_form(m)
        prod = mat_mul(mat_mul(left, m), right)
        for i in range(rows):
            for j in range(cols):
                expect = divisors[i] if i == j and i < len(divisors) else 0
                assert prod[i][j] == expect
        assert abs(det(left)) == 1
        assert abs(det(right)) == 1
        for a, b in zip(divisors, divisors[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0


class TestSaturation:
    def test_identity_rows(self):
        assert spans_saturated_basis([(1, 0), (0, 1)])

    def test_single_primitive(self):
        assert spans_saturated_basis([(1, 2)])

    def test_index_two(self):
        assert not spans_saturated_basis([(2, 0), (0, 1)])

    def test_dependent_rows(self):
        assert not spans_saturated_basis([(1, 0), (2, 0)])


class TestSolveRational:
    def test_identity(self):
        assert solve_rational(((1, 0), (0, 1)), (1, 2)) == (1, 2)

    def test_one_unknown(self):
        # (1,0) + c*(0,1) in span{(2,3)}: unknowns (lambda, c) with
        # 2*lambda = 1 and 3*lambda - c = 0, so c = 3/2
        rows = ((2, 0), (3, -1))
        sol = solve_rational(rows, (1, 0))
        assert sol == (Fraction(1, 2), Fraction(3, 2))

    def test_inconsistent(self):
        assert solve_rational(((1,), (1,)), (0, 1)) is None

    @pytest.mark.parametrize("seed", range(15))
    def test_solution_is_exact(self, seed):
        rng = random.Random(100 + seed)
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        rows = tuple(tuple(rng.randint(-5, 5) for _ in range(n))
                     for _ in range(m))
        b = tuple(rng.randint(-5, 5) for _ in range(m))
        sol = solve_rational(rows, b)
        if sol is not None:
            for row, target in zip(rows, b):
                assert sum(r * x for r, x in zip(row, sol)) == target


class TestHermite:
    def test_canonical_basis(self):
        h = hermite_normal_form(((2, 4), (1, 1)))
        assert h == ((1, 1), (0, 2))

    def test_span_preserved(self):
        rng = random.Random(5)
        for _ in range(20):
            rows = [tuple(rng.randint(-6, 6) for _ in range(3))
                    for _ in range(rng.randint(1, 4))]
            h = hermite_normal_form(rows)
            assert rank(list(h)) == rank(rows)
            for r in rows:
                assert ratlat.in_span(list(h) or [(0, 0, 0)], r)


class TestKernelAndLattice:
    def test_kernel(self):
        k = kernel_basis([(1, 1, 0)], 3)
        assert len(k) == 2
        for v in k:
            assert v[0] + v[1] == 0 or v[0] == v[1] == 0

    def test_lattice_denominator(self):
        assert lattice_denominator((Fraction(1, 2), Fraction(0)),
                                   [(1, 0), (0, 1)]) == 2
        assert lattice_denominator((Fraction(2), Fraction(3)),
                                   [(1, 0), (0, 1)]) == 1
        assert lattice_denominator((Fraction(1, 3),), [(1,)]) == 3
