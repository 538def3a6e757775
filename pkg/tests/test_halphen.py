import pytest

from triforms.errors import DegenerateDenominator
from triforms.halphen import (
    Normalization,
    TriangleType,
    derive_params,
    eisenstein_one,
    eisenstein_two,
    generator_range,
    halphen_residuals,
    hauptmodul_from_halphen,
    prescribed_t2_slope,
    solve_halphen,
)
from triforms.rationals import QQ
from triforms.series import LaurentSeries, theta_derivative

SAMPLE_TYPES = [
    TriangleType(2, 3), TriangleType(2, 5), TriangleType(3, 4),
    TriangleType(3, 3), TriangleType(4, 7), TriangleType(2, None),
    TriangleType(5, None),
]


class TestTriangleType:
    def test_parse(self):
        assert TriangleType.parse("2,3") == TriangleType(2, 3)
        assert TriangleType.parse("4,inf") == TriangleType(4, None)

    def test_rejects_non_hyperbolic(self):
        with pytest.raises(ValueError):
            TriangleType(2, 2)
        with pytest.raises(ValueError):
            TriangleType(3, 2)

    def test_rejects_small_orders(self):
        with pytest.raises(ValueError):
            TriangleType(1, 5)

    def test_conductor(self):
        assert TriangleType(2, 5).conductor == 20
        assert TriangleType(3, None).conductor == 6


class TestDeriveParams:
    def test_2_3(self):
        p = derive_params(TriangleType(2, 3))
        assert (p.a, p.b, p.c) == (QQ(5, 12), QQ(1, 12), QQ(7, 12))

    def test_cusp_double_equal_parameters(self):
        # (m, inf): a = b = (m-1)/(2m)
        for m in (2, 3, 5, 7):
            p = derive_params(TriangleType(m, None))
            assert p.a == p.b == QQ(m - 1, 2 * m)

    def test_2_inf(self):
        p = derive_params(TriangleType(2, None))
        assert (p.a, p.b, p.c) == (QQ(1, 4), QQ(1, 4), QQ(3, 4))


class TestSolve:
    def test_prescribed_slope_2_3(self):
        # 4*3 + 4 - 2*9 - 9 = -11
        assert prescribed_t2_slope(TriangleType(2, 3)) == -11
        sol = solve_halphen(TriangleType(2, 3), 3)
        assert sol.t2.coeffs[0] == -1
        assert sol.t2.coeffs[1] == -11

    def test_prescribed_slope_2_inf(self):
        sol = solve_halphen(TriangleType(2, None), 3)
        assert sol.t2.coeffs[1] == -3

    def test_initial_conditions(self):
        for tri in SAMPLE_TYPES:
            sol = solve_halphen(tri, 4)
            assert sol.t1.coeffs[0] == 0
            assert sol.t3.coeffs[0] == 0
            assert sol.t2.coeffs[0] == -1

    def test_order_one_oracle_2_3(self):
        # hand-solved order-1 system: a t11 + (1-a) t31 = 0 and
        # t21 = (1-b)(t11 + t31), with the prescribed t21 = -11
        sol = solve_halphen(TriangleType(2, 3), 2)
        a, b = QQ(5, 12), QQ(1, 12)
        t11, t31 = sol.t1.coeffs[1], sol.t3.coeffs[1]
        assert a * t11 + (1 - a) * t31 == 0
        assert sol.t2.coeffs[1] == (1 - b) * (t11 + t31)
        assert t31 - t11 == 72

    def test_linear_gap_formula(self):
        # t3_1 - t1_1 = 2 m1^2 m2^2 (2 m1^2 when m2 = inf)
        for tri in SAMPLE_TYPES:
            sol = solve_halphen(tri, 2)
            gap = sol.t3.coeffs[1] - sol.t1.coeffs[1]
            m2 = tri.m2 if tri.m2_finite else 1
            assert gap == 2 * tri.m1 ** 2 * m2 ** 2

    def test_symmetric_normalization_note(self):
        assert solve_halphen(TriangleType(3, 3), 2).normalization_note \
            is Normalization.SYMMETRIC_NORMALIZED
        assert solve_halphen(TriangleType(2, 3), 2).normalization_note \
            is Normalization.PRESCRIBED_T2

    def test_back_substitution(self):
        for tri in SAMPLE_TYPES:
            sol = solve_halphen(tri, 25)
            for res in halphen_residuals(sol):
                assert res.is_zero()


class TestHauptmodul:
    def test_pole_structure(self):
        sol = solve_halphen(TriangleType(2, 3), 10)
        j = hauptmodul_from_halphen(sol)
        assert j.lowest_exponent == -1
        assert j.coefficient(-1) == QQ(1, 72)

    def test_reciprocal_linear_coefficient(self):
        sol = solve_halphen(TriangleType(2, 3), 10)
        j = hauptmodul_from_halphen(sol)
        assert (1 / j).coefficient(1) == 72

    def test_degenerate_denominator_guard(self):
        sol = solve_halphen(TriangleType(2, 3), 5)
        broken = type(sol)(sol.triangle, sol.t3, sol.t2, sol.t3,
                           sol.normalization_note)
        with pytest.raises(DegenerateDenominator):
            hauptmodul_from_halphen(broken)


class TestGenerators:
    def test_constant_term_one(self):
        for tri in SAMPLE_TYPES[:4]:
            sol = solve_halphen(tri, 8)
            for k in (1, 2, 3, 4):
                assert eisenstein_one(k, sol).constant_term == 1
                assert eisenstein_two(k, sol).constant_term == 1

    def test_weight_four_symmetry(self):
        sol = solve_halphen(TriangleType(2, 5), 8)
        assert eisenstein_one(2, sol) == eisenstein_two(2, sol)

    def test_multiplicative_recursions(self):
        sol = solve_halphen(TriangleType(3, 4), 12)
        for k in (1, 2, 3):
            assert eisenstein_one(k + 1, sol) == \
                eisenstein_one(k, sol) * (sol.t3 - sol.t2)
            assert eisenstein_two(k + 1, sol) == \
                eisenstein_two(k, sol) * (sol.t1 - sol.t2)

    def test_generator_ranges(self):
        assert list(generator_range(TriangleType(2, 5), 1)) == []
        assert list(generator_range(TriangleType(2, 5), 2)) == [2, 3, 4, 5]
        assert list(generator_range(TriangleType(3, None), 1)) == [1, 2, 3]
        assert list(generator_range(TriangleType(3, None), 2)) == []


class TestDerivativeIdentities:
    def test_t_differences_from_j(self):
        # t1 - t2 = Jdot/J and t3 - t2 = Jdot/(J - 1) with Jdot = -theta J
        # (the q-orientation fixed by the prescribed t2 slope flips the
        # literal theta sign)
        for tri in (TriangleType(2, 3), TriangleType(3, 4), TriangleType(2, None)):
            sol = solve_halphen(tri, 15)
            j = hauptmodul_from_halphen(sol)
            jdot = -1 * j.theta()
            lhs1 = jdot / j
            lhs3 = jdot / (j - 1)
            assert lhs1.agrees_with(
                LaurentSeries.from_truncated(sol.t1 - sol.t2)) is None
            assert lhs3.agrees_with(
                LaurentSeries.from_truncated(sol.t3 - sol.t2)) is None

    def test_theta_consistency(self):
        # theta on the Laurent J matches theta computed before division
        sol = solve_halphen(TriangleType(2, 3), 12)
        j = hauptmodul_from_halphen(sol)
        num = LaurentSeries.from_truncated(sol.t3 - sol.t2)
        den = LaurentSeries.from_truncated(sol.t3 - sol.t1)
        quotient_rule = (num.theta() * den - num * den.theta()) / (den * den)
        assert j.theta().agrees_with(quotient_rule) is None
