import json

import numpy as np
import pytest

from toeplab.lattice import (
    CountNotEnumerableError,
    DimensionMismatchError,
    EQUAL,
    GREATER,
    LESS,
    LatticePoint,
    OrderSpec,
    ZERO,
    brute_interval_points,
    compare,
    ind_character,
    is_positive,
    xi_subgroup,
)

LEX1 = OrderSpec.lex(1)
LEX2 = OrderSpec.lex(2)
LEX3 = OrderSpec.lex(3)
COLEX = OrderSpec.colex()
SQRT2 = OrderSpec.weight_sqrt(2)
SQRT3 = OrderSpec.weight_sqrt(3)

ALL_ORDERS = [LEX1, LEX2, LEX3, COLEX, SQRT2, SQRT3]


def pt(*vec):
    return LatticePoint.of(vec)


def random_point(rng, order, radius=6):
    dims = order.bounded_dim or int(rng.integers(1, 4))
    return LatticePoint.of(rng.integers(-radius, radius + 1, size=dims))


class TestLatticePoint:
    def test_canonical_form_drops_zeros(self):
        assert pt(0, 3, 0).entries == ((1, 3),)
        assert pt(0, 0).is_zero

    def test_group_ops_stay_canonical(self):
        a, b = pt(1, -2), pt(-1, 2)
        assert (a + b).is_zero
        assert (a - a).is_zero
        assert (-a).entries == ((0, -1), (1, 2))

    def test_scalar_multiple(self):
        assert 3 * LatticePoint.unit(1) == pt(0, 3)
        assert 0 * pt(5, 5) == ZERO

    def test_to_vector_roundtrip(self):
        assert pt(2, 0, -1).to_vector(4) == (2, 0, -1, 0)
        with pytest.raises(ValueError):
            pt(2, 0, -1).to_vector(2)


class TestCompare:
    def test_lex_first_coordinate_decides(self):
        assert compare(pt(1, -5), pt(0, 100), LEX2) == GREATER

    def test_lex_second_coordinate_breaks_tie(self):
        assert compare(pt(0, 2), pt(0, 3), LEX2) == LESS

    def test_colex_last_nonzero_decides(self):
        assert compare(pt(5, 1), ZERO, COLEX) == GREATER
        assert compare(pt(5, -1), ZERO, COLEX) == LESS

    def test_weight_sign_from_slope(self):
        # sqrt(2)*1 - 1 > 0
        assert compare(pt(1, -1), ZERO, SQRT2) == GREATER
        # sqrt(2)*2 - 3 < 0
        assert compare(pt(2, -3), ZERO, SQRT2) == LESS

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            compare(pt(0, 0, 1), ZERO, LEX2)
        with pytest.raises(DimensionMismatchError):
            is_positive(pt(0, 0, 1), SQRT2)

    @pytest.mark.parametrize("order", ALL_ORDERS, ids=lambda o: o.family + str(o.d or ""))
    def test_total_order_properties(self, order):
        rng = np.random.default_rng(11)
        for _ in range(200):
            x, y = random_point(rng, order), random_point(rng, order)
            cxy, cyx = compare(x, y, order), compare(y, x, order)
            assert cxy == -cyx
            assert (cxy == EQUAL) == (x == y)

    @pytest.mark.parametrize("order", ALL_ORDERS, ids=lambda o: o.family + str(o.d or ""))
    def test_translation_invariance(self, order):
        rng = np.random.default_rng(12)
        for _ in range(100):
            x, y, z = (random_point(rng, order, 20) for _ in range(3))
            assert compare(x + z, y + z, order) == compare(x, y, order)

    @pytest.mark.parametrize("order", ALL_ORDERS, ids=lambda o: o.family + str(o.d or ""))
    def test_cone_covers_lattice(self, order):
        # linear order: every point or its negative is in the cone
        rng = np.random.default_rng(13)
        for _ in range(100):
            x = random_point(rng, order)
            assert is_positive(x, order) or is_positive(-x, order)
            assert not (is_positive(x, order) and is_positive(-x, order)) or x.is_zero


class TestIsPositive:
    def test_identity_in_cone(self):
        assert is_positive(ZERO, LEX2)

    def test_lex_examples(self):
        assert not is_positive(pt(-1, 10), LEX2)
        assert is_positive(pt(0, 1), LEX2)

    def test_weight_high_precision_decision(self):
        # 1*sqrt(2) - 1 > 0, confirmed against integer arithmetic on the
        # stored approximant
        assert is_positive(pt(1, -1), SQRT2)
        # 5*sqrt(2) - 8 < 0 (sqrt(2) = 1.41421356... < 1.6)
        assert not is_positive(pt(5, -8), SQRT2)


class TestXiSubgroup:
    def test_lex_generator_is_last_axis(self):
        assert xi_subgroup(LEX3).generator == pt(0, 0, 1)

    def test_colex_generator_is_first_axis(self):
        assert xi_subgroup(COLEX).generator == pt(1)

    def test_weight_trivial(self):
        assert xi_subgroup(SQRT3).is_trivial

    def test_generator_is_positive_with_index_one(self):
        for order in (LEX1, LEX2, LEX3, COLEX):
            gen = xi_subgroup(order).generator
            assert is_positive(gen, order)
            assert ind_character(gen, order) == 1


class TestIndCharacter:
    def test_lex_axis_value(self):
        assert ind_character(pt(0, 3), LEX2) == 3

    def test_lex_off_axis_has_no_index(self):
        assert ind_character(pt(1, 0), LEX2) is None

    def test_weight_only_zero_has_index(self):
        assert ind_character(pt(1, 1), SQRT2) is None
        assert ind_character(ZERO, SQRT2) == 0

    def test_negative_character_mirrors(self):
        assert ind_character(pt(0, -4), LEX2) == -4
        assert ind_character(pt(-2), COLEX) == -2

    @pytest.mark.parametrize("order", [LEX2, LEX3, COLEX])
    def test_homomorphism_on_xi(self, order):
        rng = np.random.default_rng(21)
        gen = xi_subgroup(order).generator
        for _ in range(100):
            a, b = int(rng.integers(-8, 9)), int(rng.integers(-8, 9))
            total = ind_character(a * gen + b * gen, order)
            assert total == ind_character(a * gen, order) + ind_character(b * gen, order)

    @pytest.mark.parametrize("order", [LEX2, COLEX])
    def test_order_preserving_on_xi(self, order):
        gen = xi_subgroup(order).generator
        for a in range(-5, 6):
            for b in range(a, 6):
                assert ind_character(a * gen, order) <= ind_character(b * gen, order)


class TestBruteIntervalPoints:
    def test_two_points_below_two(self):
        assert brute_interval_points(pt(0, 2), LEX2, 5) == [ZERO, pt(0, 1)]

    def test_only_identity_below_generator(self):
        assert brute_interval_points(pt(0, 1), LEX2, 5) == [ZERO]

    def test_infinite_interval_scan_lex2(self):
        # below (1,0) inside the radius-2 box: the slow axis ray (0,0..2)
        # plus (1, t) with t < 0
        got = brute_interval_points(pt(1, 0), LEX2, 2)
        assert got == [ZERO, pt(0, 1), pt(0, 2), pt(1, -2), pt(1, -1)]

    def test_rejects_negative_chi(self):
        with pytest.raises(ValueError):
            brute_interval_points(pt(0, -1), LEX2, 3)

    @pytest.mark.parametrize("order", [LEX1, LEX2, COLEX])
    def test_count_stabilizes_for_finite_index(self, order):
        gen = xi_subgroup(order).generator
        for n in (0, 1, 3, 5):
            counts = [len(brute_interval_points(n * gen, order, r)) for r in (n + 1, n + 2, n + 4)]
            assert counts == [n, n, n]
            assert ind_character(n * gen, order) == counts[0]

    def test_count_grows_for_infinite_index(self):
        for order, chi in [(LEX2, pt(1, 0)), (COLEX, pt(0, 1)), (SQRT2, pt(1, 0))]:
            counts = [len(brute_interval_points(chi, order, r)) for r in (2, 4, 6)]
            assert counts[0] < counts[1] < counts[2]

    def test_sorted_ascending(self):
        points = brute_interval_points(pt(1, 0), LEX2, 3)
        for a, b in zip(points, points[1:]):
            assert compare(a, b, LEX2) == LESS


class TestOrderSpecConstruction:
    def test_rejects_low_precision_weight(self):
        with pytest.raises(ValueError):
            OrderSpec.weight(1414, 1000)

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            OrderSpec("robbiano")

    def test_rejects_square_slope(self):
        with pytest.raises(ValueError):
            OrderSpec.weight_sqrt(4)

    def test_json_roundtrip(self):
        for order in (LEX2, COLEX, SQRT2):
            blob = json.dumps(order.to_json_dict())
            assert OrderSpec.from_json_dict(json.loads(blob)) == order

    def test_json_shapes(self):
        assert OrderSpec.lex(2).to_json_dict() == {"family": "lex", "d": 2}
        assert OrderSpec.colex().to_json_dict() == {"family": "colex"}
        w = SQRT2.to_json_dict()
        assert w["family"] == "weight" and w["alpha_den"] >= 10**12
