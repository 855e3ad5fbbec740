import pytest

from logmonoid import (
    DimensionMismatchError,
    FgAbelianGroup,
    GroupStructure,
    Monoid,
    NonPointedConeError,
    UngradedMonoidError,
    free_monoid,
    hilbert_basis,
    numeric_monoid,
)


def gens(monoid):
    return tuple(g.coords for g in monoid.generators)


class TestConstruction:
    def test_numeric_monoid_is_varargs(self):
        m = numeric_monoid(2, 3)
        assert m.ambient.rank == 1
        assert gens(m) == ((2,), (3,))

    def test_free_monoid(self):
        m = free_monoid(3)
        assert gens(m) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_duplicate_and_zero_generators_dropped(self):
        m = Monoid(FgAbelianGroup(1), [(2,), (2,), (0,)])
        assert gens(m) == ((2,),)

    def test_generators_normalized_in_torsion_ambient(self):
        g = FgAbelianGroup(1, [(3,)])
        m = Monoid(g, [(4,), (1,)])
        assert gens(m) == ((1,),)

    def test_element_length_checked(self):
        with pytest.raises(DimensionMismatchError):
            free_monoid(2).element((1,))


class TestMembership:
    def test_numerical_semigroup_gaps(self):
        m = numeric_monoid(3, 5)
        members = {v for v in range(20) if m.contains((v,))}
        assert members == set(range(20)) - {1, 2, 4, 7}

    def test_negative_points_excluded(self):
        assert not free_monoid(1).contains((-1,))
        assert not numeric_monoid(2, 3).contains((-2,))

    def test_membership_with_torsion(self):
        g = FgAbelianGroup(2, [(0, 2)])
        m = Monoid(g, [(1, 0), (1, 1)])
        assert m.contains((2, 0))
        assert m.contains((2, 1))
        assert not m.contains((0, 1))

    def test_elements_up_to_counts(self):
        m = free_monoid(2)
        assert len(m.elements_up_to(3)) == 10
        els = m.elements_up_to(2)
        assert m.ambient.zero() in els

    def test_elements_up_to_is_monotone(self):
        m = numeric_monoid(2, 5)
        small = set(m.elements_up_to(4))
        assert small <= set(m.elements_up_to(8))


class TestGrading:
    def test_weight_positive_on_generators(self):
        m = Monoid(FgAbelianGroup(2), [(1, -1), (0, 1)])
        w = m.grading()
        for g in gens(m):
            assert w.weight(g) >= 1

    def test_units_admit_no_grading(self):
        m = Monoid(FgAbelianGroup(1), [(1,), (-1,)])
        assert m.try_grading() is None
        with pytest.raises(UngradedMonoidError):
            m.grading()

    def test_pure_torsion_gets_zero_grading(self):
        m = Monoid(FgAbelianGroup(1, [(2,)]), [(1,)])
        w = m.try_grading()
        assert w is not None
        assert w.weight((1,)) == 0
        assert len(m.elements_up_to(0)) == 2


class TestSaturation:
    def test_two_three_saturates_to_naturals(self):
        sat = numeric_monoid(2, 3).saturation()
        assert gens(sat) == ((1,),)

    def test_three_five_saturates_to_naturals(self):
        sat = numeric_monoid(3, 5).saturation()
        assert gens(sat) == ((1,),)

    def test_free_monoids_are_fixed(self):
        for k in range(1, 5):
            m = free_monoid(k)
            assert m.is_saturated()
            sat = m.saturation()
            assert gens(sat) == gens(m)
            assert sat.same_elements(m)

    def test_index_three_cone(self):
        m = Monoid(FgAbelianGroup(2), [(1, 2), (2, 1)])
        assert not m.is_saturated()
        assert not m.contains((1, 1))
        sat = m.saturation()
        assert sat.contains((1, 1))
        assert gens(sat) == ((1, 1), (1, 2), (2, 1))

    def test_even_sum_cone_is_saturated(self):
        m = Monoid(FgAbelianGroup(2), [(2, 0), (1, 1), (0, 2)])
        assert m.is_saturated()

    def test_hyperbolic_wedge_is_saturated(self):
        m = Monoid(FgAbelianGroup(2), [(1, 1), (1, -1)])
        assert m.is_saturated()
        assert m.contains((2, 0))

    def test_saturation_with_torsion(self):
        g = FgAbelianGroup(2, [(0, 2)])
        m = Monoid(g, [(1, 0), (1, 1)])
        assert not m.contains((0, 1))
        sat = m.saturation()
        assert sat.contains((0, 1))
        assert sat.same_elements(Monoid(g, [(1, 0), (0, 1)]))
        assert sat.is_saturated()

    def test_saturation_is_idempotent(self):
        m = numeric_monoid(4, 7)
        sat = m.saturation()
        assert sat.saturation().same_elements(sat)

    def test_saturation_stays_inside_the_hull(self):
        # gp is the even sublattice, so 1 never appears
        m = Monoid(FgAbelianGroup(1), [(2,)])
        sat = m.saturation()
        assert gens(sat) == ((2,),)

    def test_ungraded_saturation_rejected(self):
        m = Monoid(FgAbelianGroup(1), [(1,), (-1,)])
        with pytest.raises(UngradedMonoidError):
            m.saturation()


class TestEquality:
    def test_same_presentation_equal(self):
        a = Monoid(FgAbelianGroup(1), [(2,), (3,)])
        b = numeric_monoid(3, 2)
        assert a == b
        assert hash(a) == hash(b)

    def test_same_elements_differs_from_equality(self):
        a = numeric_monoid(1)
        b = numeric_monoid(1, 2)
        assert a != b
        assert a.same_elements(b)


class TestHilbertBasis:
    def test_wide_planar_cone(self):
        basis = hilbert_basis(((1, 0), (1, 4)))
        assert basis == ((1, 0), (1, 1), (1, 2), (1, 3), (1, 4))

    def test_quadrant(self):
        assert hilbert_basis(((1, 0), (0, 1))) == ((0, 1), (1, 0))

    def test_sublattice_restriction(self):
        basis = hilbert_basis(((1, 0), (0, 1)), lattice_rows=[(1, 1), (1, -1)])
        assert basis == ((0, 2), (1, 1), (2, 0))

    def test_redundant_ray_dropped(self):
        assert hilbert_basis(((1, 0), (1, 1), (0, 1))) == ((0, 1), (1, 0), (1, 1))

    def test_non_pointed_cone_rejected(self):
        with pytest.raises(NonPointedConeError):
            hilbert_basis(((1,), (-1,)))

    def test_zero_input(self):
        assert hilbert_basis((), ()) == () or hilbert_basis((),) == ()


class TestGpData:
    def test_hull_of_numeric_monoid(self):
        gp = numeric_monoid(2, 3).gp()
        assert gp.structure() == GroupStructure(1, ())
        assert gp.contains((-5,))

    def test_proper_hull(self):
        gp = Monoid(FgAbelianGroup(2), [(1, 2), (2, 1)]).gp()
        assert gp.contains((1, 1))
        assert not gp.contains((1, 0))

    def test_express_and_to_ambient_roundtrip(self):
        m = Monoid(FgAbelianGroup(2), [(2, 0), (0, 3)])
        gp = m.gp()
        coords = gp.express((4, 3))
        assert coords is not None
        assert gp.to_ambient(coords).coords == (4, 3)
        assert gp.express((1, 0)) is None
