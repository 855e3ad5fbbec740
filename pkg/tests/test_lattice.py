import random

import pytest

from logmonoid import (
    DimensionMismatchError,
    FgAbelianGroup,
    GroupHom,
    GroupStructure,
    IllDefinedMapError,
    IntMatrix,
    cokernel,
    ext1,
    hermite_normal_form,
    hom_to_cyclic,
    invariant_factors_from_orders,
    kernel_is_trivial,
    smith_normal_form,
)
from logmonoid.lattice import (
    IntegerSolver,
    Lattice,
    integer_kernel_basis,
    kernel_rows,
    solve_integer_system,
    subquotient_structure,
)

from helpers import det_fraction


def diag_entries(d):
    return tuple(d[i, i] for i in range(min(d.rows, d.cols)))


class TestIntMatrix:
    def test_shape_and_indexing(self):
        m = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert (m.rows, m.cols) == (2, 3)
        assert m[1, 2] == 6
        assert m.row(0) == (1, 2, 3)
        assert m.column(1) == (2, 5)
        assert m.transpose().row(2) == (3, 6)

    def test_multiply_and_apply(self):
        a = IntMatrix([[1, 2], [3, 4]])
        b = IntMatrix([[0, 1], [1, 0]])
        assert (a * b).entries == ((2, 1), (4, 3))
        assert a.apply((1, 1)) == (3, 7)
        assert a.left_apply((1, 1)) == (4, 6)

    def test_multiply_shape_mismatch(self):
        a = IntMatrix([[1, 2]])
        with pytest.raises(DimensionMismatchError):
            a * a

    def test_identity_zero_vstack(self):
        i2 = IntMatrix.identity(2)
        z = IntMatrix.zero(1, 2)
        stacked = i2.vstack(z)
        assert stacked.entries == ((1, 0), (0, 1), (0, 0))

    def test_equality_and_hash(self):
        a = IntMatrix([[1, 2]])
        b = IntMatrix(((1, 2),))
        assert a == b and hash(a) == hash(b)


class TestNormalForms:
    def test_smith_small_example(self):
        m = IntMatrix([[2, 4], [6, 8]])
        u, d, v = smith_normal_form(m)
        assert u * m * v == d
        assert diag_entries(d) == (2, 4)

    def test_smith_transforms_are_unimodular(self):
        m = IntMatrix([[2, 4], [6, 8]])
        u, _, v = smith_normal_form(m)
        assert abs(det_fraction(u.entries)) == 1
        assert abs(det_fraction(v.entries)) == 1

    def test_smith_random_invariants(self):
        rng = random.Random(11)
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = IntMatrix(
                [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
            )
            u, d, v = smith_normal_form(m)
            assert u * m * v == d
            assert abs(det_fraction(u.entries)) == 1
            assert abs(det_fraction(v.entries)) == 1
            diag = diag_entries(d)
            for i in range(d.rows):
                for j in range(d.cols):
                    if i != j:
                        assert d[i, j] == 0
            for a, b in zip(diag, diag[1:]):
                assert a >= 0
                if a == 0:
                    assert b == 0
                else:
                    assert b % a == 0

    def test_smith_is_deterministic(self):
        m = IntMatrix([[3, 1, -2], [0, 4, 7]])
        assert smith_normal_form(m) == smith_normal_form(m)

    def test_hermite_shape(self):
        m = IntMatrix([[2, 4], [6, 8]])
        h, u = hermite_normal_form(m)
        assert h == u * m
        assert abs(det_fraction(u.entries)) == 1

    def test_hermite_random_invariants(self):
        rng = random.Random(12)
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = IntMatrix(
                [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
            )
            h, u = hermite_normal_form(m)
            assert h == u * m
            assert abs(det_fraction(u.entries)) == 1
            # pivots positive, zeros below, entries above reduced
            pivots = []
            for i in range(h.rows):
                row = h.row(i)
                nz = next((j for j, v in enumerate(row) if v), None)
                if nz is None:
                    continue
                assert row[nz] > 0
                pivots.append((i, nz))
            for (i1, j1), (i2, j2) in zip(pivots, pivots[1:]):
                assert j2 > j1
            for i, j in pivots:
                for r in range(i + 1, h.rows):
                    assert h[r, j] == 0
                for r in range(i):
                    assert 0 <= h[r, j] < h[i, j]


class TestLattice:
    def test_reduce_is_idempotent_and_canonical(self):
        lat = Lattice(2, [(2, 0), (0, 3)])
        r = lat.reduce((5, 7))
        assert r == lat.reduce(r)
        assert lat.reduce((1, 1)) == lat.reduce((3, 4))

    def test_contains(self):
        lat = Lattice(2, [(2, 0), (0, 3)])
        assert lat.contains((4, -3))
        assert not lat.contains((1, 0))
        assert lat.rank() == 2

    def test_zero_lattice(self):
        lat = Lattice(2)
        assert lat.reduce((5, -1)) == (5, -1)
        assert lat.contains((0, 0))
        assert not lat.contains((1, 0))


class TestIntegerSolver:
    def test_diagonal_system(self):
        s = IntegerSolver(IntMatrix([[2, 0], [0, 3]]))
        assert s.solve((4, 9)) == (2, 3)
        assert s.solve((1, 0)) is None

    def test_wrong_target_length(self):
        s = IntegerSolver(IntMatrix([[2, 0], [0, 3]]))
        with pytest.raises(DimensionMismatchError):
            s.solve((1, 2, 3))

    def test_solutions_verify_on_random_systems(self):
        rng = random.Random(13)
        for _ in range(60):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            m = IntMatrix(
                [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
            )
            x = tuple(rng.randint(-3, 3) for _ in range(cols))
            target = m.apply(x)
            sol = solve_integer_system(m, target)
            assert sol is not None
            assert m.apply(sol) == target

    def test_unsolvable_detected_against_bruteforce(self):
        m = IntMatrix([[2, 4]])
        s = IntegerSolver(m)
        # the image is exactly the even integers
        for t in range(-8, 9):
            sol = s.solve((t,))
            if t % 2 == 0:
                assert sol is not None and m.apply(sol) == (t,)
            else:
                assert sol is None


class TestKernels:
    def test_integer_kernel_basis_spans_the_kernel(self):
        m = IntMatrix([[2, 3]])
        basis = integer_kernel_basis(m)
        assert len(basis) == 1
        v = basis[0]
        assert m.apply(v) == (0,)
        lat = Lattice(2, basis)
        assert lat.contains((3, -2)) and lat.contains((-3, 2))

    def test_kernel_rows_respect_target_relations(self):
        # x |-> 2x into Z/4 has kernel 2Z
        hom = GroupHom(FgAbelianGroup(1), FgAbelianGroup(1, [(4,)]), IntMatrix([[2]]))
        lat = Lattice(1, kernel_rows(hom))
        assert lat.contains((2,))
        assert not lat.contains((1,))

    def test_kernel_is_trivial(self):
        inj = GroupHom(FgAbelianGroup(1), FgAbelianGroup(1), IntMatrix([[2]]))
        assert kernel_is_trivial(inj)
        to_torsion = GroupHom(
            FgAbelianGroup(1), FgAbelianGroup(1, [(2,)]), IntMatrix([[1]])
        )
        assert not kernel_is_trivial(to_torsion)


class TestGroupStructure:
    def test_str_forms(self):
        assert str(GroupStructure(2, (3,))) == "Z^2 + Z/3"
        assert str(GroupStructure(1, ())) == "Z"
        assert str(GroupStructure(0, ())) == "0"
        assert str(GroupStructure(0, (2, 6))) == "Z/2 + Z/6"

    def test_order_and_flags(self):
        assert GroupStructure(0, (2, 6)).order() == 12
        assert GroupStructure(0, (2, 6)).is_finite()
        assert not GroupStructure(1, ()).is_finite()
        assert GroupStructure(0, ()).is_trivial()

    def test_free_with_relations(self):
        g = FgAbelianGroup(3, [(2, -1, -1)])
        assert g.structure() == GroupStructure(2, ())

    def test_mixed(self):
        g = FgAbelianGroup(2, [(2, 0), (0, 3)])
        assert g.structure() == GroupStructure(0, (6,))

    def test_redundant_relations_collapse(self):
        g = FgAbelianGroup(2, [(2, 0), (4, 0)])
        assert g.structure() == GroupStructure(1, (2,))


class TestFgAbelianGroup:
    def test_normalize_and_contains(self):
        g = FgAbelianGroup(1, [(4,)])
        assert g.normalize((5,)) == g.normalize((1,))
        assert g.contains_in_relations((8,))
        assert not g.contains_in_relations((2,))

    def test_element_arithmetic(self):
        g = FgAbelianGroup(1, [(4,)])
        a = g.element((3,))
        assert (a + a) == g.element((2,))
        assert (-a) == g.element((1,))
        assert (3 * a) == g.element((1,))
        assert (a - a).is_zero()

    def test_element_order(self):
        g = FgAbelianGroup(1, [(4,)])
        assert g.element_order((1,)) == 4
        assert g.element_order((2,)) == 2
        assert g.element_order((0,)) == 1
        free = FgAbelianGroup(1)
        assert free.element_order((1,)) == 0

    def test_torsion_elements(self):
        g = FgAbelianGroup(2, [(0, 2)])
        tors = g.torsion_elements()
        assert len(tors) == 2
        assert any(not t.is_zero() for t in tors)

    def test_free_projection(self):
        g = FgAbelianGroup(2, [(0, 2)])
        p = g.free_projection((5, 1))
        assert len(p) == 1
        # torsion moves nothing in the free quotient
        assert g.free_projection((5, 0)) == p

    def test_mixed_element_order(self):
        g = FgAbelianGroup(2, [(0, 6)])
        assert g.element_order((0, 2)) == 3
        assert g.element_order((1, 1)) == 0

    def test_cross_group_arithmetic_rejected(self):
        a = FgAbelianGroup(1).element((1,))
        b = FgAbelianGroup(1, [(2,)]).element((1,))
        with pytest.raises(DimensionMismatchError):
            a + b


class TestGroupHom:
    def test_must_respect_relations(self):
        src = FgAbelianGroup(1, [(2,)])
        with pytest.raises(IllDefinedMapError):
            GroupHom(src, FgAbelianGroup(1), IntMatrix([[1]]))
        # into Z/4 the image of a 2-torsion generator must be 2-torsion
        GroupHom(src, FgAbelianGroup(1, [(4,)]), IntMatrix([[2]]))
        with pytest.raises(IllDefinedMapError):
            GroupHom(src, FgAbelianGroup(1, [(4,)]), IntMatrix([[1]]))

    def test_apply_and_compose(self):
        g = FgAbelianGroup(1)
        double = GroupHom(g, g, IntMatrix([[2]]))
        triple = GroupHom(g, g, IntMatrix([[3]]))
        assert double.apply((5,)).coords == (10,)
        assert double.compose(triple).matrix == IntMatrix([[6]])

    def test_cokernel(self):
        g = FgAbelianGroup(1)
        times4 = GroupHom(g, g, IntMatrix([[4]]))
        cok = cokernel(times4)
        assert cok.group.structure() == GroupStructure(0, (4,))
        assert cok.project((4,)).is_zero()
        assert not cok.project((1,)).is_zero()


class TestDerivedStructures:
    def test_subquotient_plain(self):
        st = subquotient_structure(2, [(1, 0), (0, 1)], [(2, 0), (0, 3)])
        assert st == GroupStructure(0, (6,))

    def test_subquotient_proper_sublattice(self):
        st = subquotient_structure(2, [(2, 0), (0, 1)], [(4, 0), (0, 1)])
        assert st == GroupStructure(0, (2,))

    def test_subquotient_free_part(self):
        st = subquotient_structure(2, [(1, 0), (0, 1)], [(2, 0)])
        assert st == GroupStructure(1, (2,))

    def test_invariant_factors_from_orders(self):
        assert invariant_factors_from_orders([2, 3]) == (6,)
        assert invariant_factors_from_orders([4, 6]) == (2, 12)
        assert invariant_factors_from_orders([6, 6, 2]) == (2, 6, 6)
        assert invariant_factors_from_orders([]) == ()
        assert invariant_factors_from_orders([1, 1]) == ()

    def test_hom_to_cyclic(self):
        a = FgAbelianGroup(3, [(0, 0, 4)])
        assert hom_to_cyclic(a, 6) == GroupStructure(0, (2, 6, 6))
        assert hom_to_cyclic(FgAbelianGroup(1), 5) == GroupStructure(0, (5,))
        assert hom_to_cyclic(FgAbelianGroup(1, [(3,)]), 5) == GroupStructure(0, ())

    def test_ext1(self):
        z4 = FgAbelianGroup(1, [(4,)])
        z6 = FgAbelianGroup(1, [(6,)])
        assert ext1(z4, z6) == GroupStructure(0, (2,))
        assert ext1(FgAbelianGroup(1), z6) == GroupStructure(0, ())
        assert ext1(z6, FgAbelianGroup(1)) == GroupStructure(0, (6,))
