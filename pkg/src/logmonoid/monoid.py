"""Finitely generated monoids inside presented abelian groups.

A monoid is stored as a sorted list of generators in canonical ambient
coordinates.  A positive grading (an integer functional vanishing on the
relation lattice and strictly positive on every infinite-order generator)
is the termination device for membership and saturation; operations that
need one raise UngradedMonoidError when none exists.
"""

from __future__ import annotations

from .cone import (
    RationalCone,
    hilbert_basis_full,
    integral_positive_functional,
)
from .errors import (
    DimensionMismatchError,
    MembershipError,
    UngradedMonoidError,
)
from .lattice import (
    IntegerSolver,
    FgAbelianGroup,
    GroupElement,
    IntMatrix,
    Lattice,
    integer_kernel_basis,
    solve_integer_system,
)


class Grading:
    """Integer functional on the ambient free cover, constant on cosets."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = tuple(int(x) for x in weights)

    def weight(self, coords) -> int:
        return sum(w * c for w, c in zip(self.weights, coords))

    def __repr__(self):
        return f"Grading{self.weights}"


class GpData:
    """The subgroup generated by a monoid, as a presented group.

    group is an abstract presentation with one ambient coordinate per monoid
    generator; inclusion maps abstract coordinates to ambient coordinates of
    the monoid's own group.
    """

    __slots__ = ("group", "inclusion", "ambient", "_span", "_solver")

    def __init__(self, ambient: FgAbelianGroup, generators):
        m = len(generators)
        k = ambient.rank
        gen_rows = [g.coords for g in generators]
        rel_rows = ambient.relations.entries
        # relations among the generators: kernel of [G | R^T] projected
        block = IntMatrix(
            [
                [gen_rows[j][i] for j in range(m)] + [r[i] for r in rel_rows]
                for i in range(k)
            ]
        )
        relations = []
        for vec in integer_kernel_basis(block):
            head = vec[:m]
            if any(head):
                relations.append(head)
        self.ambient = ambient
        self.group = FgAbelianGroup(m, relations)
        self.inclusion = IntMatrix([[g.coords[i] for g in generators] for i in range(k)])
        self._span = Lattice(k, list(gen_rows) + list(rel_rows))
        self._solver = IntegerSolver(block)

    def contains(self, x) -> bool:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return self._span.contains(coords)

    def express(self, x):
        """Abstract coordinates of an ambient element, or None if outside."""
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        sol = self._solver.solve(coords)
        if sol is None:
            return None
        return tuple(sol[: self.group.rank])

    def to_ambient(self, abstract_coords) -> GroupElement:
        return self.ambient.element(self.inclusion.apply(abstract_coords))

    def structure(self):
        return self.group.structure()


class Monoid:
    """Submonoid of an FgAbelianGroup given by a finite generator list."""

    def __init__(self, ambient: FgAbelianGroup, generators=()):
        self.ambient = ambient
        canon = set()
        for g in generators:
            e = g if isinstance(g, GroupElement) else ambient.element(g)
            if e.group != ambient:
                raise DimensionMismatchError("generator from a different group")
            if not e.is_zero():
                canon.add(e.coords)
        self.generators = tuple(ambient.element(c) for c in sorted(canon))
        self._grading = None
        self._grading_known = False
        self._gp = None
        self._members = None
        self._member_bound = -1
        self._saturation = None

    # -- basic structure --------------------------------------------------

    def element(self, coords) -> GroupElement:
        return self.ambient.element(coords)

    def gp(self) -> GpData:
        if self._gp is None:
            self._gp = GpData(self.ambient, self.generators)
        return self._gp

    def try_grading(self):
        """The stored positive grading, or None when the monoid has none."""
        if not self._grading_known:
            rel = self.ambient.relations
            if rel.rows:
                basis = integer_kernel_basis(rel)
            else:
                basis = [
                    tuple(int(i == j) for j in range(self.ambient.rank))
                    for i in range(self.ambient.rank)
                ]
            targets = [g.coords for g in self.generators if g.order() == 0]
            w = integral_positive_functional(targets, basis, self.ambient.rank)
            self._grading = Grading(w) if w is not None else None
            self._grading_known = True
        return self._grading

    def grading(self) -> Grading:
        g = self.try_grading()
        if g is None:
            raise UngradedMonoidError("monoid admits no positive grading")
        return g

    def weight(self, x) -> int:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return self.grading().weight(coords)

    # -- membership -------------------------------------------------------

    def _extend_members(self, bound: int):
        w = self.grading().weights
        if self._members is None:
            self._members = {(0,) * self.ambient.rank}
            self._member_bound = -1
        if bound <= self._member_bound:
            return
        gens = [(g.coords, sum(a * b for a, b in zip(w, g.coords))) for g in self.generators]
        reduce = self.ambient.normalize
        members = self._members
        queue = list(members)
        while queue:
            e = queue.pop()
            ew = sum(a * b for a, b in zip(w, e))
            for gc, gw in gens:
                if ew + gw > bound:
                    continue
                nxt = reduce(tuple(a + b for a, b in zip(e, gc)))
                if nxt not in members:
                    members.add(nxt)
                    queue.append(nxt)
        self._member_bound = bound

    def contains(self, x) -> bool:
        """Decide membership by graded dynamic programming."""
        e = x if isinstance(x, GroupElement) else self.ambient.element(x)
        if e.group != self.ambient:
            raise DimensionMismatchError("element from a different group")
        wx = self.weight(e)
        if wx < 0:
            return False
        self._extend_members(wx)
        return e.coords in self._members

    def elements_up_to(self, bound: int) -> tuple:
        """All monoid elements of weight at most bound, sorted."""
        self._extend_members(bound)
        w = self.grading().weights
        out = [
            c for c in self._members if sum(a * b for a, b in zip(w, c)) <= bound
        ]
        return tuple(self.ambient.element(c) for c in sorted(out))

    # -- saturation -------------------------------------------------------

    def saturation(self) -> "Monoid":
        """The saturation inside the group hull.

        Computed on the torsion-free quotient of the group hull: the Hilbert
        basis of the image cone is lifted back, and every torsion translate
        of each lift is included, together with all torsion elements.
        """
        if self._saturation is not None:
            return self._saturation
        self.grading()
        gpd = self.gp()
        m = gpd.group.rank
        torsion_amb = [gpd.to_ambient(t.coords) for t in gpd.group.torsion_elements()]
        if m == 0:
            self._saturation = Monoid(self.ambient, [])
            return self._saturation
        free_rank = gpd.group.structure().free_rank
        unit = lambda i: tuple(int(j == i) for j in range(m))
        bars = [gpd.group.free_projection(unit(i)) for i in range(m)]
        nonzero_bars = [b for b in bars if any(b)]
        if free_rank and nonzero_bars:
            basis = hilbert_basis_full(nonzero_bars, free_rank)
        else:
            basis = ()
        gens = [t for t in torsion_amb if not t.is_zero()]
        if basis:
            bar_matrix = IntMatrix(
                [[bars[j][i] for j in range(m)] for i in range(free_rank)]
            )
            for h in basis:
                c = solve_integer_system(bar_matrix, h)
                assert c is not None, "basis vector must lift"
                lift = gpd.to_ambient(c)
                gens.extend(lift + t for t in torsion_amb)
        self._saturation = Monoid(self.ambient, gens)
        return self._saturation

    def is_saturated(self) -> bool:
        return all(self.contains(g) for g in self.saturation().generators)

    # -- misc -------------------------------------------------------------

    def same_elements(self, other: "Monoid") -> bool:
        """Mutual generator membership; both monoids must be graded."""
        if self.ambient != other.ambient:
            return False
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Monoid)
            and self.ambient == other.ambient
            and tuple(g.coords for g in self.generators)
            == tuple(g.coords for g in other.generators)
        )

    def __hash__(self):
        return hash((self.ambient, tuple(g.coords for g in self.generators)))

    def __repr__(self):
        return f"Monoid({[g.coords for g in self.generators]})"


def free_monoid(rank: int) -> Monoid:
    """N^rank inside Z^rank."""
    amb = FgAbelianGroup(rank)
    return Monoid(amb, [tuple(int(i == j) for j in range(rank)) for i in range(rank)])


def numeric_monoid(*values) -> Monoid:
    """The submonoid of Z generated by the given nonnegative integers."""
    return Monoid(FgAbelianGroup(1), [(v,) for v in values])


def hilbert_basis(cone_generators, lattice_rows=None) -> tuple:
    """Hilbert basis of cone(cone_generators) intersected with a lattice.

    The lattice defaults to the full integer lattice and may be given by
    spanning rows; every cone generator must lie in it.  The cone must be
    pointed.
    """
    gens = [tuple(int(x) for x in g) for g in cone_generators]
    if not gens:
        return ()
    dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise DimensionMismatchError("cone generators of mixed length")
    if lattice_rows is None:
        return hilbert_basis_full(gens, dim)
    lat = Lattice(dim, lattice_rows)
    for g in gens:
        if not lat.contains(g):
            raise MembershipError(f"cone generator {g} lies outside the lattice")
    basis = lat.basis
    t = len(basis)
    mat = IntMatrix([[basis[j][i] for j in range(t)] for i in range(dim)])
    expressed = []
    for g in gens:
        c = solve_integer_system(mat, g)
        assert c is not None
        expressed.append(tuple(c))
    inner = hilbert_basis_full(expressed, t)
    return tuple(sorted(mat.apply(h) for h in inner))
