"""Homomorphisms between finitely generated monoids.

A homomorphism is given on the ambient free covers.  Construction validates
that relations are respected and that every generator of the source lands
inside the target monoid, so a constructed MonoidHom is always a genuine
map of monoids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, MembershipError
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    GroupHom,
    IntegerSolver,
    IntMatrix,
    cokernel,
    kernel_is_trivial,
)
from .monoid import Monoid


class MonoidHom:
    """Map of monoids, stored as a matrix on ambient coordinates."""

    __slots__ = ("source", "target", "matrix", "_group_hom", "_gp_hom", "_hull")

    def __init__(self, source: Monoid, target: Monoid, matrix):
        matrix = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
        # raises IllDefinedMapError when relations are not respected
        self._group_hom = GroupHom(source.ambient, target.ambient, matrix)
        for g in source.generators:
            if not target.contains(matrix.apply(g.coords)):
                raise MembershipError(
                    f"image of generator {g.coords} lies outside the target monoid"
                )
        self.source = source
        self.target = target
        self.matrix = matrix
        self._gp_hom = None
        self._hull = None

    def apply(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return self.target.ambient.element(self.matrix.apply(coords))

    def compose(self, inner: "MonoidHom") -> "MonoidHom":
        if inner.target != self.source:
            raise DimensionMismatchError("homs do not compose")
        return MonoidHom(inner.source, self.target, self.matrix * inner.matrix)

    def gp_hom(self) -> GroupHom:
        """The induced map between the group-hull presentations."""
        if self._gp_hom is None:
            sgp = self.source.gp()
            tgp = self.target.gp()
            cols = []
            for g in self.source.generators:
                c = tgp.express(self.apply(g))
                assert c is not None, "generator image must lie in the target hull"
                cols.append(c)
            mat = IntMatrix(
                [[c[i] for c in cols] for i in range(tgp.group.rank)]
            )
            self._gp_hom = GroupHom(sgp.group, tgp.group, mat)
        return self._gp_hom

    def _hull_solver(self) -> IntegerSolver:
        # preimages in the target hull are taken modulo its relation lattice
        if self._hull is None:
            gph = self.gp_hom()
            rel_t = self.target.gp().group.relations.transpose()
            self._hull = IntegerSolver(
                IntMatrix(
                    [
                        tuple(gph.matrix.row(i))
                        + (tuple(rel_t.row(i)) if rel_t.rows else ())
                        for i in range(gph.matrix.rows)
                    ]
                )
            )
        return self._hull

    def hull_preimage(self, y) -> GroupElement | None:
        """Source-hull element x with h(x) = y in the target hull, or None."""
        tgp = self.target.gp()
        ycoords = tgp.express(y)
        if ycoords is None:
            return None
        sol = self._hull_solver().solve(ycoords)
        if sol is None:
            return None
        sgp = self.source.gp()
        return sgp.to_ambient(sol[: sgp.group.rank])

    def __repr__(self):
        return f"MonoidHom({self.matrix!r})"


class GpCokernel:
    """Cokernel of the induced map on group hulls, with its projection."""

    __slots__ = ("group", "_target_gp", "_cok")

    def __init__(self, hom: MonoidHom):
        gph = hom.gp_hom()
        self._cok = cokernel(gph)
        self.group = self._cok.group
        self._target_gp = hom.target.gp()

    def project(self, x) -> GroupElement:
        """Class of a target-hull element in the cokernel."""
        c = self._target_gp.express(x)
        if c is None:
            raise MembershipError("element lies outside the target group hull")
        return self.group.element(c)

    def structure(self):
        return self.group.structure()


def gp_cokernel(hom: MonoidHom) -> GpCokernel:
    return GpCokernel(hom)


@dataclass(frozen=True)
class KummerEntry:
    """Certificate row for one target generator.

    generator is a in target coordinates, multiple is the least m with m*a
    in the image of the group hull, base is the hull preimage b of m*a in
    source coordinates, and ok records whether b lies in the saturation of
    the source.
    """

    generator: tuple
    multiple: int
    base: tuple | None
    ok: bool


@dataclass(frozen=True)
class KummerCheck:
    is_kummer: bool
    reason: str | None
    entries: tuple

    def __bool__(self):
        return self.is_kummer

    def failing(self):
        return tuple(e for e in self.entries if not e.ok)


def is_kummer(hom: MonoidHom) -> KummerCheck:
    """Decide whether hom is of Kummer type.

    The test runs on the group hulls: the map must be injective there with
    finite cokernel, and for each target generator a, the hull preimage b
    of m*a (m the order of a in the cokernel) must lie in the saturation of
    the source.  The certificate lists (a, m, b, verdict) per generator.
    """
    gph = hom.gp_hom()
    if not kernel_is_trivial(gph):
        return KummerCheck(False, "not injective on group hulls", ())
    cok = cokernel(gph)
    if cok.group.structure().free_rank:
        return KummerCheck(False, "group-hull cokernel is infinite", ())
    sat = hom.source.saturation()
    sgp = hom.source.gp()
    tgp_group = hom.target.gp().group
    solver = hom._hull_solver()
    entries = []
    all_ok = True
    for j, gen in enumerate(hom.target.generators):
        unit = tuple(int(i == j) for i in range(tgp_group.rank))
        m = cok.group.element_order(unit)
        sol = solver.solve(tuple(m * u for u in unit))
        assert sol is not None, "m*a must lift to the source hull"
        b = sgp.to_ambient(sol[: sgp.group.rank])
        ok = sat.contains(b)
        all_ok = all_ok and ok
        entries.append(KummerEntry(gen.coords, m, b.coords, ok))
    reason = None if all_ok else "a generator has no positive multiple in the image"
    return KummerCheck(all_ok, reason, tuple(entries))
