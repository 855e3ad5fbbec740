"""Pushouts, root covers, and product decompositions of fs monoids.

Pushouts are computed on group presentations: the group is the direct sum
of the hulls of the two legs modulo glueing relations, the fine result is
the submonoid generated by the images of both generator sets, and the fs
result is its saturation.  Because a monoid hom need not extend from the
group hull to the ambient group, every map built here is anchored on a
copy of its source presented on that hull (see GpCopy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InputError,
    MembershipError,
    NotKummerError,
    NotSaturatedError,
    TorsionError,
    UngradedMonoidError,
)
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    GroupHom,
    IntMatrix,
    cokernel,
    kernel_is_trivial,
)
from .monoid import Monoid
from .morphism import MonoidHom, is_kummer


class GpCopy:
    """A monoid re-presented on its own group hull.

    monoid lives in the abstract hull presentation (one coordinate per
    generator); to_original maps it back onto the original.  express sends
    an element of the original hull to its class in the copy.
    """

    __slots__ = ("original", "monoid", "to_original")

    def __init__(self, original: Monoid):
        gp = original.gp()
        m = gp.group.rank
        units = [tuple(int(i == j) for i in range(m)) for j in range(m)]
        self.original = original
        self.monoid = Monoid(gp.group, units)
        self.to_original = MonoidHom(self.monoid, original, gp.inclusion)

    def express(self, x) -> GroupElement:
        c = self.original.gp().express(x)
        if c is None:
            raise MembershipError("element lies outside the group hull")
        return self.monoid.ambient.element(c)


def gp_presented_copy(original: Monoid) -> GpCopy:
    return GpCopy(original)


def _block_inclusion(total: int, offset: int, width: int) -> IntMatrix:
    return IntMatrix(
        [[int(i == offset + j) for j in range(width)] for i in range(total)]
    )


class _PushoutData:
    """Shared scaffolding for the fine and the saturated pushout."""

    __slots__ = ("group", "copy1", "copy2", "mat1", "mat2", "fine")

    def __init__(self, h1: MonoidHom, h2: MonoidHom):
        if h1.source is not h2.source and h1.source != h2.source:
            raise InputError("pushout legs must share their source")
        c1 = h1.gp_hom().matrix
        c2 = h2.gp_hom().matrix
        m1, m2 = c1.rows, c2.rows
        rel1 = h1.target.gp().group.relations
        rel2 = h2.target.gp().group.relations
        rows = []
        for r in rel1.entries:
            rows.append(tuple(r) + (0,) * m2)
        for r in rel2.entries:
            rows.append((0,) * m1 + tuple(r))
        # glue: images of each hull generator of the source are identified
        for j in range(c1.cols):
            rows.append(tuple(c1.column(j)) + tuple(-v for v in c2.column(j)))
        self.group = FgAbelianGroup(m1 + m2, rows)
        self.copy1 = GpCopy(h1.target)
        self.copy2 = GpCopy(h2.target)
        self.mat1 = _block_inclusion(m1 + m2, 0, m1)
        self.mat2 = _block_inclusion(m1 + m2, m1, m2)
        units = [
            tuple(int(i == j) for i in range(m1 + m2)) for j in range(m1 + m2)
        ]
        fine = Monoid(self.group, units)
        if fine.try_grading() is None:
            raise UngradedMonoidError("ungraded pushout")
        self.fine = fine


@dataclass(frozen=True)
class FsPushout:
    """Saturated pushout with its two legs.

    The legs start at hull-presented copies of the original targets; use
    embed1/embed2 to push elements of the originals into the result.
    """

    result: Monoid
    leg1: MonoidHom
    leg2: MonoidHom
    gp_presentation: FgAbelianGroup
    fine_result: Monoid
    copy1: GpCopy
    copy2: GpCopy

    def embed1(self, x) -> GroupElement:
        return self.leg1.apply(self.copy1.express(x))

    def embed2(self, x) -> GroupElement:
        return self.leg2.apply(self.copy2.express(x))


def pushout_int(h1: MonoidHom, h2: MonoidHom) -> Monoid:
    """The fine pushout: image of the monoid pushout in the group pushout."""
    return _PushoutData(h1, h2).fine


def pushout_fs(h1: MonoidHom, h2: MonoidHom) -> FsPushout:
    """Pushout in the category of fs monoids (fine pushout, then saturation)."""
    data = _PushoutData(h1, h2)
    result = data.fine.saturation()
    leg1 = MonoidHom(data.copy1.monoid, result, data.mat1)
    leg2 = MonoidHom(data.copy2.monoid, result, data.mat2)
    return FsPushout(
        result=result,
        leg1=leg1,
        leg2=leg2,
        gp_presentation=data.group,
        fine_result=data.fine,
        copy1=data.copy1,
        copy2=data.copy2,
    )


def kummer_root(base: Monoid, n: int):
    """The n-th root cover of a saturated monoid.

    Returns (root, hom) where root is a fresh copy of the base and hom is
    multiplication by n into it.  The base must be saturated, and for
    n >= 2 its hull must be torsion free, since multiplication by n kills
    torsion and the structural map has to stay injective.
    """
    if n < 1:
        raise InputError("root index must be at least 1")
    if not base.is_saturated():
        raise NotSaturatedError("not saturated")
    if n >= 2 and base.gp().structure().invariant_factors:
        raise TorsionError("group hull has torsion, root cover would not be injective")
    ambient = base.ambient
    fresh = FgAbelianGroup(ambient.rank, ambient.relations)
    root = Monoid(fresh, [g.coords for g in base.generators])
    scale = IntMatrix(
        [[n * int(i == j) for j in range(ambient.rank)] for i in range(ambient.rank)]
    )
    return root, MonoidHom(base, root, scale)


@dataclass(frozen=True)
class RootSection:
    """An n-th root adjoined to one element.

    result contains the image of the source monoid together with root,
    and n * root equals the image of the chosen element.  hom starts at
    source_copy.monoid, the hull presentation of the original source.
    """

    result: Monoid
    hom: MonoidHom
    root: GroupElement
    index: int
    source_copy: GpCopy
    fine_result: Monoid


def root_by_section(base: Monoid, a, n: int) -> RootSection:
    """Adjoin an n-th root of a single element of a saturated monoid.

    The receiving group is the hull of the base extended by one letter b
    with n*b = a; the result is every x there with n*x in the base, which
    the saturation of the extended generator set computes exactly.
    """
    if n < 1:
        raise InputError("root index must be at least 1")
    if not base.is_saturated():
        raise NotSaturatedError("not saturated")
    a_el = a if isinstance(a, GroupElement) else base.ambient.element(a)
    if not base.contains(a_el):
        raise MembershipError("a not in P")
    copy = GpCopy(base)
    m = copy.monoid.ambient.rank
    a_abs = copy.express(a_el).coords
    rows = [tuple(r) + (0,) for r in copy.monoid.ambient.relations.entries]
    rows.append(tuple(-v for v in a_abs) + (n,))
    extended = FgAbelianGroup(m + 1, rows)
    units = [tuple(int(i == j) for i in range(m + 1)) for j in range(m + 1)]
    fine = Monoid(extended, units)
    result = fine.saturation()
    hom = MonoidHom(copy.monoid, result, _block_inclusion(m + 1, 0, m))
    root = extended.element(units[m])
    return RootSection(
        result=result,
        hom=hom,
        root=root,
        index=n,
        source_copy=copy,
        fine_result=fine,
    )


@dataclass(frozen=True)
class SelfProductReport:
    """Comparison of the self pushout of a Kummer cover with its split model.

    The model is target + hull cokernel; the comparison sends the two legs
    to (a, 0) and (a, class of a).  ok means the comparison is a monoid
    isomorphism.
    """

    ok: bool
    gp_bijective: bool
    forward_failures: tuple
    backward_failures: tuple
    pushout: FsPushout
    model: Monoid
    comparison: IntMatrix

    def __bool__(self):
        return self.ok


def split_model(hom: MonoidHom):
    """The monoid Q + coker(gp hull map) on hull coordinates of Q.

    Generators are the hull generators of the target in the first block and
    every cokernel class in the second.  Returns (model, coker).
    """
    m = hom.target.gp().group.rank
    coker = cokernel(hom.gp_hom())
    rel_q = hom.target.gp().group.relations
    rows = [tuple(r) + (0,) * m for r in rel_q.entries]
    for r in coker.group.relations.entries:
        rows.append((0,) * m + tuple(r))
    model_group = FgAbelianGroup(2 * m, rows)
    gens = [
        tuple(int(i == j) for i in range(2 * m)) for j in range(m)
    ]
    for t in coker.group.torsion_elements():
        gens.append((0,) * m + t.coords)
    return Monoid(model_group, gens), coker


def self_product_check(hom: MonoidHom) -> SelfProductReport:
    """Check that the pushout of a Kummer cover with itself splits off
    the hull cokernel as a direct summand."""
    check = is_kummer(hom)
    if not check:
        raise NotKummerError("not Kummer")
    po = pushout_fs(hom, hom)
    m = hom.target.gp().group.rank
    model, coker = split_model(hom)
    model_group = model.ambient
    # comparison (x1, x2) -> (x1 + x2, x2): blocks [[I, I], [0, I]]
    phi = IntMatrix(
        [
            [int(j == i or j == i + m) if i < m else int(j == i) for j in range(2 * m)]
            for i in range(2 * m)
        ]
    )
    gp_map = GroupHom(po.gp_presentation, model_group, phi)
    bij = (
        kernel_is_trivial(gp_map)
        and cokernel(gp_map).group.structure().is_trivial()
    )
    forward = []
    for g in po.result.generators:
        if not model.contains(phi.apply(g.coords)):
            forward.append(g.coords)
    backward = []
    for g in model.generators:
        pre = tuple(g.coords[i] - g.coords[m + i] for i in range(m)) + tuple(
            g.coords[m + i] for i in range(m)
        )
        if not po.result.contains(pre):
            backward.append(g.coords)
    ok = bij and not forward and not backward
    return SelfProductReport(
        ok=ok,
        gp_bijective=bij,
        forward_failures=tuple(forward),
        backward_failures=tuple(backward),
        pushout=po,
        model=model,
        comparison=phi,
    )


@dataclass(frozen=True)
class BaseChangeReport:
    """Diagnostics for the pushout of a Kummer cover along an arbitrary map.

    torsion_failures: torsion classes of the pushout hull missing from the
    pushout monoid (should be empty).  injective_mod_torsion: whether the
    changed base still injects after killing torsion.  witnesses: for each
    non-torsion generator a of the result, a multiple n with n*a in the
    image of the changed base, or None when the bounded search failed.
    """

    ok: bool
    pushout: FsPushout
    torsion_failures: tuple
    injective_mod_torsion: bool
    witnesses: tuple
    delta_order: int

    def __bool__(self):
        return self.ok


def kummer_base_change(hom: MonoidHom, change: MonoidHom) -> BaseChangeReport:
    """Push a Kummer cover out along another map out of the same source and
    verify the cover survives: torsion stays inside the monoid, the new
    base injects modulo torsion, and every generator has a multiple coming
    from the new base."""
    if not is_kummer(hom):
        raise NotKummerError("not Kummer")
    po = pushout_fs(hom, change)
    group = po.gp_presentation
    result = po.result

    torsion_failures = []
    for t in group.torsion_elements():
        if not t.is_zero() and not result.contains(t):
            torsion_failures.append(t.coords)
    delta_order = len(group.torsion_elements())

    proj = group.free_projection_matrix()
    free_group = FgAbelianGroup(proj.rows)
    down = GroupHom(
        po.copy2.monoid.ambient, free_group, proj * po.leg2.matrix
    )
    injective = kernel_is_trivial(down)

    image = Monoid(
        group, [po.leg2.apply(g).coords for g in po.copy2.monoid.generators]
    )
    leg2_coker = cokernel(
        GroupHom(po.copy2.monoid.ambient, group, po.leg2.matrix)
    )
    structure = leg2_coker.group.structure()
    exponent = 1
    for f in structure.invariant_factors:
        exponent = math.lcm(exponent, f)
    bound = 24 * exponent if structure.free_rank == 0 else 0
    witnesses = []
    all_found = True
    for g in result.generators:
        if g.order() != 0:
            continue
        found = None
        for n in range(1, bound + 1):
            if image.contains((n * g).coords):
                found = n
                break
        witnesses.append((g.coords, found))
        all_found = all_found and found is not None
    ok = not torsion_failures and injective and all_found
    return BaseChangeReport(
        ok=ok,
        pushout=po,
        torsion_failures=tuple(torsion_failures),
        injective_mod_torsion=injective,
        witnesses=tuple(witnesses),
        delta_order=delta_order,
    )
