"""Degree-bounded exactness checks over monoid algebras and group cochains.

The splitting and equalizer checks run over R0[P] with R0 the integers or
the integers mod N.  Both identities being linear in each monomial, checking
every monomial up to a weight bound verifies the identity in that range.
All linear algebra is exact; rational spaces are integer lattices tensored
with Q, so dimensions come out of Smith form ranks.
"""

import itertools
from dataclasses import dataclass

from .errors import (
    InconsistentActionError,
    InputError,
    MembershipError,
    NotKummerError,
    NotSaturatedError,
)
from .fscat import split_model
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    GroupHom,
    GroupStructure,
    IntMatrix,
    cokernel,
    kernel_is_trivial,
    kernel_rows,
    smith_normal_form,
    subquotient_structure,
)
from .monoid import Monoid
from .morphism import MonoidHom, is_kummer


class MonoidAlgebraElement:
    """Finite R0-linear combination of monoid elements.

    coeff_modulus 0 means integer coefficients, N >= 2 means integers mod N.
    Keys are canonical ambient coordinates and must lie in the monoid.
    """

    __slots__ = ("monoid", "modulus", "terms")

    def __init__(self, monoid: Monoid, modulus: int = 0, terms=None):
        if modulus < 0 or modulus == 1:
            raise InputError("coefficient modulus must be 0 or at least 2")
        clean = {}
        for key, coeff in (terms or {}).items():
            el = key if isinstance(key, GroupElement) else monoid.ambient.element(key)
            if not monoid.contains(el):
                raise MembershipError("monomial lies outside the monoid")
            coeff = int(coeff) % modulus if modulus else int(coeff)
            if coeff:
                k = el.coords
                clean[k] = clean.get(k, 0) + coeff
                if modulus:
                    clean[k] %= modulus
                if not clean[k]:
                    del clean[k]
        self.monoid = monoid
        self.modulus = modulus
        self.terms = clean

    @classmethod
    def monomial(cls, monoid, a, coeff: int = 1, modulus: int = 0):
        return cls(monoid, modulus, {a: coeff})

    @classmethod
    def zero(cls, monoid, modulus: int = 0):
        return cls(monoid, modulus)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """Terms as (coordinates, coefficient), sorted by key."""
        return tuple(sorted(self.terms.items()))

    def _combine(self, other, sign: int):
        if self.monoid != other.monoid or self.modulus != other.modulus:
            raise InputError("operands live in different algebras")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + sign * c
        return MonoidAlgebraElement(self.monoid, self.modulus, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MonoidAlgebraElement(
            self.monoid, self.modulus, {k: -c for k, c in self.terms.items()}
        )

    def __mul__(self, scalar: int):
        return MonoidAlgebraElement(
            self.monoid, self.modulus, {k: c * scalar for k, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonoidAlgebraElement)
            and self.monoid == other.monoid
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{list(k)}" for k, c in self.items())


@dataclass(frozen=True)
class CochainComplexReport:
    """Outcome of one verification run.

    checks pairs a label with a boolean; counterexample, when set, names the
    failing check, the monomial, and both sides evaluated on it.
    """

    ok: bool
    checks: tuple
    h0_dimension: int | None = None
    h1_dimension: int | None = None
    counterexample: dict | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok


def _linear(map_monomial, x: MonoidAlgebraElement, zero: MonoidAlgebraElement):
    acc = zero
    for key, coeff in x.items():
        acc = acc + coeff * map_monomial(key)
    return acc


def splitting_check(
    hom: MonoidHom,
    coeff_modulus: int = 0,
    degree_bound: int = 6,
    corrupt_iota: bool = False,
) -> CochainComplexReport:
    """Verify the two splitting identities of a Kummer cover h: P -> Q.

    Over R0[P], R0[Q] and R0[Q + Q^gp/P^gp] the five maps are

        alpha: a |-> h(a)          s: a |-> preimage of a, or 0 if a is not
        beta1: a |-> (a, 0)           in the image of P
        beta2: a |-> (a, class a)  iota: (a, b) |-> a if b != 0, else 0

    and the identities s() alpha = id and alpha s + iota (beta2 - beta1) = id
    are checked on every monomial of weight at most degree_bound.  The source
    must be saturated: its group hull meeting Q exactly in the image of P is
    what makes s well placed.  corrupt_iota flips the membership test inside
    iota to exercise the failure path on demand.
    """
    if degree_bound < 0:
        raise InputError("degree bound must be nonnegative")
    if not hom.source.is_saturated():
        raise NotSaturatedError("not saturated")
    if not is_kummer(hom):
        raise NotKummerError("not Kummer")
    src, tgt = hom.source, hom.target
    tgt.grading()
    model, coker = split_model(hom)
    tgp = tgt.gp()
    quot = coker.group
    m = quot.rank
    zero_src = MonoidAlgebraElement.zero(src, coeff_modulus)
    zero_tgt = MonoidAlgebraElement.zero(tgt, coeff_modulus)
    zero_model = MonoidAlgebraElement.zero(model, coeff_modulus)

    def mono(monoid, a):
        return MonoidAlgebraElement.monomial(monoid, a, 1, coeff_modulus)

    def alpha(key):
        return mono(tgt, hom.apply(key))

    def s_map(key):
        pre = hom.hull_preimage(key)
        if pre is None or not src.contains(pre):
            return zero_src
        return mono(src, pre)

    def beta(key, twist: bool):
        u = tgp.express(key)
        second = u if twist else (0,) * m
        return mono(model, tuple(u) + tuple(second))

    def iota(key):
        u, v = key[:m], key[m:]
        vanishes = quot.element(v).is_zero()
        keep = vanishes if corrupt_iota else not vanishes
        if not keep:
            return zero_tgt
        return mono(tgt, tgp.to_ambient(u))

    checked = 0
    counterexample = None
    first_ok = True
    for a in src.elements_up_to(degree_bound):
        x = mono(src, a)
        lhs = _linear(s_map, _linear(alpha, x, zero_tgt), zero_src)
        checked += 1
        if lhs != x:
            first_ok = False
            counterexample = {
                "check": "s alpha = id",
                "monomial": a.coords,
                "lhs": lhs.items(),
                "rhs": x.items(),
            }
            break

    second_ok = True
    if first_ok:
        for a in tgt.elements_up_to(degree_bound):
            y = mono(tgt, a)
            b2 = _linear(lambda k: beta(k, True), y, zero_model)
            b1 = _linear(lambda k: beta(k, False), y, zero_model)
            lhs = _linear(alpha, _linear(s_map, y, zero_src), zero_tgt) + _linear(
                iota, b2 - b1, zero_tgt
            )
            checked += 1
            if lhs != y:
                second_ok = False
                counterexample = {
                    "check": "alpha s + iota (beta2 - beta1) = id",
                    "monomial": a.coords,
                    "lhs": lhs.items(),
                    "rhs": y.items(),
                }
                break

    checks = (
        ("s alpha = id", first_ok),
        ("alpha s + iota (beta2 - beta1) = id", first_ok and second_ok),
    )
    return CochainComplexReport(
        ok=first_ok and second_ok,
        checks=checks,
        counterexample=counterexample,
        checked=checked,
    )


def equalizer_check(hom: MonoidHom, degree_bound: int = 6) -> CochainComplexReport:
    """Check that P -> Q equalizes a |-> (a, 0) and a |-> (a, class a).

    An element of Q has equal images exactly when its class in Q^gp/P^gp
    dies, and that must coincide with membership in the image of P, checked
    here for every element of weight at most degree_bound.
    """
    if degree_bound < 0:
        raise InputError("degree bound must be nonnegative")
    if not hom.source.is_saturated():
        raise NotSaturatedError("not saturated")
    if not is_kummer(hom):
        raise NotKummerError("not Kummer")
    src, tgt = hom.source, hom.target
    tgt.grading()
    quot = cokernel(hom.gp_hom()).group
    tgp = tgt.gp()
    checked = 0
    equalized = 0
    counterexample = None
    ok = True
    for a in tgt.elements_up_to(degree_bound):
        u = tgp.express(a)
        same = quot.element(u).is_zero()
        pre = hom.hull_preimage(a)
        from_source = pre is not None and src.contains(pre)
        checked += 1
        equalized += same
        if same != from_source:
            ok = False
            counterexample = {
                "check": "equalized iff from the source",
                "monomial": a.coords,
                "equalized": same,
                "from_source": from_source,
            }
            break
    checks = (
        ("equalized iff from the source", ok),
        (f"{equalized} of {checked} elements equalized", True),
    )
    return CochainComplexReport(
        ok=ok, checks=checks, counterexample=counterexample, checked=checked
    )


def _rank(m: IntMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, d, _ = smith_normal_form(m)
    return sum(1 for i in range(min(d.rows, d.cols)) if d[i, i])


def gmlog_complex(monoid: Monoid, n: int, n_prime: int) -> CochainComplexReport:
    """Constant-coefficient cover complex R -> Map(S, R) -> Map(S^2, R).

    R is the rational span of the hull of the monoid, of dimension its free
    rank r for every root level n; S has n_prime points.  The differentials
    are (d0 a)(i) = a and (d1 b)(i, j) = b(i) - b(j).  The report asserts
    dim H^0 = r (the constants) and H^1 = 0, by exact integer rank
    computations, which carry over to Q unchanged.
    """
    if n < 1 or n_prime < 1:
        raise InputError("cover parameters must be at least 1")
    if not monoid.is_saturated():
        raise NotSaturatedError("not saturated")
    r = monoid.gp().structure().free_rank
    s = n_prime
    d0 = IntMatrix([[int(i % r == j) for j in range(r)] for i in range(s * r)])
    d1 = IntMatrix(
        [
            [
                int(col == i * r + k) - int(col == j * r + k)
                for col in range(s * r)
            ]
            for i in range(s)
            for j in range(s)
            for k in range(r)
        ]
    )
    composite_zero = all(
        (d1 * d0)[i, j] == 0 for i in range(d1.rows) for j in range(d0.cols)
    )
    h0 = s * r - _rank(d1)
    h1 = h0 - _rank(d0)
    ok = composite_zero and h0 == r and h1 == 0
    checks = (
        ("d1 d0 = 0", composite_zero),
        ("H0 is the constants", h0 == r),
        ("H1 = 0", h1 == 0),
    )
    return CochainComplexReport(
        ok=ok, checks=checks, h0_dimension=h0, h1_dimension=h1, checked=s * s * r
    )


def _endo_equal(module: FgAbelianGroup, a: IntMatrix, b: IntMatrix) -> bool:
    return all(
        module.contains_in_relations(
            tuple(a[i, j] - b[i, j] for i in range(module.rank))
        )
        for j in range(module.rank)
    )


def group_h1(orders, module: FgAbelianGroup, action=None) -> GroupStructure:
    """First cohomology of a finite abelian group acting on a module.

    orders lists the cyclic factor orders of the group; action gives one
    integer matrix per factor, identity when omitted.  Cocycles are maps x
    with x(st) = x(s) + s.x(t); coboundaries are s |-> s.c - c.  Everything
    runs on integer lattices of cochains, relations included per component.
    """
    orders = tuple(int(e) for e in orders)
    if any(e < 1 for e in orders):
        raise InputError("group orders must be positive")
    m = module.rank
    ident = IntMatrix.identity(m)
    if action is None:
        action = [ident] * len(orders)
    action = [a if isinstance(a, IntMatrix) else IntMatrix(a) for a in action]
    if len(action) != len(orders):
        raise InconsistentActionError("one action matrix per group generator")
    for a, e in zip(action, orders):
        try:
            hom = GroupHom(module, module, a)
        except Exception as exc:
            raise InconsistentActionError(
                "action matrix does not define an endomorphism"
            ) from exc
        if not kernel_is_trivial(hom) or not cokernel(hom).group.structure().is_trivial():
            raise InconsistentActionError("action matrix is not an automorphism")
        power = ident
        for _ in range(e):
            power = a * power
        if not _endo_equal(module, power, ident):
            raise InconsistentActionError("action power does not return to the identity")
    for a, b in itertools.combinations(action, 2):
        if not _endo_equal(module, a * b, b * a):
            raise InconsistentActionError("action generators must commute")

    elements = list(itertools.product(*[range(e) for e in orders]))
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)

    # powers[k][j] = action of the k-th generator to the j-th power
    powers = []
    for a, e in zip(action, orders):
        row = [ident]
        for _ in range(e - 1):
            row.append(a * row[-1])
        powers.append(row)

    def act(sigma) -> IntMatrix:
        out = ident
        for k, exp in enumerate(sigma):
            out = powers[k][exp] * out
        return out

    acting = [act(sigma) for sigma in elements]

    def compose(sigma, tau):
        return tuple((x + y) % e for x, y, e in zip(sigma, tau, orders))

    dim = size * m
    rows = []
    for si, sigma in enumerate(elements):
        for ti, tau in enumerate(elements):
            sti = index[compose(sigma, tau)]
            msig = acting[si]
            for i in range(m):
                row = [0] * dim
                row[sti * m + i] += 1
                row[si * m + i] -= 1
                for j in range(m):
                    row[ti * m + j] -= msig[i, j]
                rows.append(row)
    pad = []
    for block in range(size):
        for rel in module.relations.entries:
            pad.append(
                (0,) * (block * m) + tuple(rel) + (0,) * ((size - block - 1) * m)
            )
    # the cocycle condition lands in a product of copies of the module
    target = FgAbelianGroup(
        size * size * m,
        [
            (0,) * (block * m) + tuple(rel) + (0,) * ((size * size - block - 1) * m)
            for block in range(size * size)
            for rel in module.relations.entries
        ],
    )
    mat = IntMatrix(rows) if rows else IntMatrix.zero(size * size * m, dim)
    cocycles = kernel_rows(GroupHom(FgAbelianGroup(dim), target, mat))

    boundaries = []
    for c in range(m):
        row = []
        for si in range(size):
            msig = acting[si]
            row.extend(msig[i, c] - int(i == c) for i in range(m))
        boundaries.append(tuple(row))
    boundaries.extend(pad)
    return subquotient_structure(dim, cocycles, boundaries)
