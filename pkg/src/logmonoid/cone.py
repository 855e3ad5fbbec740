"""Rational polyhedral cones with exact arithmetic.

Provides strictly positive integer functionals (gradings), exact membership
tests, and Hilbert bases of pointed cones intersected with the full integer
lattice.  Rational work uses fractions.Fraction throughout; no floats.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import DimensionMismatchError, NonPointedConeError
from .lattice import IntMatrix, _snf_full, integer_kernel_basis


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rational_feasible(rows, nvars):
    """Find a rational point satisfying every constraint a . x >= c.

    rows is a sequence of (coefficients, c) pairs.  Returns a list of
    Fractions or None.  Fourier-Motzkin elimination; fine for the small
    systems that arise from gradings.
    """
    system = [([Fraction(x) for x in a], Fraction(c)) for a, c in rows]
    for a, _ in system:
        if len(a) != nvars:
            raise DimensionMismatchError("constraint width mismatch")
    stack = []
    for var in range(nvars - 1, -1, -1):
        lowers, uppers, rest = [], [], []
        for a, c in system:
            av = a[var]
            head = a[:var]
            if av == 0:
                rest.append((head, c))
            elif av > 0:
                lowers.append(([h / av for h in head], c / av))
            else:
                uppers.append(([h / av for h in head], c / av))
        system = rest
        for hl, cl in lowers:
            for hu, cu in uppers:
                # lower bound cl - hl.x must not exceed upper bound cu - hu.x
                system.append(([l - u for l, u in zip(hl, hu)], cl - cu))
        stack.append((var, lowers, uppers))
    if any(c > 0 for _, c in system):
        return None
    point = [Fraction(0)] * nvars
    for var, lowers, uppers in reversed(stack):
        lo = None
        for h, c in lowers:
            b = c - _dot(h, point[:var])
            if lo is None or b > lo:
                lo = b
        hi = None
        for h, c in uppers:
            b = c - _dot(h, point[:var])
            if hi is None or b < hi:
                hi = b
        if lo is None and hi is None:
            point[var] = Fraction(0)
        elif lo is None:
            point[var] = min(hi, Fraction(0))
        elif hi is None:
            point[var] = max(lo, Fraction(0))
        else:
            point[var] = (lo + hi) / 2
    return point


def integral_positive_functional(targets, basis, dim):
    """Integer vector w in the span of basis with w . t >= 1 for all targets.

    Returns None when no such functional exists.  With no targets the zero
    functional is returned, which is a valid grading for a torsion monoid.
    """
    targets = [tuple(t) for t in targets]
    if not targets:
        return (0,) * dim
    if not basis:
        return None
    rows = [([_dot(t, b) for b in basis], 1) for t in targets]
    lam = rational_feasible(rows, len(basis))
    if lam is None:
        return None
    w = [sum(l * Fraction(b[i]) for l, b in zip(lam, basis)) for i in range(dim)]
    scale = math.lcm(*(f.denominator for f in w))
    ints = [int(f * scale) for f in w]
    g = math.gcd(*ints)
    if g > 1:
        ints = [x // g for x in ints]
    assert all(_dot(ints, t) >= 1 for t in targets)
    return tuple(ints)


def _rank(vectors, dim):
    if not vectors:
        return 0
    _, d, _, _, _ = _snf_full(IntMatrix(vectors))
    k = min(len(vectors), dim)
    return sum(1 for i in range(k) if d[i, i] != 0)


class RationalCone:
    """The cone generated by finitely many integer vectors in Q^dim."""

    def __init__(self, generators, dim: int):
        self.dim = dim
        gens = []
        seen = set()
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != dim:
                raise DimensionMismatchError("generator of wrong length")
            if any(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = tuple(gens)
        self.rank = _rank(gens, dim)
        self._facets = self._facet_normals() if self.rank == dim else None
        self._subsets = None

    # -- dual description (full-dimensional case) -------------------------

    def _facet_normals(self):
        d = self.dim
        normals = set()
        if d == 1:
            candidates = [(1,)]
        else:
            candidates = []
            for sub in itertools.combinations(self.generators, d - 1):
                if _rank(list(sub), d) != d - 1:
                    continue
                kernel = integer_kernel_basis(IntMatrix(sub))
                if len(kernel) != 1:
                    continue
                candidates.append(kernel[0])
        for n in candidates:
            g = math.gcd(*(abs(x) for x in n))
            if g > 1:
                n = tuple(x // g for x in n)
            signs = [_dot(n, v) for v in self.generators]
            if all(s >= 0 for s in signs):
                normals.add(n)
            elif all(s <= 0 for s in signs):
                normals.add(tuple(-x for x in n))
        return tuple(sorted(normals))

    def _independent_subsets(self):
        if self._subsets is None:
            subs = []
            for sub in itertools.combinations(self.generators, self.rank):
                if _rank(list(sub), self.dim) == self.rank:
                    subs.append(sub)
            self._subsets = subs
        return self._subsets

    def contains(self, x) -> bool:
        x = tuple(int(v) for v in x)
        if self._facets is not None:
            return all(_dot(n, x) >= 0 for n in self._facets)
        if not any(x):
            return True
        # lower-dimensional cone: Caratheodory over independent subsets
        for sub in self._independent_subsets():
            t = _solve_nonneg(sub, x, self.dim)
            if t is not None:
                return True
        return False

    def positive_functional(self):
        """Integer w with w . g >= 1 for every generator, or None."""
        basis = [tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim)]
        return integral_positive_functional(self.generators, basis, self.dim)


def _solve_nonneg(vectors, x, dim):
    """Rational t >= 0 with sum t_i * vectors_i = x, for independent vectors."""
    s = len(vectors)
    # Gaussian elimination on the dim x (s+1) augmented system
    aug = [[Fraction(vectors[j][i]) for j in range(s)] + [Fraction(x[i])] for i in range(dim)]
    pivots = []
    r = 0
    for c in range(s):
        pr = next((i for i in range(r, dim) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, dim):
        if aug[i][s] != 0:
            return None
    t = [Fraction(0)] * s
    for row, c in enumerate(pivots):
        t[c] = aug[row][s]
    if any(v < 0 for v in t):
        return None
    return t


def _parallelepiped_points(vectors, dim):
    """Integer points of {sum t_i v_i : 0 <= t_i < 1} for independent vectors."""
    s = len(vectors)
    m = IntMatrix([[vectors[j][i] for j in range(s)] for i in range(dim)])
    _, d, v, uinv, _ = _snf_full(m)
    diag = [d[i, i] for i in range(s)]
    assert all(diag), "vectors must be independent"
    points = []
    for combo in itertools.product(*(range(di) for di in diag)):
        y = list(combo) + [0] * (dim - s)
        x = uinv.apply(y)
        # coordinates of x in the vectors basis, then shift into [0, 1)
        t = v.apply([Fraction(combo[i], diag[i]) for i in range(s)])
        shift = [math.floor(ti) for ti in t]
        p = tuple(
            x[i] - sum(shift[j] * vectors[j][i] for j in range(s)) for i in range(dim)
        )
        if any(p):
            points.append(p)
    return points


def hilbert_basis_full(generators, dim):
    """Hilbert basis of cone(generators) intersected with Z^dim.

    The cone must be pointed; NonPointedConeError otherwise.  Returns the
    unique minimal generating set, sorted.
    """
    cone = RationalCone(generators, dim)
    if not cone.generators:
        return ()
    w = cone.positive_functional()
    if w is None:
        raise NonPointedConeError("cone contains a line")
    candidates = set(cone.generators)
    for sub in cone._independent_subsets():
        candidates.update(_parallelepiped_points(sub, dim))
    ordered = sorted(candidates, key=lambda x: (_dot(w, x), x))
    basis = []
    for x in ordered:
        wx = _dot(w, x)
        reducible = False
        for y in basis:
            if _dot(w, y) >= wx:
                break
            if cone.contains(tuple(a - b for a, b in zip(x, y))):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return tuple(sorted(basis))
