"""Exact integer linear algebra and finitely generated abelian groups.

Everything here runs on arbitrary-precision Python integers.  Groups are
presented as a free ambient group Z^rank modulo the row span of a relation
matrix; elements are coordinate tuples in the ambient group, kept in a
canonical form obtained by reducing against the Hermite normal form of the
relation lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatchError, IllDefinedMapError, LogMonoidError


class IntMatrix:
    """Immutable integer matrix, stored row-major as a tuple of tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatchError("ragged rows in matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", widths.pop() if widths else 0)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ot = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vec)} against {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def left_apply(self, vec) -> tuple:
        """Row vector times matrix."""
        vec = tuple(vec)
        if len(vec) != self.rows:
            raise DimensionMismatchError(f"vector of length {len(vec)} against {self.rows} rows")
        return tuple(
            sum(vec[i] * self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if other.rows and self.rows and other.cols != self.cols:
            raise DimensionMismatchError("column counts differ")
        return IntMatrix(self.entries + other.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.entries == other.entries \
            and self.rows == other.rows and self.cols == other.cols

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


def _identity_list(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: IntMatrix):
    """Diagonalize m over the integers.

    Returns (u, d, v) with u * m * v = d, u and v unimodular, and the diagonal
    of d nonnegative with each entry dividing the next.  The diagonal is
    uniquely determined by m; the same input always yields the same output.
    """
    u, d, v, _, _ = _snf_full(m)
    return u, d, v


def _snf_full(m: IntMatrix):
    """Smith normal form together with the inverses of both transforms."""
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = _identity_list(nr)
    uinv = _identity_list(nr)
    v = _identity_list(nc)
    vinv = _identity_list(nc)

    def row_add(i, j, q):
        # row i += q * row j; uinv picks up the inverse as a column operation
        ai, aj = a[i], a[j]
        for k in range(nc):
            ai[k] += q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(nr):
            ui[k] += q * uj[k]
        for row in uinv:
            row[j] -= q * row[i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in uinv:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in uinv:
            row[i] = -row[i]

    def col_add(i, j, q):
        # col i += q * col j; vinv picks up the inverse op as a row operation
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]
        vj, vi = vinv[j], vinv[i]
        for k in range(nc):
            vj[k] -= q * vi[k]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # smallest nonzero entry of the remaining block becomes the pivot
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            # sweep the pivot row and column until only the pivot survives
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            witness = None
            p = a[t][t]
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_add(t, witness, 1)
        if a[t][t] < 0:
            row_negate(t)
        t += 1
    return IntMatrix(u), IntMatrix(a), IntMatrix(v), IntMatrix(uinv), IntMatrix(vinv)


def hermite_normal_form(m: IntMatrix):
    """Row-style Hermite normal form.

    Returns (h, u) with h = u * m, u unimodular, pivots positive, entries
    below a pivot zero and entries above it reduced into [0, pivot).
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = _identity_list(nr)

    def row_add(i, j, q):
        ai, aj = a[i], a[j]
        for k in range(nc):
            ai[k] += q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(nr):
            ui[k] += q * uj[k]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    r = 0
    for j in range(nc):
        if r >= nr:
            break
        while True:
            best = None
            for i in range(r, nr):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best][j])):
                    best = i
            if best is None:
                break
            if best != r:
                row_swap(r, best)
            done = True
            for i in range(r + 1, nr):
                if a[i][j] != 0:
                    row_add(i, r, -(a[i][j] // a[r][j]))
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if a[r][j] != 0:
            if a[r][j] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][j] // a[r][j]
                if q:
                    row_add(i, r, -q)
            r += 1
    return IntMatrix(a), IntMatrix(u)


class Lattice:
    """A sublattice of Z^n, closed under the ambient coordinates.

    Wraps the Hermite normal form of a spanning set and provides canonical
    coset representatives.
    """

    __slots__ = ("dim", "basis", "_pivots")

    def __init__(self, dim: int, spanning_rows=()):
        self.dim = dim
        rows = [tuple(int(x) for x in r) for r in spanning_rows]
        for r in rows:
            if len(r) != dim:
                raise DimensionMismatchError("lattice vector of wrong length")
        h, _ = hermite_normal_form(IntMatrix(rows)) if rows else (IntMatrix([]), None)
        basis = [r for r in h.entries if any(r)]
        self.basis = tuple(basis)
        pivots = []
        for idx, row in enumerate(basis):
            col = next(k for k, x in enumerate(row) if x)
            pivots.append((idx, col, row[col]))
        self._pivots = tuple(pivots)

    def reduce(self, vec) -> tuple:
        """Canonical representative of vec modulo this lattice."""
        v = [int(x) for x in vec]
        if len(v) != self.dim:
            raise DimensionMismatchError("vector of wrong length")
        for idx, col, p in self._pivots:
            q = v[col] // p
            if q:
                row = self.basis[idx]
                for k in range(col, self.dim):
                    v[k] -= q * row[k]
        return tuple(v)

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def rank(self) -> int:
        return len(self.basis)


class IntegerSolver:
    """Repeated integer solves m * y = target against one fixed matrix.

    The normal form is computed once at construction; each solve is then a
    pair of matrix applications plus divisibility checks.
    """

    __slots__ = ("matrix", "_u", "_d", "_v", "_k")

    def __init__(self, m: IntMatrix):
        self.matrix = m
        u, d, v, _, _ = _snf_full(m)
        self._u, self._d, self._v = u, d, v
        self._k = min(m.rows, m.cols)

    def solve(self, target) -> tuple | None:
        target = tuple(int(x) for x in target)
        if len(target) != self.matrix.rows:
            raise DimensionMismatchError("target length does not match row count")
        c = self._u.apply(target)
        t = [0] * self.matrix.cols
        for i in range(self.matrix.rows):
            di = self._d[i, i] if i < self._k else 0
            if di:
                if c[i] % di:
                    return None
                t[i] = c[i] // di
            elif c[i]:
                return None
        return self._v.apply(t)


def solve_integer_system(m: IntMatrix, target) -> tuple | None:
    """One integer solution y of m * y = target, or None if there is none."""
    return IntegerSolver(m).solve(target)


def integer_kernel_basis(m: IntMatrix) -> tuple:
    """Basis of {y : m * y = 0}, as a tuple of coordinate tuples."""
    _, d, v, _, _ = _snf_full(m)
    k = min(m.rows, m.cols)
    out = []
    for j in range(m.cols):
        if j >= k or d[j, j] == 0:
            out.append(v.column(j))
    return tuple(out)


@dataclass(frozen=True)
class GroupStructure:
    """Isomorphism type Z^free_rank + Z/d_1 + ... with d_1 | d_2 | ..."""

    free_rank: int
    invariant_factors: tuple

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        """Group order; 0 stands for infinite."""
        if self.free_rank:
            return 0
        return math.prod(self.invariant_factors)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


class FgAbelianGroup:
    """Z^rank modulo the row span of a relation matrix."""

    __slots__ = (
        "rank", "relations", "_lattice", "_snf_v", "_snf_vinv", "_diag",
        "_free_cols", "_torsion_cols",
    )

    def __init__(self, rank: int, relations=()):
        if rank < 0:
            raise LogMonoidError("negative rank")
        self.rank = rank
        self.relations = relations if isinstance(relations, IntMatrix) else IntMatrix(relations)
        if self.relations.rows and self.relations.cols != rank:
            raise DimensionMismatchError("relation width does not match rank")
        self._lattice = Lattice(rank, self.relations.entries)
        _, d, v, _, vinv = _snf_full(self.relations)
        self._snf_v = v if self.relations.rows else IntMatrix.identity(rank)
        self._snf_vinv = vinv if self.relations.rows else IntMatrix.identity(rank)
        k = min(self.relations.rows, rank)
        diag = [d[i, i] for i in range(k)] if self.relations.rows else []
        self._diag = tuple(diag)
        self._free_cols = tuple(
            j for j in range(rank) if j >= len(diag) or diag[j] == 0
        )
        self._torsion_cols = tuple(
            j for j in range(len(diag)) if diag[j] >= 2
        )

    # -- elements ---------------------------------------------------------

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, self._lattice.reduce(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def normalize(self, coords) -> tuple:
        return self._lattice.reduce(coords)

    def contains_in_relations(self, coords) -> bool:
        return self._lattice.contains(coords)

    # -- structure --------------------------------------------------------

    def structure(self) -> GroupStructure:
        return GroupStructure(
            free_rank=len(self._free_cols),
            invariant_factors=tuple(d for d in self._diag if d >= 2),
        )

    def decompose(self, coords) -> tuple:
        """Coordinates (free part, torsion part) in the invariant-factor basis."""
        y = self._snf_v.left_apply(coords)
        free = tuple(y[j] for j in self._free_cols)
        tors = tuple(y[j] % self._diag[j] for j in self._torsion_cols)
        return free, tors

    def free_projection(self, coords) -> tuple:
        return self.decompose(coords)[0]

    def free_projection_matrix(self) -> IntMatrix:
        """Matrix computing free_projection; kills exactly the torsion."""
        return IntMatrix(
            [
                [self._snf_v[i, c] for i in range(self.rank)]
                for c in self._free_cols
            ]
        )

    def element_order(self, coords) -> int:
        """Order of the element; 0 stands for infinite order."""
        free, _ = self.decompose(coords)
        if any(free):
            return 0
        y = self._snf_v.left_apply(coords)
        n = 1
        for j in self._torsion_cols:
            d = self._diag[j]
            n = math.lcm(n, d // math.gcd(d, y[j] % d))
        return n

    def torsion_subgroup(self) -> tuple:
        """Generators of the torsion subgroup, one per invariant factor."""
        out = []
        for j in self._torsion_cols:
            out.append(self.element(self._snf_vinv.row(j)))
        return tuple(out)

    def torsion_elements(self) -> tuple:
        """Every torsion element, the zero element included."""
        elems = [self.zero()]
        for j in self._torsion_cols:
            gen = self.element(self._snf_vinv.row(j))
            d = self._diag[j]
            elems = [e + k * gen for e in elems for k in range(d)]
        seen = {}
        for e in elems:
            seen[e.coords] = e
        return tuple(seen[c] for c in sorted(seen))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FgAbelianGroup)
            and self.rank == other.rank
            and self._lattice.basis == other._lattice.basis
        )

    def __hash__(self):
        return hash((self.rank, self._lattice.basis))

    def __repr__(self):
        return f"FgAbelianGroup(rank={self.rank}, relations={len(self._lattice.basis)})"


class GroupElement:
    """An element of an FgAbelianGroup, stored in canonical coordinates."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FgAbelianGroup, coords):
        self.group = group
        self.coords = tuple(int(x) for x in coords)

    def _check(self, other):
        if self.group != other.group:
            raise DimensionMismatchError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.coords))

    def __rmul__(self, n: int) -> "GroupElement":
        return self.group.element(tuple(n * a for a in self.coords))

    def __mul__(self, n: int) -> "GroupElement":
        return self.__rmul__(n)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return self.group.element_order(self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.coords == other.coords
        )

    def __lt__(self, other) -> bool:
        return self.coords < other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"GroupElement{self.coords}"


class GroupHom:
    """Homomorphism between presented groups, given on ambient coordinates.

    The matrix has target-rank rows and source-rank columns and must carry
    the source relation lattice into the target relation lattice.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix):
        matrix = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
        if matrix.rows != target.rank or matrix.cols != source.rank:
            raise DimensionMismatchError(
                f"map matrix is {matrix.rows}x{matrix.cols}, "
                f"need {target.rank}x{source.rank}"
            )
        for row in source.relations.entries:
            if not target.contains_in_relations(matrix.apply(row)):
                raise IllDefinedMapError(f"relation {row} is not respected")
        self.source = source
        self.target = target
        self.matrix = matrix

    def apply(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return self.target.element(self.matrix.apply(coords))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        if inner.target != self.source:
            raise DimensionMismatchError("homs do not compose")
        return GroupHom(inner.source, self.target, self.matrix * inner.matrix)


class CokernelData:
    """Cokernel of a group homomorphism, with the quotient projection."""

    __slots__ = ("group", "_target")

    def __init__(self, hom: GroupHom):
        extra = hom.matrix.transpose()
        self.group = FgAbelianGroup(
            hom.target.rank, hom.target.relations.vstack(extra)
        )
        self._target = hom.target

    def project(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return self.group.element(coords)


def cokernel(hom: GroupHom) -> CokernelData:
    return CokernelData(hom)


def kernel_is_trivial(hom: GroupHom) -> bool:
    """True iff the induced map on group elements is injective."""
    rel_t = hom.target.relations.transpose()
    if rel_t.rows == 0:
        rel_t = IntMatrix.zero(hom.target.rank, 0)
    block = IntMatrix(
        [
            tuple(hom.matrix.row(i)) + tuple(rel_t.row(i))
            for i in range(hom.target.rank)
        ]
    )
    for vec in integer_kernel_basis(block):
        if not hom.source.contains_in_relations(vec[: hom.source.rank]):
            return False
    return True


def kernel_rows(hom: GroupHom) -> tuple:
    """Rows spanning the full preimage of zero in source coordinates.

    The span contains the source relation lattice; its image in the source
    group is the kernel subgroup.
    """
    rel_t = hom.target.relations.transpose()
    if rel_t.rows == 0:
        rel_t = IntMatrix.zero(hom.target.rank, 0)
    block = IntMatrix(
        [
            tuple(hom.matrix.row(i)) + tuple(rel_t.row(i))
            for i in range((hom.target.rank))
        ]
    )
    n = hom.source.rank
    rows = [vec[:n] for vec in integer_kernel_basis(block)]
    rows.extend(hom.source.relations.entries)
    return tuple(rows)


def subquotient_structure(dim: int, numerator_rows, denominator_rows) -> GroupStructure:
    """Structure of span(numerator)/span(denominator) inside Z^dim.

    The denominator lattice must be contained in the numerator lattice.
    """
    num = Lattice(dim, numerator_rows)
    basis = num.basis
    s = len(basis)
    if s == 0:
        for d in denominator_rows:
            if any(d):
                raise LogMonoidError("denominator lattice not inside numerator")
        return GroupStructure(0, ())
    basis_cols = IntMatrix([[basis[j][i] for j in range(s)] for i in range(dim)])
    solver = IntegerSolver(basis_cols)
    rel = []
    for d in denominator_rows:
        c = solver.solve(d)
        if c is None:
            raise LogMonoidError("denominator lattice not inside numerator")
        rel.append(c)
    return FgAbelianGroup(s, rel).structure()


def _factorize(n: int) -> dict:
    """Prime factorization by trial division; fine at the scales used here."""
    n = abs(int(n))
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors_from_orders(orders) -> tuple:
    """Invariant-factor form of a direct sum of cyclic groups Z/n.

    Orders equal to 1 are dropped; an order of 0 is rejected.  The result is
    the ascending chain d_1 | d_2 | ... with every d_i >= 2.
    """
    per_prime: dict = {}
    for n in orders:
        n = int(n)
        if n <= 0:
            raise LogMonoidError("cyclic order must be positive")
        for p, e in _factorize(n).items():
            per_prime.setdefault(p, []).append(e)
    if not per_prime:
        return ()
    height = max(len(v) for v in per_prime.values())
    factors = []
    for slot in range(height):
        f = 1
        for p, exps in per_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if slot < len(exps_sorted):
                f *= p ** exps_sorted[slot]
        factors.append(f)
    return tuple(sorted(f for f in factors if f >= 2))


def hom_to_cyclic(a: FgAbelianGroup, n: int) -> GroupStructure:
    """Structure of Hom(a, Z/n) for n >= 1."""
    if n < 1:
        raise LogMonoidError("modulus must be at least 1")
    st = a.structure()
    orders = [n] * st.free_rank + [math.gcd(d, n) for d in st.invariant_factors]
    return GroupStructure(0, invariant_factors_from_orders(o for o in orders if o > 1))


def ext1(a: FgAbelianGroup, b: FgAbelianGroup) -> GroupStructure:
    """Structure of Ext^1(a, b), which is the direct sum of b/(d*b) over the
    invariant factors d of a."""
    sa = a.structure()
    sb = b.structure()
    orders = []
    for d in sa.invariant_factors:
        orders.extend([d] * sb.free_rank)
        orders.extend(math.gcd(d, e) for e in sb.invariant_factors)
    return GroupStructure(0, invariant_factors_from_orders(o for o in orders if o > 1))
