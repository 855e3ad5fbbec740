"""Shared oracle code for the test suite.

Everything here recomputes answers by elementary means so the library can
be checked against independent arithmetic.
"""

from fractions import Fraction


def det_fraction(rows) -> Fraction:
    """Determinant of a square integer matrix by fraction-free-ish elimination."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("square matrix required")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def weight_of(weights, coords) -> int:
    return sum(w * c for w, c in zip(weights, coords))


def brute_saturation_member(monoid, weights, a, weight_cap=24) -> bool:
    """Membership in the saturation by definition: some positive multiple
    of a lands in the monoid, and a itself lies in the group hull.

    The multiple search walks n upward while n*a stays inside the weight
    window; elements of positive weight above the cap cannot be reached by
    the enumeration, so the caller chooses candidates whose witnesses fit.
    """
    if not monoid.gp().contains(a):
        return False
    if not any(a):
        return True
    wa = weight_of(weights, a)
    if wa <= 0:
        # nonzero elements of the monoid all have positive weight, and so
        # do their fractions
        return False
    n = 1
    while n * wa <= weight_cap:
        if monoid.contains(tuple(n * c for c in a)):
            return True
        n += 1
    return False


def saturation_candidates(monoid, weights, window=8, divisor_cap=8):
    """Candidate points for comparing saturation membership on a window.

    Takes every fraction z/n of a monoid element z of weight at most the
    window, plus unit perturbations of those, so both members and
    non-members of the saturation show up.
    """
    rank = monoid.ambient.rank
    cands = set()
    for el in monoid.elements_up_to(window):
        z = el.coords
        for n in range(1, divisor_cap + 1):
            if all(c % n == 0 for c in z):
                cands.add(tuple(c // n for c in z))
    units = [tuple(int(i == j) for i in range(rank)) for j in range(rank)]
    bumped = set()
    for a in sorted(cands):
        for u in units:
            bumped.add(tuple(x + y for x, y in zip(a, u)))
            bumped.add(tuple(x - y for x, y in zip(a, u)))
    cands |= bumped
    return sorted(cands)
