"""Seeded random instances for verification suites and tests.

Everything draws from a caller-supplied random.Random so identical seeds
give identical instances everywhere.
"""

import random

from .lattice import FgAbelianGroup, IntMatrix
from .monoid import Monoid, free_monoid
from .morphism import MonoidHom
from .fscat import kummer_root, root_by_section


def random_graded_monoid(
    rng: random.Random,
    max_rank: int = 3,
    max_entry: int = 3,
    allow_negative: bool = True,
    max_generators: int | None = None,
) -> Monoid:
    """A finitely generated graded monoid in a free ambient group.

    Generators may have negative coordinates; candidates without a positive
    grading are discarded and redrawn.
    """
    lo = -2 if allow_negative else 0
    while True:
        rank = rng.randint(1, max_rank)
        count = rng.randint(rank, rank + 2)
        if max_generators is not None:
            count = min(count, max_generators)
        gens = []
        for _ in range(count):
            v = tuple(rng.randint(lo, max_entry) for _ in range(rank))
            if any(v):
                gens.append(v)
        if not gens:
            continue
        monoid = Monoid(FgAbelianGroup(rank), gens)
        if monoid.try_grading() is not None:
            return monoid


def random_saturated_monoid(rng: random.Random, max_rank: int = 2) -> Monoid:
    return random_graded_monoid(rng, max_rank=max_rank).saturation()


def random_kummer_instance(
    rng: random.Random, max_rank: int = 2, max_index: int = 4
) -> MonoidHom:
    """A Kummer cover with saturated graded source.

    Draws one of three shapes: a root cover of a random saturated monoid, a
    coordinate scaling of a free monoid, or a single adjoined root.
    """
    shape = rng.randrange(3)
    n = rng.randint(1, max_index)
    if shape == 0:
        base = random_saturated_monoid(rng, max_rank)
        _, hom = kummer_root(base, n)
        return hom
    if shape == 1:
        rank = rng.randint(1, max_rank)
        base = free_monoid(rank)
        # independent exponents per coordinate keep the cokernel varied
        scale = [
            [rng.randint(1, max_index) * int(i == j) for j in range(rank)]
            for i in range(rank)
        ]
        return MonoidHom(base, base, scale)
    base = random_saturated_monoid(rng, max_rank)
    gens = base.generators
    a = gens[rng.randrange(len(gens))] if gens else base.ambient.zero()
    return root_by_section(base, a, n).hom


def random_change_map(rng: random.Random, source: Monoid, max_entry: int = 2) -> MonoidHom:
    """A map out of source into a free monoid with nonnegative matrix.

    Nonnegative entries on a graded source with nonnegative generators keep
    images inside the target; redraws until the hom is well defined.
    """
    target_rank = rng.randint(1, 2)
    target = free_monoid(target_rank)
    for _ in range(200):
        mat = [
            [rng.randint(0, max_entry) for _ in range(source.ambient.rank)]
            for _ in range(target_rank)
        ]
        try:
            return MonoidHom(source, target, mat)
        except Exception:
            continue
    # identity-shaped fallback: collapse everything to zero
    return MonoidHom(source, target, IntMatrix.zero(target_rank, source.ambient.rank))
