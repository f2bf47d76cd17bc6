"""Seeded random instances for property checks.

All generators take an explicit random.Random so that suites are
reproducible; nothing here touches global random state.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .bundles import BundleTopology
from .criteria import SurfaceKind, SurfaceModel
from .lattice import (
    Definiteness,
    IntersectionLattice,
    LatticeVector,
    classify_definiteness,
    pairing,
)


def random_vector(rng: random.Random, rank: int, lo: int = -2, hi: int = 2) -> LatticeVector:
    return tuple(rng.randint(lo, hi) for _ in range(rank))


def _dense_nsd(rng: random.Random, rank: int, entry_lo: int) -> Optional[IntersectionLattice]:
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = rng.randint(entry_lo, 0)
        for j in range(i + 1, rank):
            g[i][j] = g[j][i] = rng.randint(entry_lo, 0)
    lat = IntersectionLattice(tuple(tuple(row) for row in g))
    if classify_definiteness(lat) is Definiteness.INDEFINITE_OR_POSITIVE:
        return None
    return lat


def random_nsd_lattice(rng: random.Random, rank: int, entry_lo: int = -4) -> IntersectionLattice:
    """Negative semi-definite Gram matrix with entries in [entry_lo, 0].

    Mixes rejection-sampled dense forms with explicitly degenerate ones
    (a definite block padded by zero rows, under a random permutation)
    so that nontrivial radicals appear often.
    """
    if rank == 0:
        return IntersectionLattice(())
    if rng.random() < 0.3:
        block = rng.randint(0, rank - 1)
        while True:
            sub = _dense_nsd(rng, block, entry_lo)
            if sub is not None:
                break
        perm = list(range(rank))
        rng.shuffle(perm)
        g = [[0] * rank for _ in range(rank)]
        for i in range(block):
            for j in range(block):
                g[perm[i]][perm[j]] = sub.gram[i][j]
        return IntersectionLattice(tuple(tuple(row) for row in g))
    while True:
        lat = _dense_nsd(rng, rank, entry_lo)
        if lat is not None:
            return lat


def random_even_nsd_lattice(rng: random.Random, rank: int) -> IntersectionLattice:
    """Negative semi-definite form with even diagonal (K3-style)."""
    while True:
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = -2 * rng.randint(0, 2)
            for j in range(i + 1, rank):
                g[i][j] = g[j][i] = -rng.randint(0, 2)
        lat = IntersectionLattice(tuple(tuple(row) for row in g))
        if classify_definiteness(lat) is not Definiteness.INDEFINITE_OR_POSITIVE:
            return lat


def random_k3_surface(rng: random.Random, max_rank: int = 3) -> SurfaceModel:
    rank = rng.randint(1, max_rank)
    return SurfaceModel(
        SurfaceKind.K3,
        random_even_nsd_lattice(rng, rank),
        2,
        (0,) * rank,
        algebraic_dimension=rng.choice([0, 1]),
    )


def random_class_vii_surface(rng: random.Random, max_b2: int = 3) -> SurfaceModel:
    """Class VII surface models: rank 0 (b2 = 0), chains of -1 classes
    (iterated blow-ups), or a general semi-definite form."""
    style = rng.randint(0, 2)
    if style == 0:
        rank = 0
        lat = IntersectionLattice(())
    elif style == 1:
        rank = rng.randint(1, max_b2)
        lat = IntersectionLattice(
            tuple(tuple(-1 if i == j else 0 for j in range(rank)) for i in range(rank))
        )
    else:
        rank = rng.randint(1, max_b2)
        lat = random_nsd_lattice(rng, rank)
    return SurfaceModel(SurfaceKind.CLASS_VII, lat, 0, (0,) * rank, vii_applicable=True)


def random_bundle(
    rng: random.Random,
    lattice: IntersectionLattice,
    rank: Optional[int] = None,
    c1_lo: int = -2,
    c1_hi: int = 2,
    c2_lo: int = -3,
    c2_hi: int = 3,
    allow_outside_ns: bool = False,
) -> BundleTopology:
    r = rank if rank is not None else rng.choice([2, 3, 4])
    in_ns = True
    if allow_outside_ns and rng.random() < 0.2:
        in_ns = False
    return BundleTopology(
        r,
        random_vector(rng, lattice.rank, c1_lo, c1_hi),
        rng.randint(c2_lo, c2_hi),
        in_ns,
    )


def random_direct_sum_bundle(
    rng: random.Random,
    lattice: IntersectionLattice,
    rank: Optional[int] = None,
) -> BundleTopology:
    """Chern data of a direct sum of line bundles.

    c2 of a sum is the second elementary symmetric function of the
    summands' first Chern classes, so the result always satisfies the
    filtrable numerical condition delta >= m.
    """
    r = rank if rank is not None else rng.choice([2, 3, 4])
    mus = [random_vector(rng, lattice.rank) for _ in range(r)]
    c1 = tuple(sum(mu[i] for mu in mus) for i in range(lattice.rank))
    c2 = sum(
        pairing(lattice, mus[i], mus[j]) for i in range(r) for j in range(i + 1, r)
    )
    return BundleTopology(r, c1, c2)


def random_unimodular(rng: random.Random, n: int, steps: int = 4) -> Tuple[List[List[int]], List[List[int]]]:
    """A unimodular matrix and its inverse, as a short product of shears,
    swaps and sign flips."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    uinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n < 1:
        return u, uinv
    for _ in range(steps):
        op = rng.randint(0, 2)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if op == 0 and i != j:
            k = rng.choice([-1, 1])
            for row in range(n):
                u[row][j] += k * u[row][i]
            for col in range(n):
                uinv[i][col] -= k * uinv[j][col]
        elif op == 1 and i != j:
            for row in range(n):
                u[row][i], u[row][j] = u[row][j], u[row][i]
            uinv[i], uinv[j] = uinv[j], uinv[i]
        elif op == 2:
            for row in range(n):
                u[row][i] = -u[row][i]
            uinv[i] = [-x for x in uinv[i]]
    return u, uinv
