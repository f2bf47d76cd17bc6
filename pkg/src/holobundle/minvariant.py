"""Minimal squared-deviation decompositions of a lattice class.

For a negative semi-definite lattice, rank r >= 1 and a class a, the
invariant computed here is

    m(r, a) = r * inf { -sum_i (a/r - mu_i)^2 : mu_i in the lattice,
                        sum_i mu_i = a }

with squares taken in the intersection form.  Working with the scaled
objective T = -sum_i (a - r*mu_i)^2 keeps everything in integers; the
value is T / r.  Deviations along the radical of the form cost nothing,
so the search happens in the negative-definite quotient.

Two implementations are provided: m_oracle exhaustively enumerates a
coordinate box around the balanced point a/r (with a certificate that
the box provably contains the global optimum), and m_compute solves the
same problem by branch-and-bound over an exact rational Cholesky
factorisation of the substituted quadratic form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from . import intlinalg
from .errors import DomainError, IndefiniteLatticeError
from .lattice import (
    Definiteness,
    IntersectionLattice,
    LatticeVector,
    QuotientData,
    classify_definiteness,
    lift_from_quotient,
    pairing,
    project_to_quotient,
    radical_and_quotient,
    vec_add,
    vec_sub,
    vec_sum,
    zero_vector,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MResult:
    """Value, witness decomposition and scaled objective of m(r, a).

    value is a non-negative integer in every intended case; if the
    scaled objective ever failed to be divisible by r it would be the
    exact rational T / r instead (loudly logged, never rounded).
    certified is always True for m_compute; for m_oracle it records
    whether the search box provably contained the global optimum.
    """

    value: Union[int, Fraction]
    decomposition: Tuple[LatticeVector, ...]
    scaled_objective: int
    certified: bool = True


def m_translate_reduce(lattice: IntersectionLattice, r: int, a: Sequence[int]) -> LatticeVector:
    """Translate a by r * lambda to the representative with coordinates in [0, r).

    m(r, .) is invariant under such translations, so this is a cheap
    preprocessing step that keeps enumeration boxes small.
    """
    av = _check_args(lattice, r, a)
    return tuple(c % r for c in av)


def _check_args(lattice: IntersectionLattice, r: int, a: Sequence[int]) -> LatticeVector:
    if r < 1:
        raise DomainError(f"rank must be a positive integer, got {r}")
    av = tuple(int(x) for x in a)
    if len(av) != lattice.rank:
        from .errors import DimensionMismatchError

        raise DimensionMismatchError(
            f"class has length {len(av)}, lattice rank is {lattice.rank}"
        )
    return av


def _require_semidefinite(lattice: IntersectionLattice) -> None:
    if classify_definiteness(lattice) is Definiteness.INDEFINITE_OR_POSITIVE:
        raise IndefiniteLatticeError(
            "lattice not negative semi-definite: m(r, a) would be -infinity "
            "(algebraic surface)"
        )


def _qform(q: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    return sum(x[i] * q[i][j] * x[j] for i in range(len(x)) for j in range(len(x)))


def _positive_quotient(qd: QuotientData) -> List[List[int]]:
    # negate the negative-definite quotient form to get a positive one
    return [[-e for e in row] for row in qd.quotient_gram]


def round_half_toward_zero(num: int, den: int) -> int:
    """Nearest integer to num/den, ties broken toward zero.  den > 0."""
    n, rem = divmod(num, den)
    twice = 2 * rem
    if twice > den:
        return n + 1
    if twice < den:
        return n
    return n if num >= 0 else n + 1


def _assemble(
    ys: Sequence[LatticeVector],
    qd: QuotientData,
    lattice: IntersectionLattice,
    a: LatticeVector,
) -> Tuple[LatticeVector, ...]:
    """Lift quotient vectors and pin the radical part of the decomposition.

    The radical remainder is absorbed into one summand (it has zero
    square, so the objective is unaffected); sorting before and after
    makes the returned tuple the canonical representative used for
    tie-breaking.  ys must be expressed in the frame of a itself, not
    of a translate-reduced representative.
    """
    n = lattice.rank
    full = [lift_from_quotient(qd, y, n) for y in ys]
    rho = vec_sub(a, vec_sum(full, n))
    full.sort()
    full[-1] = vec_add(full[-1], rho)
    full.sort()
    return tuple(full)


def _scaled_objective_of(
    lattice: IntersectionLattice, r: int, a: LatticeVector, decomposition: Sequence[LatticeVector]
) -> int:
    total = 0
    for mu in decomposition:
        dev = vec_sub(a, tuple(r * c for c in mu))
        total += -pairing(lattice, dev, dev)
    return total


def _finish(
    lattice: IntersectionLattice,
    r: int,
    a: LatticeVector,
    decomposition: Tuple[LatticeVector, ...],
    t: int,
    certified: bool,
) -> MResult:
    assert vec_sum(decomposition, lattice.rank) == a
    assert _scaled_objective_of(lattice, r, a, decomposition) == t
    assert t >= 0
    if t % r == 0:
        value: Union[int, Fraction] = t // r
    else:
        log.error(
            "scaled objective %d is not divisible by rank %d; returning the exact "
            "rational value instead of rounding",
            t,
            r,
        )
        value = Fraction(t, r)
    return MResult(value, decomposition, t, certified)


# ---------------------------------------------------------------------------
# exhaustive oracle


def m_oracle(
    lattice: IntersectionLattice, r: int, a: Sequence[int], radius: int = 3
) -> MResult:
    """Exhaustive box search for m(r, a).

    Every decomposition whose quotient coordinates all lie within
    radius (sup norm) of the rounded balanced point a/r is enumerated,
    subject to the sum constraint.  The certificate is True when the
    best value found is provably below the cost of any decomposition
    that leaves the box: a single out-of-box summand already costs at
    least (r(radius+1) - rho_j)^2 / (Q^-1)_jj along some coordinate j.
    """
    av = _check_args(lattice, r, a)
    if radius < 1:
        raise DomainError(f"radius must be a positive integer, got {radius}")
    _require_semidefinite(lattice)
    if r == 1:
        return _finish(lattice, 1, av, (av,), 0, True)
    qd = radical_and_quotient(lattice)
    d = qd.quotient_rank
    if d == 0:
        dec = _assemble([()] * r, qd, lattice, av)
        return _finish(lattice, r, av, dec, 0, True)

    q = _positive_quotient(qd)
    s = project_to_quotient(qd, av)
    center = tuple(round_half_toward_zero(s[j], r) for j in range(d))
    lo = [center[j] - radius for j in range(d)]
    hi = [center[j] + radius for j in range(d)]

    def cost(y: Sequence[int]) -> int:
        return _qform(q, [s[j] - r * y[j] for j in range(d)])

    items = sorted(
        ((cost(y), y) for y in product(*(range(lo[j], hi[j] + 1) for j in range(d)))),
    )

    best_t: Optional[int] = None
    best_dec: Optional[Tuple[LatticeVector, ...]] = None

    chosen: List[LatticeVector] = []

    def feasible(partial: Sequence[int], slots_left: int) -> bool:
        # the remaining slots_left summands must stay inside the box
        for j in range(d):
            need = s[j] - partial[j]
            if need < slots_left * lo[j] or need > slots_left * hi[j]:
                return False
        return True

    def consider_leaf(partial_sum: Sequence[int], partial_cost: int) -> None:
        nonlocal best_t, best_dec
        y_last = tuple(s[j] - partial_sum[j] for j in range(d))
        if any(y_last[j] < lo[j] or y_last[j] > hi[j] for j in range(d)):
            return
        t = partial_cost + cost(y_last)
        if best_t is not None and t > best_t:
            return
        dec = _assemble(list(chosen) + [y_last], qd, lattice, av)
        if best_t is None or t < best_t or (t == best_t and dec < best_dec):
            best_t, best_dec = t, dec

    def dfs(slot: int, start: int, partial_sum: Tuple[int, ...], partial_cost: int) -> None:
        if slot == r - 1:
            consider_leaf(partial_sum, partial_cost)
            return
        remaining = r - 1 - slot
        for idx in range(start, len(items)):
            c, y = items[idx]
            # later items cost at least as much as this one
            if best_t is not None and partial_cost + remaining * c > best_t:
                break
            new_sum = tuple(partial_sum[j] + y[j] for j in range(d))
            if not feasible(new_sum, r - slot - 1):
                continue
            chosen.append(y)
            dfs(slot + 1, idx, new_sum, partial_cost + c)
            chosen.pop()

    dfs(0, 0, (0,) * d, 0)

    if best_t is None:
        raise DomainError(
            f"radius {radius} box around a/{r} contains no decomposition; "
            "increase the radius"
        )

    inv_diag = intlinalg.inverse_diagonal(q)
    rho = [abs(r * center[j] - s[j]) for j in range(d)]
    bound_out = min(
        Fraction((r * (radius + 1) - rho[j]) ** 2) / inv_diag[j] for j in range(d)
    )
    min_box = items[0][0]
    min_all = min(Fraction(min_box), bound_out)
    certified = Fraction(best_t) < bound_out + (r - 1) * min_all
    return _finish(lattice, r, av, best_dec, best_t, certified)


# ---------------------------------------------------------------------------
# branch-and-bound


def _polarize(objective, n: int) -> Tuple[List[List[Fraction]], List[Fraction], int]:
    """Recover H, b, c0 with objective(z) = z^T H z + b^T z + c0 exactly."""
    zero = [0] * n
    c0 = objective(zero)
    h = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    plus = []
    for i in range(n):
        e = zero.copy()
        e[i] = 1
        fp = objective(e)
        e[i] = -1
        fm = objective(e)
        h[i][i] = Fraction(fp + fm - 2 * c0, 2)
        b[i] = Fraction(fp - fm, 2)
        plus.append(fp)
    for i in range(n):
        for j in range(i + 1, n):
            e = zero.copy()
            e[i] = 1
            e[j] = 1
            fij = objective(e)
            hij = (Fraction(fij - c0) - h[i][i] - h[j][j] - b[i] - b[j]) / 2
            h[i][j] = h[j][i] = hij
    return h, b, c0


def _cholesky_udu(h: List[List[Fraction]]) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """h = U^T D U with U unit upper triangular, D positive diagonal."""
    n = len(h)
    work = [row.copy() for row in h]
    diag: List[Fraction] = []
    u = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        piv = work[k][k]
        assert piv > 0, "substituted form must be positive definite"
        diag.append(piv)
        u[k][k] = Fraction(1)
        for l in range(k + 1, n):
            u[k][l] = work[k][l] / piv
        for i in range(k + 1, n):
            for j in range(i, n):
                work[i][j] -= work[k][i] * work[k][j] / piv
                work[j][i] = work[i][j]
    return diag, u


def m_compute(lattice: IntersectionLattice, r: int, a: Sequence[int]) -> MResult:
    """Exact global minimum of the scaled decomposition objective.

    After translate-reduction and projection to the positive quotient
    form, the last summand is substituted out and the resulting
    positive-definite quadratic in (r-1)*d integer variables is
    minimised by depth-first interval enumeration over its rational
    Cholesky factorisation, seeded with the balanced decomposition.
    Ties are broken toward the lexicographically smallest witness.
    """
    av = _check_args(lattice, r, a)
    _require_semidefinite(lattice)
    if r == 1:
        return _finish(lattice, 1, av, (av,), 0, True)
    a_red = tuple(c % r for c in av)
    lam = tuple((av[i] - a_red[i]) // r for i in range(len(av)))
    qd = radical_and_quotient(lattice)
    d = qd.quotient_rank
    if d == 0:
        dec = _assemble([()] * r, qd, lattice, av)
        return _finish(lattice, r, av, dec, 0, True)

    q = _positive_quotient(qd)
    s = project_to_quotient(qd, a_red)
    # solutions are searched in the reduced frame; shifting them back by
    # the projected translation aligns witnesses with the oracle's frame
    shift = project_to_quotient(qd, lam)
    n_vars = (r - 1) * d

    def unpack(z: Sequence[int]) -> List[LatticeVector]:
        ys = [tuple(z[i * d : (i + 1) * d]) for i in range(r - 1)]
        last = tuple(s[j] - sum(y[j] for y in ys) for j in range(d))
        ys.append(last)
        return ys

    def objective(z: Sequence[int]) -> int:
        return sum(_qform(q, [s[j] - r * y[j] for j in range(d)]) for y in unpack(z))

    def canonical(z: Sequence[int]) -> Tuple[LatticeVector, ...]:
        ys = [vec_add(y, shift) for y in unpack(z)]
        return _assemble(ys, qd, lattice, av)

    h, b, c0 = _polarize(objective, n_vars)
    zstar = intlinalg.solve_fractions(h, [-bi / 2 for bi in b])
    t0 = Fraction(c0) + sum(bi * zi for bi, zi in zip(b, zstar)) / 2
    diag, u = _cholesky_udu(h)

    center = tuple(round_half_toward_zero(s[j], r) for j in range(d))
    z_seed = list(center) * (r - 1)
    best_t = objective(z_seed)
    best_dec = canonical(z_seed)
    best_quad = Fraction(best_t) - t0

    zvals = [0] * n_vars

    def leaf(quad: Fraction) -> None:
        nonlocal best_t, best_dec, best_quad
        total = t0 + quad
        assert total.denominator == 1
        t = int(total)
        dec = canonical(zvals)
        if t < best_t or (t == best_t and dec < best_dec):
            best_t, best_dec = t, dec
            best_quad = Fraction(best_t) - t0

    def descend(k: int, partial: Fraction) -> None:
        t_k = zstar[k]
        for l in range(k + 1, n_vars):
            t_k -= u[k][l] * (zvals[l] - zstar[l])
        z0 = round_half_toward_zero(t_k.numerator, t_k.denominator)

        def visit(z: int) -> bool:
            term = diag[k] * (z - t_k) ** 2
            if partial + term > best_quad:
                return False
            zvals[k] = z
            if k == 0:
                leaf(partial + term)
            else:
                descend(k - 1, partial + term)
            return True

        if not visit(z0):
            # z0 minimises the term over the integers, so nothing fits
            return
        step = 1
        up_alive = down_alive = True
        while up_alive or down_alive:
            if up_alive:
                up_alive = visit(z0 + step)
            if down_alive:
                down_alive = visit(z0 - step)
            step += 1

    descend(n_vars - 1, Fraction(0))
    return _finish(lattice, r, av, best_dec, best_t, True)
