import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holobundle.errors import DimensionMismatchError, DomainError, IndefiniteLatticeError
from holobundle.lattice import IntersectionLattice, pairing
from holobundle.minvariant import m_compute, m_oracle, m_translate_reduce
from holobundle.sampling import random_nsd_lattice, random_vector


def lat(*rows):
    return IntersectionLattice(tuple(tuple(r) for r in rows))


MINUS_TWO = lat([-2])
MINUS_ONE = lat([-1])
DEGENERATE = lat([0, 0], [0, -1])
DIAG_21 = lat([-2, 0], [0, -1])


DIAG_22 = lat([-2, 0], [0, -2])


def test_translate_reduce():
    assert m_translate_reduce(DIAG_22, 3, (5, -1)) == (2, 2)
    assert m_translate_reduce(DIAG_22, 2, (4, 0)) == (0, 0)


@given(st.integers(2, 5), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_translate_reduce_is_residue(r, a):
    reduced = m_translate_reduce(DIAG_22, r, a)
    assert all(0 <= c < r for c in reduced)
    assert all((ai - ci) % r == 0 for ai, ci in zip(a, reduced))


def test_m_fixture_minus_two():
    res = m_compute(MINUS_TWO, 2, (1,))
    assert res.value == 2
    assert res.scaled_objective == 4
    assert res.decomposition == ((0,), (1,))
    assert res.certified


def test_m_fixture_minus_one_rank_two():
    assert m_compute(MINUS_ONE, 2, (1,)).value == 1


def test_m_fixture_minus_one_rank_three():
    res = m_compute(MINUS_ONE, 3, (1,))
    assert res.value == 2
    assert res.decomposition == ((0,), (0,), (1,))


def test_m_zero_when_divisible():
    res = m_compute(MINUS_TWO, 2, (2,))
    assert res.value == 0
    assert res.decomposition == ((1,), (1,))
    assert m_compute(MINUS_TWO, 3, (0,)).value == 0


def test_m_degenerate_lattice():
    assert m_compute(DEGENERATE, 2, (1, 1)).value == 1


def test_m_two_dimensional_quotient():
    assert m_compute(DIAG_21, 2, (1, 1)).value == 3


def test_m_rank_one_bundle():
    res = m_compute(MINUS_TWO, 1, (5,))
    assert res.value == 0
    assert res.decomposition == ((5,),)


def test_m_rank_zero_lattice():
    res = m_compute(lat(), 3, ())
    assert res.value == 0
    assert res.decomposition == ((), (), ())


def test_m_rejects_bad_arguments():
    with pytest.raises(DomainError):
        m_compute(MINUS_TWO, 0, (1,))
    with pytest.raises(DimensionMismatchError):
        m_compute(MINUS_TWO, 2, (1, 2))
    with pytest.raises(IndefiniteLatticeError):
        m_compute(lat([2]), 2, (1,))
    with pytest.raises(DomainError):
        m_oracle(MINUS_TWO, 2, (1,), radius=0)


def test_oracle_matches_fixtures():
    for lattice, r, a in [
        (MINUS_TWO, 2, (1,)),
        (MINUS_ONE, 3, (1,)),
        (DEGENERATE, 2, (1, 1)),
        (DIAG_21, 2, (1, 1)),
    ]:
        got = m_oracle(lattice, r, a)
        want = m_compute(lattice, r, a)
        assert got.certified
        assert (got.value, got.scaled_objective, got.decomposition) == (
            want.value,
            want.scaled_objective,
            want.decomposition,
        )


_POOL = [MINUS_TWO, MINUS_ONE, DEGENERATE, DIAG_21, lat([-2, -1], [-1, -2])]


@given(
    st.integers(0, len(_POOL) - 1),
    st.integers(2, 4),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
    st.lists(st.integers(-2, 2), min_size=2, max_size=2),
)
def test_translation_invariance(idx, r, a_raw, lam_raw):
    lattice = _POOL[idx]
    a = tuple(a_raw[: lattice.rank])
    lam = tuple(lam_raw[: lattice.rank])
    shifted = tuple(ai + r * li for ai, li in zip(a, lam))
    assert m_compute(lattice, r, a).value == m_compute(lattice, r, shifted).value


def test_witness_contract():
    rng = random.Random(3)
    for _ in range(60):
        lattice = random_nsd_lattice(rng, rng.randint(1, 3))
        r = rng.choice([2, 3, 4])
        a = random_vector(rng, lattice.rank)
        res = m_compute(lattice, r, a)
        assert len(res.decomposition) == r
        total = tuple(sum(mu[i] for mu in res.decomposition) for i in range(lattice.rank))
        assert total == a
        recomputed = 0
        for mu in res.decomposition:
            dev = tuple(ai - r * mi for ai, mi in zip(a, mu))
            recomputed += -pairing(lattice, dev, dev)
        assert recomputed == res.scaled_objective == r * res.value
        assert isinstance(res.value, int) and res.value >= 0
        assert tuple(sorted(res.decomposition)) == res.decomposition


def test_oracle_agreement_seeded():
    rng = random.Random(17)
    for _ in range(60):
        lattice = random_nsd_lattice(rng, rng.randint(1, 3))
        r = rng.choice([2, 3, 4])
        a = random_vector(rng, lattice.rank)
        want = m_compute(lattice, r, a)
        got = m_oracle(lattice, r, a)
        if got.certified:
            assert (got.value, got.decomposition) == (want.value, want.decomposition)
