import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holobundle.errors import DomainError, IndefiniteLatticeError
from holobundle.lattice import (
    Definiteness,
    IntersectionLattice,
    classify_definiteness,
    in_scaled_sublattice,
    lift_from_quotient,
    pairing,
    project_to_quotient,
    radical_and_quotient,
    vec_add,
    vec_scale,
)
from holobundle.sampling import random_nsd_lattice, random_vector


def lat(*rows):
    return IntersectionLattice(tuple(tuple(r) for r in rows))


def test_rejects_asymmetric_gram():
    with pytest.raises(DomainError, match=r"not symmetric at \(0,1\)"):
        lat([-2, 1], [0, -2])


def test_rejects_ragged_gram():
    with pytest.raises(DomainError):
        lat([-2, 0], [0])


def test_rejects_non_integer_entries():
    with pytest.raises(DomainError):
        IntersectionLattice(((1.5,),))


def test_definiteness_fixtures():
    assert classify_definiteness(lat([-2])) is Definiteness.NEGATIVE_DEFINITE
    assert (
        classify_definiteness(lat([0, 0], [0, -1]))
        is Definiteness.NEGATIVE_SEMIDEFINITE_DEGENERATE
    )
    assert classify_definiteness(lat([2])) is Definiteness.INDEFINITE_OR_POSITIVE
    assert classify_definiteness(lat([-2, 3], [3, -2])) is Definiteness.INDEFINITE_OR_POSITIVE
    # rank zero is vacuously definite
    assert classify_definiteness(lat()) is Definiteness.NEGATIVE_DEFINITE


@st.composite
def symmetric_lattice_and_vectors(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    entries = st.integers(min_value=-4, max_value=4)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = draw(entries)
        for j in range(i + 1, n):
            g[i][j] = g[j][i] = draw(entries)
    vec = st.tuples(*[st.integers(min_value=-3, max_value=3)] * n)
    return lat(*g), draw(vec), draw(vec), draw(vec)


@given(symmetric_lattice_and_vectors(), st.integers(-2, 2), st.integers(-2, 2))
def test_pairing_symmetric_bilinear(data, p, q):
    lattice, x, y, z = data
    assert pairing(lattice, x, y) == pairing(lattice, y, x)
    comb = vec_add(vec_scale(p, x), vec_scale(q, y))
    assert pairing(lattice, comb, z) == p * pairing(lattice, x, z) + q * pairing(lattice, y, z)


def test_pairing_rejects_wrong_length():
    with pytest.raises(DomainError):
        pairing(lat([-2]), (1, 2), (1,))


def test_radical_and_quotient_definite():
    qd = radical_and_quotient(lat([-2]))
    assert qd.radical_basis == ()
    assert qd.quotient_gram == ((-2,),)
    assert project_to_quotient(qd, (3,)) == (3,)


def test_radical_and_quotient_degenerate():
    lattice = lat([0, 0], [0, -1])
    qd = radical_and_quotient(lattice)
    assert len(qd.radical_basis) == 1
    v = qd.radical_basis[0]
    assert all(pairing(lattice, v, e) == 0 for e in ((1, 0), (0, 1)))
    assert qd.quotient_gram == ((-1,),)


def test_radical_rejects_indefinite():
    with pytest.raises(IndefiniteLatticeError):
        radical_and_quotient(lat([2]))


def test_quotient_preserves_form():
    rng = random.Random(7)
    for _ in range(100):
        lattice = random_nsd_lattice(rng, rng.randint(1, 3))
        qd = radical_and_quotient(lattice)
        x = random_vector(rng, lattice.rank, -3, 3)
        y = random_vector(rng, lattice.rank, -3, 3)
        px, py = project_to_quotient(qd, x), project_to_quotient(qd, y)
        paired = sum(
            px[i] * qd.quotient_gram[i][j] * py[j]
            for i in range(len(px))
            for j in range(len(py))
        )
        assert pairing(lattice, x, y) == paired


def test_project_lift_roundtrip():
    rng = random.Random(11)
    for _ in range(100):
        lattice = random_nsd_lattice(rng, rng.randint(1, 3))
        qd = radical_and_quotient(lattice)
        y = random_vector(rng, len(qd.quotient_gram), -3, 3)
        lifted = lift_from_quotient(qd, y, lattice.rank)
        assert project_to_quotient(qd, lifted) == y


def test_in_scaled_sublattice():
    lattice = lat([-2, 0], [0, -2])
    assert in_scaled_sublattice(lattice, (2, 4), 2)
    assert not in_scaled_sublattice(lattice, (1, 2), 2)
    assert in_scaled_sublattice(lattice, (0, 0), 2)
    assert in_scaled_sublattice(lattice, (1, 2), 1)
    with pytest.raises(DomainError):
        in_scaled_sublattice(lattice, (1, 2), 0)
