import pathlib

import pytest
from hypothesis import strategies as st

from latcert.lattice import GramLattice
from latcert.matrices import det, from_rows

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

PAPER_GRAM = [[4, 20], [20, 4]]
PAPER_SIGMA = [[10, 1], [-1, 0]]


@pytest.fixture
def paper_lattice():
    return GramLattice.from_rows(PAPER_GRAM)


@pytest.fixture
def sigma():
    return from_rows(PAPER_SIGMA)


@pytest.fixture
def data_dir():
    return DATA_DIR


def symmetric_entries(rank, lo=-9, hi=9):
    ints = st.integers(lo, hi)
    return st.lists(
        st.lists(ints, min_size=rank, max_size=rank),
        min_size=rank,
        max_size=rank,
    ).map(_symmetrize)


def _symmetrize(rows):
    n = len(rows)
    return [
        [rows[i][j] if i <= j else rows[j][i] for j in range(n)]
        for i in range(n)
    ]


@st.composite
def nondegenerate_lattices(draw, max_rank=4, lo=-9, hi=9):
    rank = draw(st.integers(1, max_rank))
    rows = draw(
        symmetric_entries(rank, lo, hi).filter(
            lambda r: det(from_rows(r)) != 0
        )
    )
    return GramLattice.from_rows(rows)


def even_indefinite_rank2_strategy(lo=-8, hi=8):
    """Even rank-2 lattices with negative determinant (signature (1,1))."""
    even = st.integers(lo // 2, hi // 2).map(lambda x: 2 * x)
    return (
        st.tuples(even, st.integers(lo, hi), even)
        .filter(lambda t: t[0] * t[2] - t[1] * t[1] < 0)
        .map(lambda t: GramLattice.from_rows([[t[0], t[1]], [t[1], t[2]]]))
    )


def small_vectors(rank, lo=-6, hi=6):
    return st.lists(
        st.integers(lo, hi), min_size=rank, max_size=rank
    ).map(tuple)


ELEMENTARY_OPS = st.lists(
    st.tuples(
        st.integers(0, 3),  # target row
        st.integers(0, 3),  # source row
        st.integers(-2, 2),  # multiple
    ),
    max_size=8,
)


def random_unimodular(rank, ops):
    """Product of elementary row additions: always unimodular."""
    m = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j, k in ops:
        i, j = i % rank, j % rank
        if i == j:
            continue
        for col in range(rank):
            m[i][col] += k * m[j][col]
    return from_rows(m)
