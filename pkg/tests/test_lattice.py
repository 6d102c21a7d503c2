import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert.lattice import (
    DegenerateLatticeError,
    GramLattice,
    determinant,
    inner,
    is_even,
    is_primitive,
    norm,
    signature,
)
from latcert.matrices import mat_mul, transpose

from .conftest import (
    ELEMENTARY_OPS,
    nondegenerate_lattices,
    random_unimodular,
    small_vectors,
)


class TestConstruction:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            GramLattice.from_rows([[1, 2], [3, 1]])

    def test_rejects_degenerate(self):
        with pytest.raises(DegenerateLatticeError):
            GramLattice.from_rows([[1, 1], [1, 1]])

    def test_rejects_rank_out_of_range(self):
        with pytest.raises(ValueError, match="rank"):
            GramLattice.from_rows([[1 if i == j else 0 for j in range(5)] for i in range(5)])


class TestInner:
    def test_paper_gram_basis_pairing(self, paper_lattice):
        assert inner(paper_lattice, (1, 0), (0, 1)) == 20

    def test_zero_vector(self, paper_lattice):
        assert inner(paper_lattice, (0, 0), (7, -3)) == 0

    def test_diagonal_sum(self, paper_lattice):
        assert inner(paper_lattice, (1, 1), (1, 1)) == 48

    def test_dimension_mismatch(self, paper_lattice):
        with pytest.raises(ValueError, match="length"):
            inner(paper_lattice, (1, 0, 0), (0, 1))


class TestNorm:
    def test_h1_squared(self, paper_lattice):
        assert norm(paper_lattice, (1, 0)) == 4

    def test_zero(self, paper_lattice):
        assert norm(paper_lattice, (0, 0)) == 0

    def test_difference_vector(self, paper_lattice):
        # 4*(1 - 10 + 1)
        assert norm(paper_lattice, (1, -1)) == -32


class TestDeterminant:
    def test_paper_gram(self, paper_lattice):
        assert determinant(paper_lattice) == -384

    def test_identity(self):
        assert determinant(GramLattice.from_rows([[1, 0], [0, 1]])) == 1

    def test_diagonal(self):
        assert determinant(GramLattice.from_rows([[2, 0], [0, -2]])) == -4


class TestSignature:
    def test_paper_gram(self, paper_lattice):
        sig = signature(paper_lattice)
        assert (sig.positive, sig.negative) == (1, 1)

    def test_identity(self):
        sig = signature(GramLattice.from_rows([[1, 0], [0, 1]]))
        assert (sig.positive, sig.negative) == (2, 0)

    def test_diagonal_mixed(self):
        sig = signature(GramLattice.from_rows([[2, 0], [0, -2]]))
        assert (sig.positive, sig.negative) == (1, 1)

    def test_zero_diagonal_needs_pivot_repair(self):
        sig = signature(GramLattice.from_rows([[0, 1], [1, 0]]))
        assert (sig.positive, sig.negative) == (1, 1)


class TestEvenness:
    def test_paper_gram(self, paper_lattice):
        assert is_even(paper_lattice)

    def test_odd_identity(self):
        assert not is_even(GramLattice.from_rows([[1, 0], [0, 1]]))

    def test_even_off_diagonal_odd(self):
        g = GramLattice.from_rows([[2, 3], [3, 2]])
        assert is_even(g)
        # oracle: all norms on a box are even
        assert all(
            norm(g, (x, y)) % 2 == 0
            for x in range(-6, 7)
            for y in range(-6, 7)
        )


class TestPrimitivity:
    def test_basis_vector(self):
        assert is_primitive((1, 0))

    def test_imprimitive(self):
        assert not is_primitive((2, 4))

    def test_sigma_image(self):
        assert is_primitive((10, -1))

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            is_primitive((0, 0))


@given(nondegenerate_lattices(), st.data())
@settings(max_examples=150)
def test_symmetry_and_bilinearity(g, data):
    u = data.draw(small_vectors(g.rank))
    v = data.draw(small_vectors(g.rank))
    w = data.draw(small_vectors(g.rank))
    a = data.draw(st.integers(-4, 4))
    b = data.draw(st.integers(-4, 4))
    assert inner(g, u, v) == inner(g, v, u)
    combo = tuple(a * x + b * y for x, y in zip(u, w))
    assert inner(g, combo, v) == a * inner(g, u, v) + b * inner(g, w, v)


@given(nondegenerate_lattices())
@settings(max_examples=150)
def test_signature_counts_sum_to_rank(g):
    sig = signature(g)
    assert sig.positive + sig.negative == g.rank


@given(nondegenerate_lattices(max_rank=2), st.data())
@settings(max_examples=100)
def test_even_implies_even_norms(g, data):
    if not is_even(g):
        return
    v = data.draw(small_vectors(g.rank))
    assert norm(g, v) % 2 == 0


@given(nondegenerate_lattices(), ELEMENTARY_OPS)
@settings(max_examples=150)
def test_determinant_unimodular_invariance(g, ops):
    u = random_unimodular(g.rank, ops)
    transformed = mat_mul(transpose(u), mat_mul(g.entries, u))
    assert determinant(GramLattice(transformed)) == determinant(g)
