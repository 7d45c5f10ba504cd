import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hbar_dicke.errors import DimensionError, LeakageError, ValidationError
from hbar_dicke.hamiltonian import build_full_hamiltonian
from hbar_dicke.quantum import (
    HilbertLayout,
    create,
    destroy,
    embed_operator,
    evolve,
    evolve_many,
    hermitian_eigendecomposition,
    purity,
    reduce_to_qubit,
)

from oracles import expm_taylor, overlap


def random_hermitian(rng, n, scale=10.0):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (A + A.conj().T) / 2


def random_ket(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


class TestLayout:
    def test_dimension_and_bijection(self):
        lay = HilbertLayout(3, (2, 4))
        assert lay.dim == 24
        for i in range(lay.dim):
            assert lay.index(lay.occupations(i)) == i

    def test_row_major_order(self):
        lay = HilbertLayout(2, (2, 2))
        # last factor varies fastest
        assert lay.index((0, 0, 1)) == 1
        assert lay.index((0, 1, 0)) == 2
        assert lay.index((1, 0, 0)) == 4

    def test_rejects_small_factors(self):
        with pytest.raises(ValidationError):
            HilbertLayout(1, (2,))
        with pytest.raises(ValidationError):
            HilbertLayout(2, (1,))


class TestEmbed:
    def test_identity_embeds_to_identity(self):
        lay = HilbertLayout(2, (3, 2))
        np.testing.assert_array_equal(embed_operator(np.eye(2), 0, lay), np.eye(12))

    def test_sigma_minus_two_nonzeros(self):
        lay = HilbertLayout(2, (2,))
        op = embed_operator(destroy(2), 0, lay)
        assert op.shape == (4, 4)
        nz = {tuple(ix) for ix in np.argwhere(op != 0)}
        # sigma^- maps |e,n> -> |g,n>: index (1,n) -> (0,n), i.e. rows 0,1 from columns 2,3
        assert nz == {(0, 2), (1, 3)}

    def test_creation_squared_vanishes_at_cutoff_two(self):
        lay = HilbertLayout(2, (2, 2))
        fd = embed_operator(create(2), 1, lay)
        np.testing.assert_array_equal(fd @ fd, np.zeros((8, 8)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            embed_operator(np.eye(3), 0, HilbertLayout(2, (2,)))


class TestEigen:
    def test_diagonal(self):
        eig = hermitian_eigendecomposition(np.diag([1.0, 3.0, 2.0]))
        np.testing.assert_allclose(eig.eigenvalues, [1, 2, 3])

    def test_resonant_jc_block(self):
        g = 5.592
        eig = hermitian_eigendecomposition(np.array([[0, g], [g, 0]]))
        np.testing.assert_allclose(eig.eigenvalues, [-g, g])

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            hermitian_eigendecomposition(np.array([[0, 1.0], [0, 0]]))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 32), st.integers(0, 2**32 - 1))
    def test_reconstruction_and_unitarity(self, n, seed):
        rng = np.random.default_rng(seed)
        H = random_hermitian(rng, n)
        eig = hermitian_eigendecomposition(H)
        radius = np.max(np.abs(eig.eigenvalues))
        assert np.max(np.abs(eig.reconstruct() - H)) < 1e-9 * max(radius, 1)
        V = eig.eigenvectors
        assert np.max(np.abs(V.conj().T @ V - np.eye(n))) < 1e-10
        assert np.all(np.diff(eig.eigenvalues) >= 0)


class TestEvolve:
    def test_t_zero_is_identity(self, rng):
        H = random_hermitian(rng, 6)
        psi = random_ket(rng, 6)
        np.testing.assert_allclose(evolve(psi, hermitian_eigendecomposition(H), 0.0), psi, atol=1e-14)

    def test_half_rabi_period_swaps(self):
        lay = HilbertLayout(2, (2,))
        g = 2 * np.pi * 0.89
        H = g * (embed_operator(create(2), 1, lay) @ embed_operator(destroy(2), 0, lay))
        H = H + H.conj().T
        psi0 = np.zeros(4, complex)
        psi0[lay.index((1, 0))] = 1
        target = np.zeros(4, complex)
        target[lay.index((0, 1))] = 1
        out = evolve(psi0, hermitian_eigendecomposition(H), np.pi / (2 * g))
        assert overlap(out, target) == pytest.approx(1, abs=1e-12)

    def test_full_space_against_series_exponential(self, table_clusters):
        cluster = table_clusters["S3_1"]
        lay = HilbertLayout(2, (2, 2, 2))
        H = build_full_hamiltonian(None, 4.7789, cluster, lay)
        psi0 = np.zeros(lay.dim, complex)
        psi0[lay.index((1, 0, 0, 0))] = 1
        t = 0.5
        ref = expm_taylor(-1j * H * t) @ psi0
        out = evolve(psi0, hermitian_eigendecomposition(H), t)
        assert overlap(out, ref) >= 1 - 1e-10

    def test_evolve_many_matches_pointwise(self, rng):
        H = random_hermitian(rng, 5)
        eig = hermitian_eigendecomposition(H)
        psi = random_ket(rng, 5)
        ts = np.linspace(0, 3, 7)
        many = evolve_many(psi, eig, ts)
        for k, t in enumerate(ts):
            np.testing.assert_allclose(many[k], evolve(psi, eig, t), atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 32), st.integers(0, 2**32 - 1), st.floats(0, 10))
    def test_norm_preserved(self, n, seed, t):
        rng = np.random.default_rng(seed)
        eig = hermitian_eigendecomposition(random_hermitian(rng, n))
        out = evolve(random_ket(rng, n), eig, t)
        assert abs(np.linalg.norm(out) - 1) < 1e-10


class TestReduce:
    lay = HilbertLayout(2, (2, 2))

    def ket(self, **amps):
        psi = np.zeros(self.lay.dim, complex)
        for occ, a in amps.items():
            psi[self.lay.index(tuple(int(c) for c in occ[1:]))] = a
        return psi

    def test_product_state(self):
        rho = reduce_to_qubit(self.ket(s100=1), self.lay)
        np.testing.assert_allclose(rho, [[0, 0], [0, 1]], atol=1e-15)
        assert purity(rho) == pytest.approx(1)

    def test_bell_like_pair(self):
        rho = reduce_to_qubit(self.ket(s100=1 / np.sqrt(2), s010=1 / np.sqrt(2)), self.lay)
        np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-15)
        assert purity(rho) == pytest.approx(0.5)

    def test_static_dicke_solution_at_pi_over_8(self):
        g = np.array([0.68, 0.89])
        x = np.pi / 8
        d = g / np.linalg.norm(g)
        psi = self.ket(s100=np.cos(x), s010=np.sin(x) * d[0], s001=np.sin(x) * d[1])
        rho = reduce_to_qubit(psi, self.lay)
        assert rho[1, 1].real == pytest.approx(np.cos(np.pi / 8) ** 2, abs=1e-14)
        assert rho[1, 1].real == pytest.approx(0.8536, abs=5e-5)
        assert abs(rho[0, 1]) < 1e-15

    def test_leakage_error_carries_population(self):
        lay = HilbertLayout(3, (2,))
        psi = np.zeros(lay.dim, complex)
        psi[lay.index((1, 0))] = np.sqrt(0.99)
        psi[lay.index((2, 0))] = np.sqrt(0.01)
        with pytest.raises(LeakageError) as err:
            reduce_to_qubit(psi, lay)
        assert err.value.leaked == pytest.approx(0.01)

    def test_three_level_without_leakage(self):
        lay = HilbertLayout(3, (2,))
        psi = np.zeros(lay.dim, complex)
        psi[lay.index((1, 0))] = 1
        np.testing.assert_allclose(reduce_to_qubit(psi, lay), [[0, 0], [0, 1]])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 1))
    def test_linearity_and_bounds(self, seed, w):
        rng = np.random.default_rng(seed)
        a, b = random_ket(rng, self.lay.dim), random_ket(rng, self.lay.dim)
        ra, rb = reduce_to_qubit(a, self.lay), reduce_to_qubit(b, self.lay)
        # reduction of the density mixture, computed directly from the full matrix
        rho_full = w * np.outer(a, a.conj()) + (1 - w) * np.outer(b, b.conj())
        r = rho_full.reshape(2, 4, 2, 4)
        mixed = np.einsum("iaja->ij", r)
        np.testing.assert_allclose(mixed, w * ra + (1 - w) * rb, atol=1e-12)
        for rho in (ra, rb):
            assert np.trace(rho).real == pytest.approx(1, abs=1e-12)
            assert np.min(np.linalg.eigvalsh(rho)) > -1e-12
            assert 0.5 - 1e-12 <= purity(rho) <= 1 + 1e-12


def test_purity_values():
    assert purity(np.diag([1.0, 0.0])) == 1
    assert purity(np.eye(2) / 2) == pytest.approx(0.5)
    p = np.cos(np.pi / 8) ** 2
    assert purity(np.diag([p, 1 - p])) == pytest.approx((3 + np.cos(np.pi / 2)) / 4, abs=1e-14)
    assert purity(np.diag([0.8536, 0.1464])) == pytest.approx(0.75, abs=1e-4)
