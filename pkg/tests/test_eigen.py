"""Jacobi eigensolver against known spectra and the bisection oracle."""

import numpy as np
import pytest

from latticeframes import StructureError, jacobi_eigh, real_embedding
from oracles import eigvalsh_bisection


def test_scaled_identity():
    dec = jacobi_eigh(2.0 * np.eye(2))
    assert dec.eigenvalues == pytest.approx([2, 2])
    assert dec.sweeps <= 2


def test_rank_one_block():
    S = 2.0 * np.ones((2, 2), dtype=complex)
    dec = jacobi_eigh(S)
    assert dec.eigenvalues == pytest.approx([0, 4], abs=1e-12)


def test_embedded_eigenvalues_come_in_pairs(rng):
    X = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    H = (X + X.conj().T) / 2
    dec = jacobi_eigh(H)
    paired = dec.embedded_eigenvalues.reshape(-1, 2)
    assert np.max(np.abs(paired[:, 0] - paired[:, 1])) < 1e-10


def test_matches_bisection_oracle(rng):
    for _ in range(10):
        n = int(rng.integers(1, 17))
        X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        H = (X + X.conj().T) / 2
        got = jacobi_eigh(H).eigenvalues
        assert np.max(np.abs(got - eigvalsh_bisection(H))) < 1e-8


def test_reconstruction_error(rng):
    X = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    H = (X + X.conj().T) / 2
    dec = jacobi_eigh(H)
    err = np.linalg.norm(dec.reconstruct_embedding() - dec.embedding)
    assert err < 1e-9
    v = dec.vectors_real
    assert np.max(np.abs(v.T @ v - np.eye(v.shape[0]))) < 1e-12


def test_real_embedding_layout():
    H = np.array([[2.0, 1 - 1j], [1 + 1j, 3.0]])
    M = real_embedding(H)
    assert M.shape == (4, 4)
    assert np.allclose(M, M.T)
    assert np.allclose(M[:2, :2], H.real)
    assert np.allclose(M[2:, :2], H.imag)


def test_non_hermitian_rejected():
    with pytest.raises(StructureError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(StructureError):
        jacobi_eigh(np.zeros((0, 0)))
    with pytest.raises(StructureError):
        jacobi_eigh(np.zeros((2, 3)))


def test_zero_matrix():
    dec = jacobi_eigh(np.zeros((3, 3)))
    assert dec.eigenvalues == pytest.approx([0, 0, 0])


def test_block_of_ones_spectrum():
    # two disjoint all-ones blocks scaled by 4: eigenvalues {12, 12, 0, 0, 0, 0}
    S = np.zeros((6, 6))
    S[:3, :3] = 4.0
    S[3:, 3:] = 4.0
    dec = jacobi_eigh(S)
    assert dec.eigenvalues == pytest.approx([0, 0, 0, 0, 12, 12], abs=1e-10)
