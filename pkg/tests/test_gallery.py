import numpy as np
import pytest

from structmat import Circulant, Toeplitz, smtgallery, GALLERY_NAMES

from conftest import rel_err


def test_name_set():
    assert len(GALLERY_NAMES) == 18
    with pytest.raises(ValueError, match="valid names"):
        smtgallery("hilb", 4)
    with pytest.raises(ValueError, match="unknown parameter"):
        smtgallery("tkms", 4, decay=3)
    with pytest.raises(ValueError):
        smtgallery("gaussian", 0)


def test_random_circulants():
    C = smtgallery("crrand", 7, seed=1)
    assert isinstance(C, Circulant) and C.n == 7 and C.isreal
    assert np.all((C.col >= 0) & (C.col < 1))
    Z = smtgallery("crrand", 7, seed=1, complex=True)
    assert np.iscomplexobj(Z.col)
    N = smtgallery("crrandn", 5, seed=2)
    assert isinstance(N, Circulant) and N.isreal


def test_random_toeplitz_and_rectangular():
    T = smtgallery("tprand", (4, 6), seed=3)
    assert isinstance(T, Toeplitz) and T.shape == (4, 6)
    G = smtgallery("tprandn", 5, seed=4, complex=True)
    assert G.shape == (5, 5) and np.iscomplexobj(G.t)


def test_seeded_reproducibility():
    for name in ("crrand", "crrandn", "tprand", "tprandn", "ttoeppd"):
        a = smtgallery(name, 6, seed=42)
        b = smtgallery(name, 6, seed=42)
        va = a.col if isinstance(a, Circulant) else a.t
        vb = b.col if isinstance(b, Circulant) else b.t
        assert np.array_equal(va, vb)


def test_decay_families():
    n = 7
    A = smtgallery("algdec", n)
    E = smtgallery("expdec", n)
    G = smtgallery("gaussian", n)
    k = np.arange(n)
    assert np.allclose(A.full()[:, 0], (1.0 + k) ** -2.0)
    assert np.allclose(E.full()[:, 0], np.exp(-0.5 * k))
    assert np.allclose(G.full()[:, 0], np.exp(-0.1 * k**2))
    assert np.allclose(smtgallery("expdec", n, p=1.5).full()[1, 0], np.exp(-1.5))
    for M in (A, E, G):
        assert isinstance(M, Toeplitz)
        assert np.array_equal(M.full(), M.full().T)


def test_kms():
    K = smtgallery("tkms", 3, rho=0.5)
    want = np.array([[1, 0.5, 0.25], [0.5, 1, 0.5], [0.25, 0.5, 1]])
    assert np.array_equal(K.full(), want)
    Z = smtgallery("tkms", 4, rho=0.3 + 0.4j)
    assert np.allclose(Z.full(), Z.full().conj().T)


def test_banded_families():
    T = smtgallery("ttridiag", 5)
    want = 2 * np.eye(5) - np.eye(5, k=1) - np.eye(5, k=-1)
    assert np.array_equal(T.full(), want)
    custom = smtgallery("ttridiag", 3, c=1.0, d=5.0, e=2.0)
    assert custom.full()[1, 0] == 1.0 and custom.full()[0, 1] == 2.0
    P = smtgallery("ttoeppen", 6)
    A = P.full()
    assert A[2, 0] == 1 and A[1, 0] == -10 and A[0, 0] == 0
    assert A[0, 1] == 10 and A[0, 2] == 1 and A[0, 3] == 0


def test_toeppd():
    M = smtgallery("ttoeppd", 6, m=3, weights=[1.0, 2.0, 0.5], theta=[0.1, 0.2, 0.3])
    k = np.arange(6)
    want = sum(w * np.cos(2 * np.pi * th * k) for w, th in [(1, 0.1), (2, 0.2), (0.5, 0.3)])
    assert np.allclose(M.full()[:, 0], want)
    with pytest.raises(ValueError):
        smtgallery("ttoeppd", 6, weights=[1.0, -1.0], theta=[0.1, 0.2])


def test_grcar():
    T = smtgallery("tgrcar", 6)
    A = T.full()
    assert np.all(np.diag(A, -1) == -1)
    for k in range(0, 4):
        assert np.all(np.diag(A, k) == 1)
    assert np.all(np.diag(A, 4) == 0)
    assert np.all(np.diag(A, -2) == 0)


def test_parter():
    T = smtgallery("tparter", 5)
    i, j = np.meshgrid(np.arange(5), np.arange(5), indexing="ij")
    assert np.allclose(T.full(), 1.0 / (i - j + 0.5))


def test_prolate():
    T = smtgallery("tprolate", 3)
    assert T.full()[0, 0] == pytest.approx(0.5)
    assert T.full()[1, 0] == pytest.approx(1.0 / np.pi)
    assert T.full()[2, 0] == pytest.approx(0.0, abs=1e-16)


def test_chow():
    T = smtgallery("tchow", 5, alpha=0.5, delta=2.0)
    A = T.full()
    assert np.all(np.diag(A, 1) == 1.0)          # alpha**0
    assert np.all(np.diag(A) == 0.5 + 2.0)        # alpha + delta
    assert np.all(np.diag(A, -2) == 0.125)
    assert np.all(np.diag(A, 2) == 0.0)
    default = smtgallery("tchow", 4)
    assert np.array_equal(np.triu(default.full(), 2), np.zeros((4, 4)))


def test_triw():
    T = smtgallery("ttriw", 5)
    A = T.full()
    assert np.array_equal(np.tril(A, -1), np.zeros((5, 5)))
    assert np.all(np.diag(A) == 1)
    assert np.all(A[np.triu_indices(5, 1)] == -1)
    banded = smtgallery("ttriw", 5, alpha=2.0, k=2)
    assert banded.full()[0, 2] == 2.0 and banded.full()[0, 3] == 0.0


def test_dramadah():
    for k in (1, 2, 3):
        T = smtgallery("tdramadah", 8, k=k)
        A = T.full()
        assert set(np.unique(A)) <= {0.0, 1.0}
    assert abs(abs(np.linalg.det(smtgallery("tdramadah", 8, k=1).full())) - 1.0) <= 1e-9
    upper = smtgallery("tdramadah", 8, k=2).full()
    assert np.array_equal(np.tril(upper, -1), np.zeros((8, 8)))
    hess = smtgallery("tdramadah", 8, k=3).full()
    assert np.array_equal(np.triu(hess, 2), np.zeros((8, 8)))
    with pytest.raises(ValueError):
        smtgallery("tdramadah", 8, k=4)


def test_phans_rank_deficiency():
    for n in (16, 40, 64):
        T = smtgallery("tphans", n)
        s = np.linalg.svd(T.full(), compute_uv=False)
        assert s[-1] / s[0] <= 1e-8
        assert s[8] / s[0] <= 1e-10 < s[7] / s[0]  # clean gap after rank 8


def test_psd_spot_checks():
    for name, kwargs in [
        ("tkms", {"rho": 0.5}),
        ("ttoeppd", {"seed": 0}),
        ("gaussian", {}),
        ("expdec", {}),
    ]:
        for n in (8, 64):
            T = smtgallery(name, n, **kwargs)
            evals = np.linalg.eigvalsh(T.full())
            assert evals.min() >= -1e-10
