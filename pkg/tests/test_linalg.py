import numpy as np
from hypothesis import given, settings, strategies as st

from reedycheck import linalg as la

primes = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_side=5):
    p = draw(primes)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    seed = draw(st.integers(0, 2**32 - 1))
    a = np.random.default_rng(seed).integers(0, p, size=(r, c))
    return p, a.astype(np.int64)


@given(matrices())
def test_rank_nullity(pa):
    p, a = pa
    basis, _ = la.nullspace(a, p)
    assert la.rank(a, p) + basis.shape[1] == a.shape[1]
    assert not np.any((a @ basis) % p)


@given(matrices())
def test_rank_is_transpose_invariant(pa):
    p, a = pa
    assert la.rank(a, p) == la.rank(a.T.copy(), p)


@given(matrices())
def test_solve_recovers_a_consistent_system(pa):
    p, a = pa
    x0 = np.random.default_rng(0).integers(0, p, size=a.shape[1])
    b = (a @ x0) % p
    x = la.solve(a, b, p)
    assert x is not None
    assert np.array_equal((a @ x) % p, b)


@given(primes, st.integers(0, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=50)
def test_inverse_is_two_sided(p, n, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(n, n)).astype(np.int64)
    inv = la.inverse(a, p)
    if la.rank(a, p) < n:
        assert inv is None
    else:
        assert np.array_equal((a @ inv) % p, la.eye(n))
        assert np.array_equal((inv @ a) % p, la.eye(n))


def test_inconsistent_system_has_no_solution():
    a = np.array([[1, 0], [1, 0]])
    assert la.solve(a, np.array([0, 1]), 2) is None


def test_injective_and_surjective():
    a = np.array([[1], [1]])
    assert la.is_injective(a, 2) and not la.is_surjective(a, 2)
    assert la.is_surjective(a.T.copy(), 2) and not la.is_injective(a.T.copy(), 2)
