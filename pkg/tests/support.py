"""Shared random-matrix constructions for the test suites.

Every suite owns its seeded generator so runs are reproducible.
"""

import numpy as np


def random_operator(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_unit_vector(rng, n):
    v = random_vector(rng, n)
    return v / np.linalg.norm(v)


def haar_unitary(rng, n):
    q, r = np.linalg.qr(random_operator(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_normal_operator(rng, n):
    """Unitary conjugate of a random diagonal: normal by construction."""
    q = haar_unitary(rng, n)
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return q @ np.diag(d) @ q.conj().T


def random_hermitian(rng, n):
    m = random_operator(rng, n)
    return 0.5 * (m + m.conj().T)
