"""Dense complex-matrix operator arithmetic.

Conventions used by the whole package:

* Operators are square complex matrices (``numpy.ndarray``), vectors are
  1-D complex arrays, both over a fixed orthonormal basis.
* The inner product is linear in the FIRST argument and conjugate-linear
  in the second: ``<u, v> = v^H u``.  Every quadratic form below is
  ``<A x, x> = x^H A x`` under that convention.
* ``||A||`` means the spectral norm, ``||A||_F`` the Frobenius norm.

All functions are pure: inputs are never mutated and there is no shared
state, so concurrent calls are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "DimensionMismatch",
    "HermitianOperator",
    "SubspaceBasis",
    "adjoint",
    "as_operator",
    "as_vector",
    "hermitian_eigendecomposition",
    "matrix_of",
    "norm_defect",
    "null_space",
    "operator_norm",
    "quadratic_form",
    "self_commutator",
]

DEFAULT_TOL = 1e-9

# Components smaller than this are skipped when fixing eigenvector phases.
_PHASE_THRESHOLD = 1e-8


class DimensionMismatch(ValueError):
    """Raised when operator/vector dimensions are incompatible."""


def as_operator(a) -> np.ndarray:
    """Validate ``a`` as a square complex matrix and return it as such."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate ``x`` as a 1-D complex vector, optionally of dimension ``dim``."""
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"expected a vector, got shape {v.shape}")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.size}")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    return v


class HermitianOperator:
    """A matrix certified self-adjoint.

    Construction symmetrizes ``(H + H^H)/2`` instead of rejecting input:
    floating-point products such as ``A^H A`` drift slightly off Hermitian,
    and the symmetrized matrix keeps eigensolvers on the Hermitian fast
    path.  The drift removed this way is at most the error already present.
    """

    def __init__(self, matrix):
        m = as_operator(matrix)
        self.matrix = 0.5 * (m + m.conj().T)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim})"


def matrix_of(a) -> np.ndarray:
    """Accept either a raw matrix or a :class:`HermitianOperator`."""
    if isinstance(a, HermitianOperator):
        return a.matrix
    return as_operator(a)


def operator_norm(a) -> float:
    """Spectral norm ``||A||`` (largest singular value)."""
    return float(np.linalg.norm(matrix_of(a), 2))


@dataclass(eq=False)
class SubspaceBasis:
    """Orthonormal frame spanning a subspace of C^n.

    ``vectors`` holds the basis as columns of an ``(ambient_dim, k)`` array
    with ``0 <= k <= ambient_dim``; pairwise inner products are checked to
    be within 1e-10 of the identity.
    """

    ambient_dim: int
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis array must be ({self.ambient_dim}, k), got {v.shape}"
            )
        if v.shape[1] > self.ambient_dim:
            raise DimensionMismatch("more basis vectors than ambient dimensions")
        gram = v.conj().T @ v
        if gram.size and np.max(np.abs(gram - np.eye(v.shape[1]))) > 1e-10:
            raise ValueError("basis vectors are not orthonormal")
        self.vectors = v

    @property
    def dim(self) -> int:
        """Number of basis vectors (subspace dimension)."""
        return self.vectors.shape[1]

    def __iter__(self):
        return iter(self.vectors.T)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose; an exact involution."""
    return matrix_of(a).conj().T


def self_commutator(a) -> HermitianOperator:
    """Self-commutator ``A^H A - A A^H``, symmetrized.

    Always traceless in finite dimensions (up to roundoff in the products).
    """
    m = matrix_of(a)
    ah = m.conj().T
    return HermitianOperator(ah @ m - m @ ah)


def quadratic_form(a, x) -> complex:
    """The quadratic form ``<A x, x> = x^H A x``."""
    m = matrix_of(a)
    v = as_vector(x, m.shape[0])
    return complex(np.vdot(v, m @ v))


def norm_defect(a, x) -> float:
    """``||A x||^2 - ||A^H x||^2``.

    Equal to ``Re <C(A) x, x>`` with ``C`` the self-commutator, within
    roundoff on the scale ``||A||^2 ||x||^2``.
    """
    m = matrix_of(a)
    v = as_vector(x, m.shape[0])
    av = m @ v
    ahv = m.conj().T @ v
    return float(np.real(np.vdot(av, av)) - np.real(np.vdot(ahv, ahv)))


def _phase_fixed(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its first component of modulus > 1e-8 is real
    positive, making decompositions reproducible."""
    out = np.array(vecs, dtype=complex, copy=True)
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > _PHASE_THRESHOLD)
        if idx.size:
            lead = col[idx[0]]
            out[:, k] = col * (lead.conjugate() / abs(lead))
    return out


def hermitian_eigendecomposition(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and phase-fixed orthonormal eigenvectors.

    Accepts a :class:`HermitianOperator` or a matrix (symmetrized first).
    Returns ``(values, vectors)`` with eigenvectors as columns satisfying
    ``H v_i = lambda_i v_i``.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    vals, vecs = np.linalg.eigh(h.matrix)
    return vals.astype(float), _phase_fixed(vecs)


def null_space(a, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the numerical null space.

    The null space is ``{x : ||A x|| <= tol ||A|| ||x||}``, decided by
    thresholding singular values at ``tol * sigma_max``.  A zero matrix
    yields the full ambient basis.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = matrix_of(a)
    n = m.shape[0]
    _, s, vh = np.linalg.svd(m)
    if s[0] == 0.0:
        return SubspaceBasis(n, np.eye(n, dtype=complex))
    rank = int(np.count_nonzero(s > tol * s[0]))
    return SubspaceBasis(n, _phase_fixed(vh[rank:].conj().T))
