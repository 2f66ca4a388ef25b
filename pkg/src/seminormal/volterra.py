"""The Volterra integration operator as a worked non-semi-normal example.

``(Vf)(x) = integral_0^x f(t) dt`` on ``L^2(0,1)`` is compact,
quasinilpotent and not semi-normal.  Its self-commutator is the rank-two
integral operator with kernel ``1 - x - s``, which in the orthonormal
shifted Legendre basis touches only the first two coordinates and has the
canonical form

    C f = gamma (<f, u1> u1 - <f, u2> u2),    gamma = 1/(2 sqrt 3),

with the orthonormal pair ``u1 = sqrt(2 + sqrt 3) - sqrt 6 x`` and
``u2 = sqrt 6 x - sqrt(2 - sqrt 3)``.  Consequently the set where ``V`` and
``V^H`` are metrically equal is ``{f : |<f,u1>| = |<f,u2>|}``, the union
over ``phi`` of the hyperplanes ``L_phi = (u1 - e^{i phi} u2)^perp``.

Everything here is exercised on two discretizations: the spectral Galerkin
compression onto the first ``n`` orthonormal shifted Legendre polynomials
(exact for polynomial data by Gauss quadrature degree counting) and a
midpoint collocation matrix for cross-validation.

Sign convention: the linear basis function used by the canonical pair is
``sqrt 3 (1 - 2x)``, the NEGATIVE of the standard orthonormal shifted
Legendre polynomial of degree 1.  It is stored explicitly (second
coordinate ``-1``) so the closed forms above hold sign-correct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from seminormal.core import (
    DEFAULT_TOL,
    HermitianOperator,
    SubspaceBasis,
    _phase_fixed,
    as_vector,
    hermitian_eigendecomposition,
    self_commutator,
)

__all__ = [
    "GAMMA",
    "QUOTED_EXTREME",
    "CanonicalPair",
    "CommutatorSpectrumReport",
    "GalerkinMatrix",
    "LegendreBasis",
    "canonical_pair",
    "commutator_kernel_galerkin",
    "commutator_spectrum_report",
    "e_v_membership",
    "evaluate_in_basis",
    "gauss_legendre_rule",
    "l_phi_basis",
    "midpoint_discretization",
    "phi_from_vector",
    "shifted_legendre_eval",
    "volterra_galerkin",
]

# Coupling constant of the canonical self-commutator form, 1/(2 sqrt 3).
GAMMA = 0.5 / math.sqrt(3.0)

# A value sometimes quoted for the extreme self-commutator eigenvalues,
# sqrt(6)/2; it disagrees with the canonical form and every discretization
# computed here, and is carried in reports with an explicit mismatch flag.
QUOTED_EXTREME = math.sqrt(6.0) / 2.0


def gauss_legendre_rule(num_nodes: int, lo: float = 0.0, hi: float = 1.0):
    """Gauss-Legendre nodes and weights on [lo, hi].

    Exact for polynomials of degree <= 2*num_nodes - 1.
    """
    if num_nodes < 1:
        raise ValueError("need at least one node")
    t, w = np.polynomial.legendre.leggauss(num_nodes)
    half = 0.5 * (hi - lo)
    return lo + half * (t + 1.0), half * w


def _check_unit_interval(xs: np.ndarray):
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise ValueError("evaluation points must lie in [0, 1]")


def _orthonormal_table(n: int, xs: np.ndarray) -> np.ndarray:
    """Values of the first ``n`` orthonormal shifted Legendre polynomials.

    Row ``k`` holds ``p_k(xs)``; three-term recurrence in ``t = 2x - 1``.
    """
    xs = np.asarray(xs, dtype=float)
    t = 2.0 * xs - 1.0
    tbl = np.empty((n, xs.size))
    tbl[0] = 1.0
    if n > 1:
        tbl[1] = t
    for j in range(1, n - 1):
        tbl[j + 1] = ((2 * j + 1) * t * tbl[j] - j * tbl[j - 1]) / (j + 1)
    return tbl * np.sqrt(2.0 * np.arange(n) + 1.0)[:, None]


def shifted_legendre_eval(k: int, x):
    """Orthonormal shifted Legendre polynomial of degree ``k`` on [0, 1].

    Normalized so that ``integral_0^1 p_k^2 = 1``; in particular
    ``p_0 = 1`` and ``p_1(x) = sqrt 3 (2x - 1)``.  Accepts scalars or
    arrays; raises for points outside [0, 1].
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    _check_unit_interval(xs)
    vals = _orthonormal_table(k + 1, xs)[k]
    if np.ndim(x) == 0:
        return float(vals[0])
    return vals


def evaluate_in_basis(coeffs, x):
    """Evaluate ``sum_k c_k p_k(x)`` for coordinates in the Legendre basis."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    _check_unit_interval(xs)
    vals = c @ _orthonormal_table(c.size, xs)
    if np.ndim(x) == 0:
        return complex(vals[0])
    return vals


@dataclass(frozen=True)
class LegendreBasis:
    """The orthonormal shifted Legendre basis of L^2(0,1), truncated to n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("basis needs at least one function")

    def eval(self, k: int, x):
        return shifted_legendre_eval(k, x)


@dataclass(eq=False)
class GalerkinMatrix:
    """A discretization matrix together with its provenance tag."""

    op: np.ndarray = field(repr=False)
    basis: LegendreBasis
    target: str  # "volterra" | "commutator-kernel" | "midpoint"


def _quadrature_size(n: int) -> int:
    # Exact for every polynomial integrand of degree <= 2n + 5 that the
    # Galerkin assembly produces; one rule serves all entries.
    return n + 3


def volterra_galerkin(n: int) -> GalerkinMatrix:
    """Galerkin compression of the integration operator onto ``n`` Legendre modes.

    Entries ``M[i,j] = <V p_j, p_i>`` are assembled with nested
    Gauss-Legendre rules sized so every integrand is integrated exactly.
    The result satisfies the rank-one identity ``M + M^H = e1 e1^H``
    (``V + V^H`` averages against the constant function) to machine
    precision.
    """
    if n < 2:
        raise ValueError("need at least two basis functions")
    q = _quadrature_size(n)
    xs, ws = gauss_legendre_rule(q)
    outer = _orthonormal_table(n, xs)  # p_i(x_q)
    # Antiderivatives at the outer nodes: the unit rule rescaled to [0, x_q].
    units, unit_ws = gauss_legendre_rule(q)
    grid = np.outer(units, xs)  # (r, q) -> u_r * x_q
    inner_tbl = _orthonormal_table(n, grid.ravel()).reshape(n, q, q)
    antiderivative = xs * np.einsum("r,jrq->jq", unit_ws, inner_tbl)
    m = (outer * ws) @ antiderivative.T
    return GalerkinMatrix(op=m.astype(complex), basis=LegendreBasis(n),
                          target="volterra")


def commutator_kernel_galerkin(n: int) -> HermitianOperator:
    """Galerkin matrix of the integral operator with kernel ``1 - x - s``.

    This is the self-commutator of the integration operator.  The kernel
    splits as ``(1/2 - x) + (1/2 - s)``, so the matrix is the symmetric sum
    of two rank-one terms and only its leading 2x2 block is nonzero.
    """
    if n < 2:
        raise ValueError("need at least two basis functions")
    xs, ws = gauss_legendre_rule(_quadrature_size(n))
    tbl = _orthonormal_table(n, xs)
    moment = tbl @ ws  # <p_i, 1>
    centered = tbl @ (ws * (0.5 - xs))  # <p_i, 1/2 - x>
    k = np.outer(centered, moment) + np.outer(moment, centered)
    return HermitianOperator(k.astype(complex))


@dataclass(eq=False)
class CanonicalPair:
    """Orthonormal pair and coupling of the canonical self-commutator form.

    ``C = gamma (u1 u1^H - u2 u2^H)`` with ``gamma = 1/(2 sqrt 3)``;
    ``u1, u2`` are stored as coordinates in the Legendre basis (only the
    first two components are nonzero).
    """

    u1: np.ndarray = field(repr=False)
    u2: np.ndarray = field(repr=False)
    gamma: float

    @property
    def dim(self) -> int:
        return self.u1.size


def canonical_pair(n: int) -> CanonicalPair:
    """The canonical pair at truncation dimension ``n``, verified on the spot.

    ``u1 = (e1 + e2)/sqrt 2`` and ``u2 = (e1 - e2)/sqrt 2`` where ``e1`` is
    the constant function and ``e2 = sqrt 3 (1 - 2x)`` (note the sign
    convention in the module docstring).  Construction re-checks the
    reconstruction ``C = gamma (u1 u1^H - u2 u2^H)`` entrywise.
    """
    if n < 2:
        raise ValueError("need at least two basis functions")
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    e2 = np.zeros(n, dtype=complex)
    e2[1] = -1.0
    u1 = (e1 + e2) / math.sqrt(2.0)
    u2 = (e1 - e2) / math.sqrt(2.0)
    c = commutator_kernel_galerkin(n).matrix
    recon = GAMMA * (np.outer(u1, u1.conj()) - np.outer(u2, u2.conj()))
    if np.max(np.abs(c - recon)) > 1e-12:
        raise RuntimeError("canonical reconstruction failed verification")
    return CanonicalPair(u1=u1, u2=u2, gamma=GAMMA)


def e_v_membership(f, pair: CanonicalPair, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``|<f,u1>| = |<f,u2>|`` within ``tol ||f||^2``.

    This is exactly metric equality of the integration operator and its
    adjoint at ``f``, tested on squared moduli to avoid cancellation.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = as_vector(f, pair.dim)
    c1 = complex(np.vdot(pair.u1, v))
    c2 = complex(np.vdot(pair.u2, v))
    nf2 = float(np.real(np.vdot(v, v)))
    return abs(abs(c1) ** 2 - abs(c2) ** 2) <= tol * nf2


def l_phi_basis(phi: float, n: int) -> SubspaceBasis:
    """Orthonormal basis of ``L_phi``, the orthocomplement of ``u1 - e^{i phi} u2``.

    Every returned vector ``v`` satisfies ``<v, u1> = e^{-i phi} <v, u2>``
    and therefore passes :func:`e_v_membership`.
    """
    pair = canonical_pair(n)
    g = pair.u1 - complex(math.cos(phi), math.sin(phi)) * pair.u2
    g = g / np.linalg.norm(g)
    u, _, _ = np.linalg.svd(g.reshape(n, 1), full_matrices=True)
    return SubspaceBasis(n, _phase_fixed(u[:, 1:]))


def phi_from_vector(f, pair: CanonicalPair, tol: float = DEFAULT_TOL):
    """Recover the angle ``phi`` with ``f`` orthogonal to ``u1 - e^{i phi} u2``.

    Returns ``phi = arg <f,u2> - arg <f,u1>`` normalized to [0, 2 pi), or
    ``None`` when both inner products vanish within ``tol ||f||`` (then
    ``f`` lies in every ``L_phi``).  Raises for vectors that are not
    metrically balanced in the first place.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = as_vector(f, pair.dim)
    nf = float(np.linalg.norm(v))
    c1 = complex(np.vdot(pair.u1, v))
    c2 = complex(np.vdot(pair.u2, v))
    if abs(c1) <= tol * nf and abs(c2) <= tol * nf:
        return None
    if not e_v_membership(v, pair, tol):
        raise ValueError("vector has |<f,u1>| != |<f,u2>|; no hyperplane contains it")
    return float((math.atan2(c2.imag, c2.real) - math.atan2(c1.imag, c1.real))
                 % (2.0 * math.pi))


def midpoint_discretization(m: int) -> np.ndarray:
    """Midpoint collocation matrix of the integration operator.

    ``h (L + I/2)`` with ``h = 1/m`` and ``L`` strictly lower triangular of
    ones: the composite midpoint rule for ``(Vf)(x_i)`` on the grid
    ``x_i = (i - 1/2) h``.  Used to cross-validate the spectral Galerkin
    route against an unrelated discretization.
    """
    if m < 2:
        raise ValueError("need at least two grid points")
    h = 1.0 / m
    mat = h * (np.tril(np.ones((m, m)), -1) + 0.5 * np.eye(m))
    return mat.astype(complex)


@dataclass(eq=False)
class CommutatorSpectrumReport:
    """Self-commutator spectra from three independent computations.

    ``kernel_spectrum`` comes from the rank-two kernel operator (extremes
    exactly ``+-gamma``), ``truncated_spectrum`` from the commutator of the
    truncated Galerkin matrix, ``midpoint_spectrum`` from the midpoint
    collocation commutator.  ``quoted_extreme`` carries the sometimes
    quoted value ``sqrt 6 / 2`` together with a consistency flag, which is
    False: the quoted value disagrees with all three computations.
    """

    dim: int
    midpoint_dim: int
    kernel_spectrum: np.ndarray = field(repr=False)
    truncated_spectrum: np.ndarray = field(repr=False)
    midpoint_spectrum: np.ndarray = field(repr=False)
    canonical_extreme: float
    quoted_extreme: float
    quoted_extreme_consistent: bool


def commutator_spectrum_report(n: int, midpoint_m: int = 256) -> CommutatorSpectrumReport:
    """Tabulate the three self-commutator spectra at dimension ``n``.

    The truncated-Galerkin commutator is computed independently of the
    kernel route (projection need not commute with products, so the two
    spectra are never conflated even though they agree here).
    """
    if n < 4:
        raise ValueError("need dimension at least 4")
    kernel_vals, _ = hermitian_eigendecomposition(commutator_kernel_galerkin(n))
    truncated = self_commutator(volterra_galerkin(n).op)
    truncated_vals, _ = hermitian_eigendecomposition(truncated)
    midpoint = self_commutator(midpoint_discretization(midpoint_m))
    midpoint_vals, _ = hermitian_eigendecomposition(midpoint)
    consistent = abs(float(kernel_vals[-1]) - QUOTED_EXTREME) <= 1e-6
    return CommutatorSpectrumReport(
        dim=n,
        midpoint_dim=midpoint_m,
        kernel_spectrum=kernel_vals,
        truncated_spectrum=truncated_vals,
        midpoint_spectrum=midpoint_vals,
        canonical_extreme=GAMMA,
        quoted_extreme=QUOTED_EXTREME,
        quoted_extreme_consistent=consistent,
    )
