"""Numerical range computation and the M_lambda level-set machinery.

The numerical range ``W(A) = {<Ax,x> : ||x|| = 1}`` is convex; its boundary
is traced by the support-function method: for each angle theta the largest
eigenvalue of the rotated Hermitian part ``(e^{i theta} A + e^{-i theta}
A^H)/2`` gives the support value ``max Re(e^{i theta} <Ax,x>)``, attained at
the top eigenvector.

``M_lambda(A) = {x : <Ax,x> = lambda ||x||^2}`` is a linear subspace exactly
when lambda is an extreme point of ``W(A)`` (Embry's criterion); the
functions below test membership, extract the subspace at endpoints and
construct explicit nonlinearity witnesses at interior points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from seminormal.core import (
    DEFAULT_TOL,
    HermitianOperator,
    SubspaceBasis,
    as_vector,
    hermitian_eigendecomposition,
    matrix_of,
    operator_norm,
    quadratic_form,
)

__all__ = [
    "BoundaryPoint",
    "NumericalRangeBoundary",
    "RealInterval",
    "convex_hull",
    "hermitian_part_rotated",
    "hull_distance",
    "is_extreme_point",
    "linearity_witness",
    "m_lambda_membership",
    "m_lambda_subspace",
    "numerical_range_boundary",
    "numerical_range_interval",
]

# Relative tolerance for the collinearity/duplicate decisions in the hull.
_HULL_REL_TOL = 1e-10


@dataclass(frozen=True)
class RealInterval:
    """Closed real interval [a, b]; the numerical range of a Hermitian matrix."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a <= self.b:
            raise ValueError(f"interval endpoints out of order: [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class BoundaryPoint:
    """One support-function sample of the numerical range boundary.

    ``support`` is the largest eigenvalue of the rotated Hermitian part at
    angle ``theta``; ``point`` is ``<A x, x>`` for the maximizing unit
    eigenvector, so ``Re(e^{i theta} point)`` attains ``support``.
    """

    theta: float
    support: float
    point: complex


@dataclass(eq=False)
class NumericalRangeBoundary:
    """Sampled numerical range boundary with its convex hull.

    ``samples`` are ordered by angle; ``hull`` holds the extreme points of
    the sampled set, counterclockwise, degenerating to two vertices for a
    segment and one for a point.
    """

    operator_dim: int
    samples: list[BoundaryPoint]
    hull: np.ndarray = field(repr=False)

    @property
    def points(self) -> np.ndarray:
        return np.array([s.point for s in self.samples])


def hermitian_part_rotated(a, theta: float) -> HermitianOperator:
    """The Hermitian part of ``e^{i theta} A``: ``(e^{i theta}A + e^{-i theta}A^H)/2``."""
    m = matrix_of(a)
    z = complex(math.cos(theta), math.sin(theta))
    return HermitianOperator(0.5 * (z * m + z.conjugate() * m.conj().T))


def numerical_range_boundary(a, num_angles: int = 256) -> NumericalRangeBoundary:
    """Trace the boundary of ``W(A)`` with ``num_angles`` support directions.

    For each ``theta_k = 2 pi k / m`` the top eigenpair of the rotated
    Hermitian part is computed; ties in the top eigenvalue (flat boundary
    portions) take the eigensolver's vector deterministically and the hull
    recovers segment endpoints from neighboring angles.
    """
    m = matrix_of(a)
    if num_angles < 3:
        raise ValueError("need at least 3 sample angles")
    samples = []
    for k in range(num_angles):
        theta = 2.0 * math.pi * k / num_angles
        vals, vecs = hermitian_eigendecomposition(hermitian_part_rotated(m, theta))
        x = vecs[:, -1]
        point = complex(np.vdot(x, m @ x))
        samples.append(BoundaryPoint(theta, float(vals[-1]), point))
    hull = convex_hull([s.point for s in samples])
    return NumericalRangeBoundary(m.shape[0], samples, hull)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points, rel_tol: float = _HULL_REL_TOL) -> np.ndarray:
    """Extreme points of the convex hull of complex points, counterclockwise.

    Monotone chain with a relative collinearity tolerance; must not assume
    full-dimensional input: coincident inputs give a single vertex and
    collinear inputs the two segment endpoints.
    """
    zs = np.asarray(points, dtype=complex).ravel()
    if zs.size == 0:
        return np.empty(0, dtype=complex)
    spread = max(np.ptp(zs.real), np.ptp(zs.imag))
    coincide = rel_tol * max(1.0, float(np.max(np.abs(zs))))
    if spread <= coincide:
        return np.array([zs[0]])

    pts = sorted({(float(z.real), float(z.imag)) for z in zs})
    dedup = [pts[0]]
    for p in pts[1:]:
        q = dedup[-1]
        if abs(p[0] - q[0]) > coincide or abs(p[1] - q[1]) > coincide:
            dedup.append(p)
    if len(dedup) == 1:
        return np.array([complex(*dedup[0])])

    eps = rel_tol * spread * spread

    def chain(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and _cross(h[-2], h[-1], p) <= eps:
                h.pop()
            h.append(p)
        return h

    lower = chain(dedup)
    upper = chain(reversed(dedup))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:  # fully collinear input collapses inside the chains
        verts = [dedup[0], dedup[-1]]
    return np.array([complex(*p) for p in verts])


def _segment_distance(a: complex, b: complex, z: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(z - a)
    t = min(1.0, max(0.0, ((z - a) * ab.conjugate()).real / denom))
    return abs(z - (a + t * ab))


def hull_distance(hull, z) -> float:
    """Distance from ``z`` to a convex hull as returned by :func:`convex_hull`.

    Zero for points inside; plain point/segment distance for degenerate
    hulls.  An empty hull is infinitely far away.
    """
    verts = np.asarray(hull, dtype=complex).ravel()
    z = complex(z)
    if verts.size == 0:
        return math.inf
    if verts.size == 1:
        return abs(z - verts[0])
    if verts.size == 2:
        return _segment_distance(verts[0], verts[1], z)
    pairs = [(float(v.real), float(v.imag)) for v in verts]
    zp = (z.real, z.imag)
    inside = all(
        _cross(pairs[k], pairs[(k + 1) % len(pairs)], zp) >= 0.0
        for k in range(len(pairs))
    )
    if inside:
        return 0.0
    return min(
        _segment_distance(verts[k], verts[(k + 1) % len(verts)], z)
        for k in range(len(verts))
    )


def numerical_range_interval(h) -> RealInterval:
    """``W(H) = [lambda_min, lambda_max]`` for self-adjoint ``H``."""
    vals, _ = hermitian_eigendecomposition(h)
    return RealInterval(float(vals[0]), float(vals[-1]))


def is_extreme_point(h, lam: float, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``lam`` is an extreme point of ``W(H)``.

    For the real-interval range of a Hermitian matrix the extreme points
    are exactly the endpoints; tested within ``tol * max(1, ||H||)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals, _ = hermitian_eigendecomposition(h)
    s = max(1.0, abs(vals[0]), abs(vals[-1]))
    return abs(lam - vals[0]) <= tol * s or abs(lam - vals[-1]) <= tol * s


def m_lambda_membership(a, lam: complex, x, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``<Ax,x> = lambda ||x||^2`` within ``tol (1 + ||A||) ||x||^2``.

    The zero vector is a member for every lambda.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = matrix_of(a)
    v = as_vector(x, m.shape[0])
    nx2 = float(np.real(np.vdot(v, v)))
    if nx2 == 0.0:
        return True
    defect = abs(quadratic_form(m, v) - complex(lam) * nx2)
    return defect <= tol * (1.0 + operator_norm(m)) * nx2


def m_lambda_subspace(h, lam: float, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """The subspace ``M_lambda(H)`` at an extreme point of ``W(H)``.

    Returns the eigenspace at the endpoint eigenvalue nearest ``lam``
    (eigenvalues clustered within the same ``tol`` scale).  Interior values
    are rejected: there ``M_lambda`` is not a subspace.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    if not is_extreme_point(h, lam, tol):
        raise ValueError(
            f"lambda={lam} is not an extreme point of the numerical range; "
            "M_lambda is not a linear subspace there"
        )
    vals, vecs = hermitian_eigendecomposition(h)
    s = max(1.0, abs(vals[0]), abs(vals[-1]))
    endpoint = vals[0] if abs(lam - vals[0]) <= abs(lam - vals[-1]) else vals[-1]
    mask = np.abs(vals - endpoint) <= tol * s
    return SubspaceBasis(h.dim, vecs[:, mask])


def linearity_witness(h, lam: float):
    """Witness that ``M_lambda(H)`` is not a subspace at an interior ``lam``.

    Returns unit vectors ``(x, y)`` that both satisfy ``<Hx,x> = lam`` while
    ``x + y`` does not, mixing the extreme eigenvectors ``v_min, v_max`` as
    ``x = alpha v_min + beta v_max``, ``y = alpha v_min - beta v_max`` with
    ``alpha^2 (lambda_min - lam) + beta^2 (lambda_max - lam) = 0``.

    Returns ``None`` when ``lam`` is an endpoint of ``W(H)`` (or outside),
    where no witness exists because ``M_lambda`` is a subspace.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    vals, vecs = hermitian_eigendecomposition(h)
    lo, hi = float(vals[0]), float(vals[-1])
    guard = 1e-12 * max(1.0, abs(lo), abs(hi))
    if not (lo + guard < lam < hi - guard):
        return None
    alpha = math.sqrt((hi - lam) / (hi - lo))
    beta = math.sqrt((lam - lo) / (hi - lo))
    x = alpha * vecs[:, 0] + beta * vecs[:, -1]
    y = alpha * vecs[:, 0] - beta * vecs[:, -1]
    return x, y
