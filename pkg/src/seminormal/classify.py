"""Semi-normality classification and metric-equality diagnostics.

An operator is semi-normal when its self-commutator ``C(A) = A^H A - A A^H``
is semi-definite, equivalently when 0 is an extreme point of the closure of
``W(C(A))``.  Because ``C`` is traceless, a finite matrix is either normal
or not semi-normal in exact arithmetic; the *WithinTol* tags exist so that
truncations of genuinely hyponormal infinite-dimensional operators are not
misreported when the opposite-sign spectrum of ``C`` sits at noise level.

The metric-equality set ``E(A) = {x : ||Ax|| = ||A^H x||}`` contains the
null space of ``C`` always; the two coincide exactly when ``A`` is
semi-normal, and :func:`stampfli_equivalence_scan` produces an explicit
counterexample vector whenever they do not.

Tolerance scale: all commutator tests use ``max(1, ||A||^2)``, the natural
scale of ``C``, keeping verdicts invariant under ``A <- sA`` up to the
documented ``s^2`` scaling.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from seminormal.core import (
    DEFAULT_TOL,
    as_operator,
    as_vector,
    hermitian_eigendecomposition,
    norm_defect,
    null_space,
    operator_norm,
    quadratic_form,
    self_commutator,
)
from seminormal.numrange import (
    RealInterval,
    hull_distance,
    numerical_range_boundary,
)

__all__ = [
    "ClassificationReport",
    "EquivalenceScan",
    "KernelM0Report",
    "SeminormalClass",
    "StampfliRecord",
    "classify",
    "e_set_membership",
    "kernel_equals_m0_check",
    "reducing_eigenvalue_check",
    "stampfli_check",
    "stampfli_equivalence_scan",
]


class SeminormalClass(enum.Enum):
    NORMAL = "Normal"
    HYPONORMAL_WITHIN_TOL = "HyponormalWithinTol"
    COHYPONORMAL_WITHIN_TOL = "CohyponormalWithinTol"
    NON_SEMINORMAL = "NonSeminormal"


@dataclass(frozen=True)
class ClassificationReport:
    """Semi-normality verdict with the commutator interval as evidence.

    ``zero_is_extreme`` holds exactly when the class is not NonSeminormal
    (both are decided against the same band ``tol * max(1, ||A||^2)``), and
    ``product_ab`` vanishes at that band's scale whenever it does.
    """

    seminormal_class: SeminormalClass
    c_interval: RealInterval
    zero_is_extreme: bool
    product_ab: float
    tol_used: float


@dataclass(eq=False)
class StampfliRecord:
    """Membership of one vector in ``E(A)`` and in ``N(C(A))``.

    ``in_null_space`` implies ``in_e_set`` unconditionally; the reverse
    implication (``consistent``) can fail only for non-semi-normal ``A``.
    """

    x: np.ndarray = field(repr=False)
    in_e_set: bool
    in_null_space: bool
    consistent: bool


@dataclass(eq=False)
class EquivalenceScan:
    """Outcome of the metric-equality equivalence scan.

    Either the equivalence holds, or ``witness`` is a vector in
    ``E(A) \\ N(C(A))`` with its quadratic form value ``<Cx,x>`` (near
    zero) and residual norm ``||Cx||`` (bounded away from zero).
    """

    holds: bool
    witness: np.ndarray | None = field(default=None, repr=False)
    witness_form_value: float | None = None
    witness_image_norm: float | None = None


@dataclass(frozen=True)
class KernelM0Report:
    """Verdict of the kernel/M0 coincidence test.

    ``equal`` holds when the null space reduces ``A`` and the compression
    ``B`` to its orthocomplement has ``0`` outside ``W(B)`` (distance
    recorded in ``b_range_distance``).
    """

    equal: bool
    reducing: bool
    b_range_distance: float


def _commutator_scale(a: np.ndarray) -> float:
    return max(1.0, operator_norm(a) ** 2)


def classify(a, tol: float = DEFAULT_TOL) -> ClassificationReport:
    """Classify ``A`` by the sign pattern of its self-commutator spectrum.

    With ``W(C(A)) = [a, b]`` and band ``tol * max(1, ||A||^2)``: Normal when
    both endpoints sit inside the band, Hypo/Cohypo-WithinTol when only the
    negative/positive endpoint does, NonSeminormal when both clear it.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_operator(a)
    c = self_commutator(m)
    vals, _ = hermitian_eigendecomposition(c)
    lo, hi = float(vals[0]), float(vals[-1])
    band = tol * _commutator_scale(m)
    if max(abs(lo), abs(hi)) <= band:
        tag = SeminormalClass.NORMAL
    elif lo >= -band and hi > band:
        tag = SeminormalClass.HYPONORMAL_WITHIN_TOL
    elif hi <= band and lo < -band:
        tag = SeminormalClass.COHYPONORMAL_WITHIN_TOL
    else:
        tag = SeminormalClass.NON_SEMINORMAL
    zero_is_extreme = abs(lo) <= band or abs(hi) <= band
    return ClassificationReport(
        seminormal_class=tag,
        c_interval=RealInterval(lo, hi),
        zero_is_extreme=zero_is_extreme,
        product_ab=lo * hi,
        tol_used=tol,
    )


def e_set_membership(a, x, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``||Ax|| = ||A^H x||`` within tolerance.

    Tests the squared defect ``| ||Ax||^2 - ||A^H x||^2 |`` against
    ``tol ||A||^2 ||x||^2``, avoiding cancellation near zero norms.  The
    zero vector is always a member.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_operator(a)
    v = as_vector(x, m.shape[0])
    nx2 = float(np.real(np.vdot(v, v)))
    if nx2 == 0.0:
        return True
    return abs(norm_defect(m, v)) <= tol * operator_norm(m) ** 2 * nx2


def stampfli_check(a, x, tol: float = DEFAULT_TOL) -> StampfliRecord:
    """Record whether ``x`` lies in ``E(A)`` and in ``N(C(A))``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_operator(a)
    v = as_vector(x, m.shape[0])
    in_e = e_set_membership(m, v, tol)
    c = self_commutator(m)
    nx = float(np.linalg.norm(v))
    in_n = float(np.linalg.norm(c.matrix @ v)) <= tol * operator_norm(m) ** 2 * nx
    return StampfliRecord(x=v, in_e_set=in_e, in_null_space=in_n,
                          consistent=(not in_e) or in_n)


def stampfli_equivalence_scan(a, tol: float = DEFAULT_TOL) -> EquivalenceScan:
    """Decide whether ``E(A) = N(C(A))`` and produce a witness if not.

    For semi-normal (within tolerance) input the equivalence holds.
    Otherwise the extreme eigenvalue pair of ``C(A)`` with the largest
    magnitudes of each sign, ``(lambda_+, v_+)`` and ``(lambda_-, v_-)``,
    yields the deterministic witness ``x = v_+ + t v_-`` with
    ``t = sqrt(lambda_+ / (-lambda_-))``: then ``<Cx,x> = 0`` while
    ``||Cx|| >= sqrt(lambda_+ (-lambda_-))``.
    """
    m = as_operator(a)
    report = classify(m, tol)
    if report.seminormal_class is not SeminormalClass.NON_SEMINORMAL:
        return EquivalenceScan(holds=True)
    c = self_commutator(m)
    vals, vecs = hermitian_eigendecomposition(c)
    pos, neg = float(vals[-1]), float(vals[0])
    t = math.sqrt(pos / -neg)
    x = vecs[:, -1] + t * vecs[:, 0]
    form = float(np.real(quadratic_form(c, x)))
    image = float(np.linalg.norm(c.matrix @ x))
    scale = _commutator_scale(m)
    # Both guaranteed by the NonSeminormal classification; failure would
    # mean the eigendecomposition contract broke.
    if abs(form) > 1e-9 * scale or image <= tol * scale:
        raise RuntimeError("witness construction failed its own verification")
    return EquivalenceScan(holds=False, witness=x, witness_form_value=form,
                           witness_image_norm=image)


def kernel_equals_m0_check(a, tol: float = DEFAULT_TOL) -> KernelM0Report:
    """Test ``N(A) = M_0(A)`` via the reducing-block criterion.

    The two sets coincide exactly when ``A`` is, up to a unitary, a direct
    sum of a zero block and an operator ``B`` with ``0 not in W(B)`` (either
    summand may be absent).  Checks that the null space ``K`` reduces ``A``
    (``A`` and ``A^H`` both map ``K_perp`` into itself) and that the
    compression to ``K_perp`` keeps 0 outside its numerical range.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_operator(a)
    n = m.shape[0]
    kernel = null_space(m, tol)
    k = kernel.dim
    if k == n:
        return KernelM0Report(equal=True, reducing=True, b_range_distance=math.inf)
    scale = max(1.0, operator_norm(m))
    if k == 0:
        reducing = True
        compression = m
    else:
        u = kernel.vectors
        _, s, vh = np.linalg.svd(m)
        rank = int(np.count_nonzero(s > tol * s[0])) if s[0] else 0
        w = vh[:rank].conj().T  # orthocomplement of the null space
        leak_a = float(np.linalg.norm(u.conj().T @ m @ w, 2))
        leak_ah = float(np.linalg.norm(u.conj().T @ m.conj().T @ w, 2))
        reducing = max(leak_a, leak_ah) <= tol * scale
        compression = w.conj().T @ m @ w
    boundary = numerical_range_boundary(compression)
    dist = float(hull_distance(boundary.hull, 0.0))
    return KernelM0Report(equal=bool(reducing and dist > tol), reducing=bool(reducing),
                          b_range_distance=dist)


def reducing_eigenvalue_check(a, lam: complex, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``lam`` is a reducing eigenvalue of ``A``.

    True when the eigenspace ``K = N(A - lam I)`` is nontrivial and ``A^H``
    acts on it as multiplication by ``conj(lam)`` within tolerance, i.e.
    ``K`` is invariant under both ``A`` and ``A^H``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_operator(a)
    n = m.shape[0]
    eigenspace = null_space(m - complex(lam) * np.eye(n), tol)
    if eigenspace.dim == 0:
        return False
    scale = max(1.0, operator_norm(m))
    resid = (m.conj().T - np.conj(complex(lam)) * np.eye(n)) @ eigenspace.vectors
    return float(np.linalg.norm(resid, 2)) <= tol * scale
