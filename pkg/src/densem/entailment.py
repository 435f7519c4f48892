"""Graded entailment between positive operators.

``A`` entails ``B`` with strength ``k`` in (0, 1] when ``B - kA`` is
positive semidefinite.  Such a ``k`` exists exactly when the support of
``A`` is contained in the support of ``B``, and the largest one is the
reciprocal of the top eigenvalue of ``pinv(B) @ A``, computed here through
the symmetric conjugate ``sqrt(A) @ pinv(B) @ sqrt(A)`` so that only
symmetric eigensolves are needed.

The module also provides the additive error decomposition ``A + D = B + E``
for operators that are not comparable at any strength, the finite-set
instance of the same error calculus, normalization strategies, and the
two-dimensional Bloch-disc parameterization used to map entailment
strengths over all trace-1 states.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyProposition,
    NotDensityOperator,
    OutsideDiscError,
    ResolutionError,
    StrengthRangeError,
    ZeroOperatorError,
)
from .psd import (
    DEFAULT_TOL,
    Tolerances,
    _eigvalsh,
    _sym,
    as_symmetric,
    eig,
    is_psd,
    pseudo_inverse,
    require_psd,
    sqrt_psd,
    sub,
    support_projector,
)

ZERO_NORM_ATOL = 1e-12

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


class Normalization(enum.Enum):
    """Scaling strategies for positive operators before comparison."""

    NONE = "none"
    TRACE_ONE = "trace"
    MAX_EIG_ONE = "maxeig"
    BAYESIAN = "bayes"

    @classmethod
    def coerce(cls, value) -> "Normalization":
        if isinstance(value, cls):
            return value
        return cls(value)


@dataclass(frozen=True)
class EntailmentResult:
    """Outcome of a maximal-strength query.

    ``k_max`` is the strength clipped into (0, 1]; ``raw_k`` is the
    unclipped reciprocal eigenvalue and ``witness_eigenvalue`` the top
    eigenvalue it came from.  All three are ``None`` when the supports are
    not contained.
    """

    supports_contained: bool
    k_max: Optional[float]
    raw_k: Optional[float]
    witness_eigenvalue: Optional[float]

    def __post_init__(self):
        if self.supports_contained != (self.k_max is not None):
            raise ValueError("k_max must be present exactly when supports are contained")
        if self.k_max is not None and self.raw_k is not None:
            if abs(self.k_max - min(1.0, self.raw_k)) > 1e-15:
                raise ValueError("k_max must equal min(1, raw_k)")


@dataclass(frozen=True)
class ErrorDecomposition:
    """Additive error terms with ``A + deficit = B + excess``.

    ``excess`` is the part of ``A`` that sticks out of ``B`` and
    ``deficit`` the part of ``B`` not covered by ``A``; both are PSD.
    """

    excess: np.ndarray
    deficit: np.ndarray


def supports_contained(a, b, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when the support of ``a`` lies inside the support of ``b``."""
    A = require_psd(a, tol, name="A")
    B = require_psd(b, tol, name="B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape {A.shape} vs {B.shape}")
    projector = support_projector(B, tol)
    return _containment_residual_ok(A, projector, tol)


def _containment_residual_ok(A: np.ndarray, b_projector: np.ndarray, tol: Tolerances) -> bool:
    residual = float(np.linalg.norm((np.eye(A.shape[0]) - b_projector) @ A))
    return residual <= tol.compare_tol * max(1.0, float(np.linalg.norm(A)))


def is_k_hyponym(a, b, k: float, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when ``b - k*a`` is positive semidefinite, for k in (0, 1]."""
    strength = float(k)
    if not 0.0 < strength <= 1.0:
        raise StrengthRangeError(f"strength {strength!r} is outside (0, 1]")
    A = require_psd(a, tol, name="A")
    B = require_psd(b, tol, name="B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape {A.shape} vs {B.shape}")
    return is_psd(sub(B, strength * A), tol)


def k_max(a, b, tol: Tolerances = DEFAULT_TOL) -> EntailmentResult:
    """Maximal entailment strength of ``a`` into ``b``.

    Raises :class:`ZeroOperatorError` when ``a`` vanishes; returns a
    result without a strength when the supports are not contained.
    """
    A = require_psd(a, tol, name="A")
    B = require_psd(b, tol, name="B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape {A.shape} vs {B.shape}")
    if float(np.linalg.norm(A)) <= ZERO_NORM_ATOL:
        raise ZeroOperatorError("entailment strength is undefined for the zero operator")
    return _k_max_core(A, support_projector(B, tol), pseudo_inverse(B, tol), tol)


def _k_max_core(
    A: np.ndarray,
    b_projector: np.ndarray,
    b_pinv: np.ndarray,
    tol: Tolerances,
) -> EntailmentResult:
    if not _containment_residual_ok(A, b_projector, tol):
        return EntailmentResult(False, None, None, None)
    root = sqrt_psd(A, tol)
    conjugated = _sym(root @ b_pinv @ root)
    top = float(_eigvalsh(conjugated)[-1])
    if top <= 0.0:
        raise ZeroOperatorError("entailment strength is undefined for the zero operator")
    raw = 1.0 / top
    return EntailmentResult(True, min(1.0, raw), raw, top)


def general_error(a, b, tol: Tolerances = DEFAULT_TOL) -> ErrorDecomposition:
    """Split ``A - B`` spectrally into PSD excess and deficit terms."""
    A = require_psd(a, tol, name="A")
    B = require_psd(b, tol, name="B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape {A.shape} vs {B.shape}")
    dec = eig(sub(A, B))
    positive = np.clip(dec.eigenvalues, 0.0, None)
    negative = np.clip(-dec.eigenvalues, 0.0, None)
    v = dec.eigenvectors
    excess = _sym((v * positive) @ v.T)
    deficit = _sym((v * negative) @ v.T)
    return ErrorDecomposition(excess=excess, deficit=deficit)


@dataclass(frozen=True)
class FiniteSetProposition:
    """A subset of a finite universe ``{0, ..., universe - 1}``."""

    universe: int
    members: frozenset[int]

    def __post_init__(self):
        if self.universe < 0:
            raise ValueError("universe size must be nonnegative")
        members = frozenset(int(i) for i in self.members)
        if any(not 0 <= i < self.universe for i in members):
            raise ValueError("members must lie inside the universe")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, universe: int, members: Iterable[int]) -> "FiniteSetProposition":
        return cls(universe, frozenset(members))


def set_entailment(
    a: FiniteSetProposition, b: FiniteSetProposition
) -> tuple[bool, float]:
    """Crisp subset entailment plus the fractional error |A \\ B| / |A|."""
    if a.universe != b.universe:
        raise DimensionMismatch(
            f"universe sizes differ: {a.universe} vs {b.universe}"
        )
    if not a.members:
        raise EmptyProposition("error size is undefined for an empty antecedent")
    entails = a.members <= b.members
    error_size = len(a.members - b.members) / len(a.members)
    return entails, error_size


def normalize(matrix, strategy, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Rescale or transform a PSD matrix by the chosen strategy."""
    strategy = Normalization.coerce(strategy)
    m = require_psd(matrix, tol)
    if strategy is Normalization.NONE:
        return m
    if strategy is Normalization.TRACE_ONE:
        total = float(np.trace(m))
        if total <= ZERO_NORM_ATOL:
            raise ZeroOperatorError("cannot trace-normalize the zero operator")
        return m / total
    if strategy is Normalization.MAX_EIG_ONE:
        top = float(_eigvalsh(m)[-1])
        if top <= ZERO_NORM_ATOL:
            raise ZeroOperatorError("cannot eigenvalue-normalize the zero operator")
        return m / top
    return bayes_transform(m, tol)


def bayes_transform(matrix, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Replace the sorted spectrum by its running products, same basis.

    With eigenvalues ``d_0 >= d_1 >= ...`` the output eigenvalues are
    ``d_0, d_0*d_1, d_0*d_1*d_2, ...`` on the unchanged eigenvectors.
    """
    m = require_psd(matrix, tol)
    dec = eig(m)
    products = np.cumprod(np.clip(dec.eigenvalues, 0.0, None))
    v = dec.eigenvectors
    return _sym((v * products) @ v.T)


def from_bloch(x: float, z: float) -> np.ndarray:
    """The 2x2 trace-1 PSD matrix with disc coordinates ``(x, z)``."""
    x = float(x)
    z = float(z)
    if x * x + z * z > 1.0 + 1e-12:
        raise OutsideDiscError(f"({x}, {z}) lies outside the closed unit disc")
    return 0.5 * (np.eye(2) + x * _PAULI_X + z * _PAULI_Z)


def to_bloch(matrix) -> tuple[float, float]:
    """Disc coordinates of a 2x2 trace-1 PSD matrix; inverts from_bloch."""
    m = as_symmetric(matrix)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 matrix, got shape {m.shape}")
    if abs(float(np.trace(m)) - 1.0) > 1e-8:
        raise NotDensityOperator(f"trace {float(np.trace(m))!r} is not 1")
    if not is_psd(m):
        raise NotDensityOperator("matrix is not positive semidefinite")
    return float(2.0 * m[0, 1]), float(m[0, 0] - m[1, 1])


def disc_grid(
    target,
    resolution: int,
    strategy,
    tol: Tolerances = DEFAULT_TOL,
) -> list[tuple[float, float, float]]:
    """Entailment strength into ``target`` over a lattice of disc states.

    Rows are ``(x, z, k)`` for every lattice point of an evenly spaced
    ``resolution x resolution`` grid over [-1, 1]^2 that lies inside the
    closed unit disc, in row-major order with ``z`` descending and ``x``
    ascending.  ``k`` is 0 when the point's support is not contained in
    the target's support.
    """
    if resolution < 2:
        raise ResolutionError(f"resolution must be at least 2, got {resolution}")
    strategy = Normalization.coerce(strategy)
    m = as_symmetric(target)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 target, got shape {m.shape}")
    if abs(float(np.trace(m)) - 1.0) > 1e-8 or not is_psd(m, tol):
        raise NotDensityOperator("target must be a trace-1 PSD matrix")
    normalized_target = normalize(m, strategy, tol)
    b_projector = support_projector(normalized_target, tol)
    b_pinv = pseudo_inverse(normalized_target, tol)
    axis = np.linspace(-1.0, 1.0, resolution)
    rows: list[tuple[float, float, float]] = []
    for z in axis[::-1]:
        for x in axis:
            if x * x + z * z > 1.0 + 1e-12:
                continue
            source = normalize(from_bloch(x, z), strategy, tol)
            result = _k_max_core(source, b_projector, b_pinv, tol)
            k = result.k_max if result.supports_contained else 0.0
            rows.append((float(x), float(z), float(k)))
    return rows


def format_float(value: float) -> str:
    """Deterministic 9-significant-digit rendering used by all reports."""
    v = float(value)
    if v == 0.0:
        v = 0.0
    return format(v, ".9g")


def format_grid_csv(rows: Iterable[tuple[float, float, float]]) -> str:
    """Serialize disc rows as ``x,z,k`` lines under a header."""
    lines = ["x,z,k"]
    for x, z, k in rows:
        lines.append(f"{format_float(x)},{format_float(z)},{format_float(k)}")
    return "\n".join(lines) + "\n"
