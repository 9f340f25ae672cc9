"""Symmetric eigenvalue utilities and truncation-error estimators.

Negative-eigenvalue counting follows the thresholded protocol used by
the experiments: an eigenvalue counts as negative only when it lies
below -delta, so that truncation and rounding noise around zero is
never mistaken for a genuine sign change.

Two truncation-error estimators are provided.  ``truncation_error``
compares one assembled matrix at ``modes_per_side`` J against its own
assembly at J/2, zero-padded back to full size; because smaller
frequencies occupy the lower indices (s = 4j + p), the padded matrix is
exactly the upper-left corner of the full one and the difference is the
discarded border.  For a *single* operator this border carries the
slowly decaying same-side diagonal (~ 1/(pi*j)), so the estimate decays
only like 1/modes_per_side.  ``difference_truncation_error`` applies
the same comparison to the difference of two operators, where the
diagonals cancel to O(1/j^3) and the estimate is several orders of
magnitude smaller; this is the relevant quantity when counting negative
eigenvalues of such differences.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .nd_matrix import assemble
from .spectrum import DEFAULT_GUARD, ProblemParams

#: Relative asymmetry accepted by the symmetric eigensolver front-end.
SYMMETRY_CHECK_RTOL = 1e-10

#: Default threshold below which -eigenvalue counts as negative.
DEFAULT_DELTA = 1e-5


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted eigenvalues of a symmetric matrix plus the negative count.

    ``negative_count`` is #{lambda : lambda < -tolerance} and
    ``eigenvalues`` is sorted descending with multiplicity.
    """

    eigenvalues: tuple[float, ...]
    tolerance: float
    negative_count: int


def _require_symmetric(matrix: np.ndarray, op: str) -> np.ndarray:
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{op}: expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 0.0)
    defect = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if defect > SYMMETRY_CHECK_RTOL * scale:
        raise ValueError(
            f"{op}: matrix is not symmetric (max |A - A^T| = {defect:.3e}, "
            f"allowed {SYMMETRY_CHECK_RTOL * scale:.3e})"
        )
    return m


def symmetric_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric real matrix, sorted descending.

    Backed by LAPACK's symmetric solver (``numpy.linalg.eigvalsh``),
    which is backward stable; inputs failing the symmetry check raise
    ``ValueError``.
    """
    m = _require_symmetric(matrix, "symmetric_eigenvalues")
    return np.linalg.eigvalsh(m)[::-1]


def count_negative(eigenvalues, delta: float) -> int:
    """Number of eigenvalues strictly below -delta."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    eigs = np.asarray(eigenvalues, dtype=float)
    return int(np.count_nonzero(eigs < -delta))


def spectrum_report(matrix: np.ndarray, delta: float) -> SpectrumReport:
    """Eigendecompose and count negatives under the given threshold."""
    eigs = symmetric_eigenvalues(matrix)
    return SpectrumReport(
        eigenvalues=tuple(float(v) for v in eigs),
        tolerance=delta,
        negative_count=count_negative(eigs, delta),
    )


def spectral_norm(matrix: np.ndarray) -> float:
    """Operator 2-norm of a symmetric matrix: max |eigenvalue|."""
    m = _require_symmetric(matrix, "spectral_norm")
    if m.size == 0:
        return 0.0
    eigs = np.linalg.eigvalsh(m)
    return float(max(abs(eigs[0]), abs(eigs[-1])))


def _zero_padded_half(params: ProblemParams) -> tuple[np.ndarray, np.ndarray]:
    j_modes = params.modes_per_side
    if j_modes % 2 != 0:
        raise ValueError(
            f"modes_per_side must be even to halve the truncation, "
            f"got {j_modes}"
        )
    full = assemble(params).entries
    half = assemble(replace(params, modes_per_side=j_modes // 2)).entries
    padded = np.zeros_like(full)
    padded[: half.shape[0], : half.shape[1]] = half
    return full, padded


def truncation_error(params: ProblemParams) -> float:
    """Spectral norm of the border lost when halving the truncation.

    Assembles the matrix at ``params.modes_per_side`` and at half that
    count, zero-pads the smaller one into the upper-left corner (which
    the interleaved index order s = 4j + p makes the correct placement)
    and returns the spectral norm of the difference.

    Decreases like 1/modes_per_side: the dominant lost entries are the
    same-side diagonal values ~ 1/(pi*j) at j = modes_per_side/2.  See
    :func:`difference_truncation_error` for the much smaller error of
    operator differences.
    """
    full, padded = _zero_padded_half(params)
    return spectral_norm(full - padded)


def difference_truncation_error(
    a: float,
    b: float,
    k: float = 1.0,
    modes_per_side: int = 250,
    guard: float = DEFAULT_GUARD,
) -> float:
    """Truncation-error estimate for the operator difference at (b, a).

    Assembles the difference matrix at ``modes_per_side`` and compares
    it against its own upper-left quarter-size corner (modes below
    modes_per_side/2 per side) zero-padded back to full size, in the
    spectral norm.  The slowly decaying diagonals of the two operators
    cancel in the difference, so this decays like
    |b - a| / modes_per_side^3.
    """
    if modes_per_side % 2 != 0:
        raise ValueError(
            f"modes_per_side must be even to halve the truncation, "
            f"got {modes_per_side}"
        )
    mat_b = assemble(ProblemParams(a=b, k=k, modes_per_side=modes_per_side, guard=guard))
    mat_a = assemble(ProblemParams(a=a, k=k, modes_per_side=modes_per_side, guard=guard))
    diff = mat_b.entries - mat_a.entries
    corner = 4 * (modes_per_side // 2)
    padded = np.zeros_like(diff)
    padded[:corner, :corner] = diff[:corner, :corner]
    return spectral_norm(diff - padded)
