"""Spectral representation of the Helmholtz solution operator.

On the unit square the solution operator of the constant-coefficient
Neumann problem diagonalizes in the Laplacian Neumann eigenbasis: the
compact operator generated by the H^1 -> L^2 embedding has eigenvalue
1/(1 + pi^2*(l^2+m^2)) on mode (l, m), and the difference of two
solution operators at coefficients b and a acts diagonally with
coefficients

    c = 1/(1 - (1 + b*k^2)*lam) - 1/(1 - (1 + a*k^2)*lam),

lam the embedding eigenvalue.  The coefficient is negative exactly when
pi^2*(l^2+m^2) lies strictly between a*k^2 and b*k^2, so counting
negative coefficients reproduces the lattice bound of
:func:`ndsquare.spectrum.negative_eigenvalue_bound` by an entirely
independent route.  Only signs are consumed downstream, so the H^1
normalization (which rescales magnitudes but not signs) is omitted.
"""

from __future__ import annotations

from .spectrum import (
    DEFAULT_GUARD,
    PI2,
    ModeIndex,
    ResonanceError,
    is_resonant,
)


def embedding_eigenvalue(mode: ModeIndex | tuple[int, int]) -> float:
    """Eigenvalue 1/(1 + pi^2*(l^2+m^2)) of the compact embedding operator."""
    l, m = mode
    if l < 0 or m < 0:
        raise ValueError(f"mode indices must be nonnegative, got ({l}, {m})")
    return 1.0 / (1.0 + PI2 * (l * l + m * m))


def solution_diff_coefficient(
    mode: ModeIndex | tuple[int, int],
    a: float,
    b: float,
    k: float = 1.0,
    guard: float = DEFAULT_GUARD,
) -> float:
    """Diagonal coefficient of the solution-operator difference on a mode.

    For a < b the value is negative iff a*k^2 < pi^2*(l^2+m^2) < b*k^2.
    Either denominator within the guard of zero (the mode is resonant
    for that coefficient) raises :class:`ResonanceError`.
    """
    l, m = mode
    level = PI2 * (l * l + m * m)
    for label, coeff in (("a", a), ("b", b)):
        if abs(level - coeff * k * k) < guard:
            raise ResonanceError(
                f"mode ({l}, {m}) is resonant for coefficient {label}={coeff!r}"
            )
    lam = embedding_eigenvalue(mode)
    return 1.0 / (1.0 - (1.0 + b * k * k) * lam) - 1.0 / (
        1.0 - (1.0 + a * k * k) * lam
    )


def exact_negative_count(
    a: float,
    b: float,
    k: float = 1.0,
    mode_cutoff: int = 40,
    guard: float = DEFAULT_GUARD,
) -> int:
    """Number of negative diagonal coefficients over modes l, m <= cutoff.

    Every sign change happens at a mode with pi^2*(l^2+m^2) < b*k^2, so
    the count is exact (and equals the lattice bound) once
    pi^2*mode_cutoff^2 > b*k^2; smaller cutoffs raise ``ValueError``.
    """
    if not a < b:
        raise ValueError(f"requires a < b, got a={a}, b={b}")
    if mode_cutoff < 1:
        raise ValueError(f"mode_cutoff must be >= 1, got {mode_cutoff}")
    if PI2 * mode_cutoff * mode_cutoff <= b * k * k:
        raise ValueError(
            f"mode_cutoff={mode_cutoff} too small: pi^2*cutoff^2 = "
            f"{PI2 * mode_cutoff**2:.6g} <= b*k^2 = {b * k * k:.6g}; "
            f"sign changes could fall outside the enumerated window"
        )
    for label, coeff in (("a", a), ("b", b)):
        if is_resonant(coeff, k, guard):
            raise ResonanceError(
                f"coefficient {label}={coeff!r} is resonant for k={k!r}"
            )
    count = 0
    for l in range(mode_cutoff + 1):
        for m in range(mode_cutoff + 1):
            if solution_diff_coefficient((l, m), a, b, k, guard) < 0.0:
                count += 1
    return count
