"""Exact Neumann spectrum of the Laplacian on the unit square.

The Neumann eigenfunctions of -Delta on (0,1)^2 are the products
cos(pi*l*x)*cos(pi*m*y) indexed by integer pairs (l, m) with l, m >= 0,
with eigenvalues pi^2*(l^2 + m^2).  For the Helmholtz operator
Delta + k^2*a with constant coefficient a these shift to
a*k^2 - pi^2*(l^2 + m^2), so every spectral question about the constant
coefficient problem reduces to counting lattice points l^2 + m^2 against
the threshold a*k^2:

* ``positive_eigenvalue_count(a, k)`` counts modes with
  pi^2*(l^2+m^2) < a*k^2 (the number of positive Helmholtz Neumann
  eigenvalues).
* ``negative_eigenvalue_bound(a, b, k)`` counts modes in the open window
  (a*k^2, b*k^2); this is the dimension bound for the number of negative
  eigenvalues of the difference of the two Neumann-to-Dirichlet maps.
* ``multiplicity(n)`` counts ordered representations n = l^2 + m^2,
  i.e. the multiplicity of pi^2*n as a Neumann eigenvalue.

A pair (a, k) is *resonant* when a*k^2 coincides with some
pi^2*(l^2+m^2): the Neumann problem is then not uniquely solvable and
every counting operation is ill-posed.  Floating-point equality is
meaningless, so resonance means "within ``guard`` of an eigenvalue"
(default ``DEFAULT_GUARD``); counting operations raise
:class:`ResonanceError` for such inputs instead of silently picking a
side of the window edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

PI2 = math.pi ** 2

#: Absolute tolerance, in units of a*k^2, inside which a coefficient is
#: treated as resonant.
DEFAULT_GUARD = 1e-9


class ResonanceError(ValueError):
    """Raised when a*k^2 is within the guard of a Neumann eigenvalue."""


class ModeIndex(NamedTuple):
    """Lattice index (l, m) of a Neumann eigenmode of the unit square."""

    l: int
    m: int


@dataclass(frozen=True)
class ProblemParams:
    """Configuration shared by all matrix and experiment operations.

    Attributes
    ----------
    a : float
        Constant coefficient value of the Helmholtz equation.
    k : float
        Wavenumber, k > 0.
    modes_per_side : int
        Number of cosine modes kept per side of the square; the
        truncated Neumann-to-Dirichlet matrix has size
        ``4 * modes_per_side``.
    guard : float
        Resonance guard tolerance (absolute, in units of a*k^2).

    Raises
    ------
    ResonanceError
        If ``a * k**2`` lies within ``guard`` of pi^2*(l^2+m^2) for some
        mode, i.e. the Neumann problem is (numerically) ill-posed.
    ValueError
        If k <= 0, modes_per_side < 1, or guard <= 0.
    """

    a: float
    k: float = 1.0
    modes_per_side: int = 100
    guard: float = DEFAULT_GUARD

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise ValueError(f"wavenumber k must be positive, got {self.k}")
        if self.modes_per_side < 1:
            raise ValueError(
                f"modes_per_side must be >= 1, got {self.modes_per_side}"
            )
        if not self.guard > 0:
            raise ValueError(f"guard must be positive, got {self.guard}")
        if is_resonant(self.a, self.k, self.guard):
            raise ResonanceError(
                f"a*k^2 = {self.a * self.k**2!r} is within {self.guard} of a "
                f"Neumann eigenvalue pi^2*(l^2+m^2); the Neumann problem is "
                f"ill-posed"
            )

    @property
    def size(self) -> int:
        """Size 4*modes_per_side of the truncated matrix."""
        return 4 * self.modes_per_side


def neumann_eigenvalue(mode: ModeIndex | tuple[int, int]) -> float:
    """Neumann eigenvalue pi^2*(l^2 + m^2) of -Delta for the given mode."""
    l, m = mode
    if l < 0 or m < 0:
        raise ValueError(f"mode indices must be nonnegative, got ({l}, {m})")
    return PI2 * (l * l + m * m)


def multiplicity(n: int) -> int:
    """Number of ordered pairs (l, m) with l, m >= 0 and l^2 + m^2 = n.

    This is the multiplicity of pi^2*n as a Neumann eigenvalue of -Delta
    on the unit square (0 when n is not a sum of two squares).  Ordered
    pairs are counted, so (1, 2) and (2, 1) both contribute for n = 5.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    count = 0
    for l in range(math.isqrt(n) + 1):
        m = math.isqrt(n - l * l)
        if l * l + m * m == n:
            count += 1
    return count


def is_resonant(a: float, k: float, guard: float = DEFAULT_GUARD) -> bool:
    """Whether a*k^2 lies within ``guard`` of some pi^2*(l^2+m^2).

    Only integer levels n with |a*k^2 - pi^2*n| < guard can qualify, so
    the scan covers the few integers around a*k^2/pi^2.  Negative
    thresholds are never resonant unless a*k^2 is within the guard of
    zero (the l = m = 0 eigenvalue).
    """
    if not k > 0:
        raise ValueError(f"wavenumber k must be positive, got {k}")
    if not guard > 0:
        raise ValueError(f"guard must be positive, got {guard}")
    target = a * k * k
    center = round(target / PI2)
    reach = math.ceil(guard / PI2) + 1
    for n in range(max(0, center - reach), center + reach + 1):
        if abs(target - PI2 * n) < guard and multiplicity(n) > 0:
            return True
    return False


def _checked_threshold(a: float, k: float, guard: float, label: str) -> float:
    if is_resonant(a, k, guard):
        raise ResonanceError(
            f"{label}: a*k^2 = {a * k * k!r} is within {guard} of a Neumann "
            f"eigenvalue; the count is ill-posed"
        )
    return a * k * k


def _modes_strictly_below(l: int, target: float) -> int:
    """#{m >= 0 : pi^2*(l^2 + m^2) < target} for one fixed l."""
    rem = target / PI2 - l * l
    if rem <= 0:
        return 0
    m = math.isqrt(int(rem)) + 1
    # settle the strict comparison exactly at the boundary
    while m > 0 and PI2 * (l * l + (m - 1) * (m - 1)) >= target:
        m -= 1
    while PI2 * (l * l + m * m) < target:
        m += 1
    return m


def positive_eigenvalue_count(
    a: float, k: float = 1.0, guard: float = DEFAULT_GUARD
) -> int:
    """Number of positive Neumann eigenvalues of Delta + k^2*a.

    Equals #{(l, m) : pi^2*(l^2+m^2) < a*k^2}, counted with
    multiplicity; modes are enumerated per l up to the radius
    sqrt(a*k^2)/pi.  Raises :class:`ResonanceError` when (a, k) is
    resonant, since the strict inequality is then meaningless.
    """
    target = _checked_threshold(a, k, guard, "positive_eigenvalue_count")
    if target <= 0:
        return 0
    count = 0
    for l in range(math.isqrt(int(target / PI2)) + 2):
        count += _modes_strictly_below(l, target)
    return count


def negative_eigenvalue_bound(
    a: float, b: float, k: float = 1.0, guard: float = DEFAULT_GUARD
) -> int:
    """Lattice count #{(l, m) : a*k^2 < pi^2*(l^2+m^2) < b*k^2}.

    This is the theoretical upper bound for the number of negative
    eigenvalues of the difference of the Neumann-to-Dirichlet operators
    at coefficients b and a, and equals
    ``positive_eigenvalue_count(b, k) - positive_eigenvalue_count(a, k)``.

    Both window ends use strict inequalities; an eigenvalue within
    ``guard`` of either end raises :class:`ResonanceError` rather than
    being silently included or excluded.
    """
    if not a < b:
        raise ValueError(f"window requires a < b, got a={a}, b={b}")
    lo = _checked_threshold(a, k, guard, "negative_eigenvalue_bound (a)")
    hi = _checked_threshold(b, k, guard, "negative_eigenvalue_bound (b)")
    if hi <= 0:
        return 0
    count = 0
    for n in range(max(0, math.ceil(lo / PI2)), math.floor(hi / PI2) + 1):
        if lo < PI2 * n < hi:
            count += multiplicity(n)
    return count


def construct_even_multiplicity(target: int) -> int:
    """Level n = 5**(target-1) whose multiplicity is exactly ``target``.

    For even ``target`` >= 2 the level 5**(target-1) has precisely
    ``target`` ordered representations as a sum of two squares, so
    pi^2 * 5**(target-1) is a Neumann eigenvalue of that multiplicity.
    The result is re-validated against :func:`multiplicity` before
    being returned.
    """
    if target < 2 or target % 2 != 0:
        raise ValueError(
            f"target multiplicity must be an even integer >= 2, got {target}"
        )
    n = 5 ** (target - 1)
    actual = multiplicity(n)
    if actual != target:
        raise AssertionError(
            f"constructed level {n} has multiplicity {actual}, "
            f"expected {target}"
        )
    return n
