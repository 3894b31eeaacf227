"""Probabilists' Hermite polynomials and their normalized variants.

The polynomials H_n satisfy

    H_0(x) = 1,  H_1(x) = x,  H_{n+1}(x) = x H_n(x) - n H_{n-1}(x),

and are orthogonal with <H_n, H_m> = n! delta_nm under the standard
Gaussian measure.  Raw values grow like sqrt(n!), so the primary
evaluation path is the normalized family hhat_n = H_n / sqrt(n!), whose
rescaled recurrence

    hhat_{n+1}(x) = (x hhat_n(x) - sqrt(n) hhat_{n-1}(x)) / sqrt(n + 1)

keeps every intermediate bounded by roughly 1.087 * exp(x^2 / 4).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeOverflowError

__all__ = [
    "DEGREE_MAX",
    "HermiteSequence",
    "hermite_eval",
    "normalized_sequence",
    "normalized_table",
]

# Twice the largest supported rule size, with headroom for truncated
# kernel expansions that extend past the node count.
DEGREE_MAX = 400


def _check_degree(n: int) -> None:
    if n < 0:
        raise DegreeOverflowError(f"degree must be nonnegative, got {n}")
    if n > DEGREE_MAX:
        raise DegreeOverflowError(f"degree {n} exceeds the guard {DEGREE_MAX}")


@dataclass(frozen=True)
class HermiteSequence:
    """Values of hhat_0 .. hhat_degree_max at a single point."""

    degree_max: int
    point: float
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.degree_max + 1,):
            raise ValueError("values must hold exactly degree_max + 1 entries")
        self.values.setflags(write=False)


def hermite_eval(n: int, x: float) -> float:
    """Evaluate the probabilists' Hermite polynomial H_n at x.

    Parameters
    ----------
    n : int
        Degree, 0 <= n <= DEGREE_MAX.
    x : float
        Evaluation point.

    Returns
    -------
    float
        H_n(x) by the three-term recurrence.  Unnormalized values carry
        sqrt(n!) growth and overflow to inf once n is in the high
        hundreds for moderate x; use :func:`normalized_sequence` for
        large degrees.
    """
    _check_degree(n)
    if n == 0:
        return 1.0
    h_prev = 1.0
    h = float(x)
    for k in range(1, n):
        h_prev, h = h, x * h - k * h_prev
    return h


def normalized_sequence(x: float, degree_max: int) -> HermiteSequence:
    """All normalized values hhat_n(x) = H_n(x)/sqrt(n!) for n <= degree_max."""
    _check_degree(degree_max)
    values = normalized_table(np.asarray([float(x)]), degree_max)[0]
    return HermiteSequence(degree_max=degree_max, point=float(x), values=values)


def normalized_table(x: np.ndarray, degree_max: int) -> np.ndarray:
    """Normalized Hermite values on a grid of points.

    Parameters
    ----------
    x : ndarray, shape (npoints,)
    degree_max : int

    Returns
    -------
    ndarray, shape (npoints, degree_max + 1)
        Column n holds hhat_n(x).
    """
    _check_degree(degree_max)
    x = np.asarray(x, dtype=float)
    out = np.empty((x.size, degree_max + 1))
    out[:, 0] = 1.0
    if degree_max >= 1:
        out[:, 1] = x
    for n in range(1, degree_max):
        out[:, n + 1] = (x * out[:, n] - math.sqrt(n) * out[:, n - 1]) / math.sqrt(n + 1)
    return out
