"""Gaussian kernel eigendecomposition under a centred Gaussian measure.

For the kernel k(x, y) = exp(-(x - y)^2 / (2 l^2)) and the measure with
density (a / sqrt(pi)) exp(-a^2 x^2), the eigenpairs are known in closed
form.  With

    eps = 1 / (sqrt(2) l),
    beta = (1 + (2 eps / a)^2)^(1/4),
    delta^2 = (a^2 / 2) (beta^2 - 1),

the eigenvalues and L2-normalized eigenfunctions are

    lambda_n = sqrt(a^2 / (a^2 + delta^2 + eps^2))
               * (eps^2 / (a^2 + delta^2 + eps^2))^n,
    phi_n(x) = sqrt(beta / n!) * exp(-delta^2 x^2) * H_n(sqrt(2) a beta x).

The default a = 1/sqrt(2) makes the measure the standard Gaussian.  The
means of the eigenfunctions under the standard Gaussian vanish for odd n
and for n = 2m equal

    mu(phi_2m) = sqrt(beta / (1 + 2 delta^2)) * r_m * g^m,

with g = 2 a^2 beta^2 / (1 + 2 delta^2) - 1 and the square-root central
binomial ratio r_m = sqrt(C(2m, m) / 4^m), computed by the recurrence
r_m = r_{m-1} sqrt((2m - 1) / (2m)).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hermite import DEGREE_MAX, normalized_table

__all__ = [
    "ALPHA_DEFAULT",
    "GaussianKernel",
    "MercerBasis",
    "basis_from",
    "eigenvalue",
    "eigenfunction",
    "eigenfunction_table",
    "eigenfunction_mean",
    "eigenfunction_means",
    "even_mean_ratios",
    "kernel_truncated",
]

ALPHA_DEFAULT = math.sqrt(0.5)


@dataclass(frozen=True)
class GaussianKernel:
    """Gaussian kernel k(x, y) = exp(-(x - y)^2 / (2 l^2))."""

    length_scale: float

    def __post_init__(self):
        if not (self.length_scale > 0 and math.isfinite(self.length_scale)):
            raise DomainError(f"length scale must be positive, got {self.length_scale}")

    def value(self, x, y):
        d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        return np.exp(-(d * d) / (2.0 * self.length_scale**2))


@dataclass(frozen=True)
class MercerBasis:
    """Derived constants of the eigendecomposition for one (l, a) pair."""

    length_scale: float
    alpha: float
    epsilon: float
    beta: float
    delta_sq: float

    @property
    def gamma(self) -> float:
        """Geometric ratio of the even eigenfunction means."""
        a2 = self.alpha**2
        return 2.0 * a2 * self.beta**2 / (1.0 + 2.0 * self.delta_sq) - 1.0

    @property
    def eigenvalue_ratio(self) -> float:
        """lambda_{n+1} / lambda_n, constant in n."""
        e2 = self.epsilon**2
        return e2 / (self.alpha**2 + self.delta_sq + e2)


def basis_from(length_scale: float, alpha: float = ALPHA_DEFAULT) -> MercerBasis:
    """Build the eigendecomposition constants for a kernel/measure pair.

    Parameters
    ----------
    length_scale : float
        Kernel length-scale l > 0.
    alpha : float, optional
        Measure shape parameter a > 0; the default 1/sqrt(2) gives the
        standard Gaussian measure.
    """
    if not (length_scale > 0 and math.isfinite(length_scale)):
        raise DomainError(f"length scale must be positive, got {length_scale}")
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be positive, got {alpha}")
    epsilon = 1.0 / (math.sqrt(2.0) * length_scale)
    beta = (1.0 + (2.0 * epsilon / alpha) ** 2) ** 0.25
    delta_sq = 0.5 * alpha**2 * (beta**2 - 1.0)
    return MercerBasis(
        length_scale=float(length_scale),
        alpha=float(alpha),
        epsilon=epsilon,
        beta=beta,
        delta_sq=delta_sq,
    )


def eigenvalue(basis: MercerBasis, n: int) -> float:
    """n-th kernel eigenvalue lambda_n, a geometric sequence in n."""
    if n < 0:
        raise DomainError(f"eigenvalue index must be nonnegative, got {n}")
    a2 = basis.alpha**2
    denom = a2 + basis.delta_sq + basis.epsilon**2
    return math.sqrt(a2 / denom) * basis.eigenvalue_ratio**n


def eigenfunction(basis: MercerBasis, n: int, x):
    """Evaluate the normalized eigenfunction phi_n at x (scalar or array).

    Computed on the normalized Hermite path
    phi_n(x) = sqrt(beta) exp(-delta^2 x^2) hhat_n(sqrt(2) a beta x),
    which stays finite throughout the guarded degree range.
    """
    if n < 0:
        raise DomainError(f"eigenfunction index must be nonnegative, got {n}")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    values = eigenfunction_table(basis, xs, n + 1)[:, n]
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(values[0])
    return values


def eigenfunction_table(basis: MercerBasis, x: np.ndarray, count: int) -> np.ndarray:
    """Values phi_n(x_i) for n < count; shape (len(x), count)."""
    x = np.asarray(x, dtype=float)
    scaled = math.sqrt(2.0) * basis.alpha * basis.beta * x
    envelope = math.sqrt(basis.beta) * np.exp(-basis.delta_sq * x * x)
    return envelope[:, None] * normalized_table(scaled, count - 1)


def even_mean_ratios(m_max: int) -> np.ndarray:
    """r_m = sqrt(C(2m, m) / 4^m) for m = 0..m_max, by stable recurrence."""
    if m_max < 0:
        raise DomainError(f"m_max must be nonnegative, got {m_max}")
    r = np.empty(m_max + 1)
    r[0] = 1.0
    for m in range(1, m_max + 1):
        r[m] = r[m - 1] * math.sqrt((2.0 * m - 1.0) / (2.0 * m))
    return r


def eigenfunction_mean(basis: MercerBasis, n: int) -> float:
    """Mean of phi_n under the standard Gaussian measure.

    Zero for odd n; for n = 2m given by the closed form in the module
    docstring.  Every factor is O(1) or geometric, so no factorials are
    formed.
    """
    if n < 0:
        raise DomainError(f"eigenfunction index must be nonnegative, got {n}")
    if n % 2 == 1:
        return 0.0
    m = n // 2
    lead = math.sqrt(basis.beta / (1.0 + 2.0 * basis.delta_sq))
    return lead * even_mean_ratios(m)[m] * basis.gamma**m


def eigenfunction_means(basis: MercerBasis, count: int) -> np.ndarray:
    """Vector of mu(phi_n) for n < count."""
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    out = np.zeros(count)
    m_top = (count - 1) // 2
    ratios = even_mean_ratios(m_top)
    lead = math.sqrt(basis.beta / (1.0 + 2.0 * basis.delta_sq))
    powers = basis.gamma ** np.arange(m_top + 1)
    out[0 : 2 * m_top + 1 : 2] = lead * ratios * powers
    return out


def kernel_truncated(basis: MercerBasis, m_terms: int, x: float, y: float) -> float:
    """Truncated eigenexpansion sum_{n < m_terms} lambda_n phi_n(x) phi_n(y).

    Converges to the kernel value as m_terms grows; the truncation error
    is geometric with ratio lambda_{n+1}/lambda_n.
    """
    if not 1 <= m_terms <= DEGREE_MAX:
        raise DomainError(f"m_terms must be in [1, {DEGREE_MAX}], got {m_terms}")
    pts = np.array([float(x), float(y)])
    table = eigenfunction_table(basis, pts, m_terms)
    a2 = basis.alpha**2
    lam0 = math.sqrt(a2 / (a2 + basis.delta_sq + basis.epsilon**2))
    lams = lam0 * basis.eigenvalue_ratio ** np.arange(m_terms)
    return float(np.sum(lams * table[0] * table[1]))
