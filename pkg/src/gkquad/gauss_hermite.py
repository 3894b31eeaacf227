"""Gauss-Hermite quadrature for the standard Gaussian measure.

Nodes are the roots of the probabilists' Hermite polynomial H_N,
computed Golub-Welsch style as eigenvalues of the symmetric tridiagonal
Jacobi matrix (zero diagonal, off-diagonals sqrt(1..N-1)) and polished
with one Newton step.  Weights use the Christoffel-function identity

    w_n = 1 / sum_{k<N} hhat_k(x_n)^2,

which equals the squared first eigenvector component of the Jacobi
matrix but stays componentwise accurate down to the extreme nodes,
whose weights sit far below the eigensolver's absolute eigenvector
accuracy.  Weights are positive by construction and sum to one; the
largest node is below 2 sqrt(N - 1).
"""

import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NumericalFailureError, SizeError
from .hermite import normalized_table

__all__ = [
    "N_MAX",
    "MEASURE_TAG",
    "QuadratureRule",
    "NodeResidualWarning",
    "gh_rule",
    "node_bound_holds",
]

N_MAX = 200
MEASURE_TAG = "standard_gaussian"

# Polished nodes are expected to satisfy |hhat_N(x_n)| below this times
# the largest |hhat_k(x_n)| over k <= N; worse residuals are flagged
# with a warning rather than failing the construction.
_RESIDUAL_TOL = 1e-8


class NodeResidualWarning(UserWarning):
    """A polished node left a larger-than-expected polynomial residual."""


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule for a fixed measure."""

    nodes: np.ndarray
    weights: np.ndarray
    measure_tag: str = field(default=MEASURE_TAG)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or weights.ndim != 1:
            raise ValueError("nodes and weights must be one-dimensional")
        if nodes.size != weights.size:
            raise ValueError("nodes and weights must have equal length")
        if nodes.size == 0:
            raise ValueError("a rule needs at least one node")
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("nodes must be strictly ascending")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        nodes.setflags(write=False)
        weights.setflags(write=False)

    def __len__(self) -> int:
        return self.nodes.size


def gh_rule(n: int) -> QuadratureRule:
    """Gauss-Hermite rule with n nodes for the standard Gaussian measure.

    Parameters
    ----------
    n : int
        Number of nodes, 1 <= n <= N_MAX.

    Returns
    -------
    QuadratureRule
        Strictly ascending nodes, positive weights summing to one,
        symmetric about the origin.

    Raises
    ------
    SizeError
        If n is outside [1, N_MAX].
    NumericalFailureError
        If the tridiagonal eigensolver fails to converge.
    """
    if not 1 <= n <= N_MAX:
        raise SizeError(f"rule size must be in [1, {N_MAX}], got {n}")
    return _gh_rule_cached(int(n))


@functools.lru_cache(maxsize=None)
def _gh_rule_cached(n: int) -> QuadratureRule:
    if n == 1:
        return QuadratureRule(np.array([0.0]), np.array([1.0]))

    diag = np.zeros(n)
    off = np.sqrt(np.arange(1.0, n))
    try:
        eigvals = scipy.linalg.eigh_tridiagonal(diag, off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"tridiagonal eigensolver did not converge for n={n}: {exc}"
        ) from exc

    nodes = eigvals

    # One Newton step per node against hhat_N; hhat_N'(x) = sqrt(N) hhat_{N-1}(x).
    table = normalized_table(nodes, n)
    nodes = nodes - table[:, n] / (math.sqrt(n) * table[:, n - 1])

    # Enforce exact symmetry by averaging mirrored pairs.
    nodes = 0.5 * (nodes - nodes[::-1])

    # Christoffel weights from the polished nodes.  The row sums involve
    # only even powers under the mirror map, so mirrored weights agree
    # to the bit without extra averaging.
    table = normalized_table(nodes, n)
    weights = 1.0 / np.sum(table[:, :n] ** 2, axis=1)

    residual = np.abs(table)
    rel = residual[:, n] / residual.max(axis=1)
    if np.any(rel > _RESIDUAL_TOL):
        worst = int(np.argmax(rel))
        warnings.warn(
            f"node {worst} of the {n}-point rule has polynomial residual "
            f"{rel[worst]:.3e} above {_RESIDUAL_TOL:.1e}",
            NodeResidualWarning,
            stacklevel=3,
        )
    return QuadratureRule(nodes, weights)


def node_bound_holds(rule: QuadratureRule) -> bool:
    """Whether max|x_n| <= 2 sqrt(N - 1) holds for the given rule."""
    n = len(rule)
    return bool(np.max(np.abs(rule.nodes)) <= 2.0 * math.sqrt(n - 1.0))
