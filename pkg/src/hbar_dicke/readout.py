"""Single-qubit readout error model and its correction.

A response matrix ``M`` maps ideal outcome probabilities to measured ones,
``noisy = M @ ideal``, with column ``c`` holding ``(p(0|c), p(1|c))``.
Correction either inverts ``M`` directly (which can produce negative
"probabilities") or solves the least-squares problem over the probability
simplex.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, ValidationError

STOCHASTIC_ATOL = 1e-9
ACTIVE_SET_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ResponseMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValidationError(f"response matrix must be square, got shape {m.shape}")
        if np.any(m < 0) or np.any(m > 1):
            raise ValidationError("response matrix entries must lie in [0, 1]")
        if np.any(np.abs(m.sum(axis=0) - 1) > STOCHASTIC_ATOL):
            raise ValidationError("response matrix columns must sum to 1")
        if abs(np.linalg.det(m)) <= STOCHASTIC_ATOL:
            raise ValidationError("response matrix is singular")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def __eq__(self, other):
        if not isinstance(other, ResponseMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    @property
    def size(self):
        return self.entries.shape[0]

    def tolist(self):
        return self.entries.tolist()


def probability_vector(values, atol=STOCHASTIC_ATOL):
    """Validate and return ``values`` as a float array on the simplex."""
    p = np.asarray(values, dtype=float)
    if p.ndim != 1:
        raise ValidationError("probability vector must be one-dimensional")
    if np.any(~np.isfinite(p)) or np.any(p < 0):
        raise ValidationError("probabilities must be non-negative")
    if abs(p.sum() - 1) > atol:
        raise ValidationError(f"probabilities must sum to 1 (got {p.sum():.12g})")
    return p


def _check_sizes(m, v):
    if v.shape != (m.size,):
        raise ValidationError(f"vector of length {v.shape[0]} does not match {m.size}x{m.size} response matrix")


def apply_response(m, ideal):
    ideal = probability_vector(ideal)
    _check_sizes(m, ideal)
    out = m.entries @ ideal
    # column-stochastic M keeps the simplex; clip rounding only
    return np.clip(out, 0.0, 1.0)


def invert_unconstrained(m, noisy):
    """Plain ``M^{-1} noisy``; components may come out negative."""
    noisy = np.asarray(noisy, dtype=float)
    _check_sizes(m, noisy)
    try:
        return np.linalg.solve(m.entries, noisy)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc


def correct_constrained(m, noisy):
    """Least-squares correction restricted to the probability simplex.

    Minimizes ``||M x - noisy||^2`` subject to ``x >= 0`` and ``sum(x) = 1``.
    For two outcomes the problem is a scalar quadratic in ``x0`` and is solved
    in closed form; larger matrices go through :func:`simplex_least_squares`.
    """
    noisy = probability_vector(noisy)
    _check_sizes(m, noisy)
    if m.size == 2:
        M = m.entries
        a = M[:, 0] - M[:, 1]
        b = M[:, 1] - noisy
        x0 = float(np.clip(-(a @ b) / (a @ a), 0.0, 1.0))
        return np.array([x0, 1.0 - x0])
    return simplex_least_squares(m.entries, noisy)


def simplex_least_squares(M, y, tol=ACTIVE_SET_TOL, max_iter=500):
    """Primal active-set solve of ``min ||M x - y||^2`` over the simplex.

    Starts from the barycentre; the working set holds indices pinned at zero.
    """
    M = np.asarray(M, dtype=float)
    y = np.asarray(y, dtype=float)
    n = M.shape[1]
    Q = M.T @ M
    c = M.T @ y
    x = np.full(n, 1.0 / n)
    pinned = np.zeros(n, dtype=bool)

    for _ in range(max_iter):
        free = np.flatnonzero(~pinned)
        k = free.size
        grad = Q @ x - c
        # KKT system for the step restricted to free coordinates, sum(step) = 0
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = Q[np.ix_(free, free)]
        kkt[:k, k] = 1.0
        kkt[k, :k] = 1.0
        rhs = np.concatenate([-grad[free], [0.0]])
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
        step = np.zeros(n)
        step[free] = sol[:k]
        nu = sol[k]

        if np.max(np.abs(step)) <= tol:
            # multipliers of the pinned bounds: grad_i + nu must be >= 0
            lam = grad + nu
            lam[~pinned] = np.inf
            i = int(np.argmin(lam))
            if lam[i] >= -tol:
                break
            pinned[i] = False
            continue

        alpha = 1.0
        blocking = -1
        for i in free:
            if step[i] < -tol:
                ratio = -x[i] / step[i]
                if ratio < alpha:
                    alpha, blocking = ratio, i
        x = x + alpha * step
        if blocking >= 0:
            x[blocking] = 0.0
            pinned[blocking] = True

    x = np.clip(x, 0.0, None)
    return x / x.sum()
