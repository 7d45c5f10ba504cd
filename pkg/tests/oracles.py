"""Independent reference computations used only by the tests.

None of these touch the eigendecomposition path under test.
"""

import numpy as np


def expm_taylor(A, terms=30):
    """Scaling-and-squaring Taylor series for ``exp(A)``."""
    A = np.asarray(A, dtype=complex)
    norm = np.max(np.sum(np.abs(A), axis=1)) if A.size else 0.0
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    X = A / (2**s)
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ X / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def charpoly_roots_3x3(H):
    """Eigenvalues of a real symmetric 3x3 matrix from its characteristic cubic."""
    H = np.asarray(H, dtype=float)
    tr = np.trace(H)
    minors = (H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0]
              + H[0, 0] * H[2, 2] - H[0, 2] * H[2, 0]
              + H[1, 1] * H[2, 2] - H[1, 2] * H[2, 1])
    det = np.linalg.det(H)
    roots = np.roots([1.0, -tr, minors, -det])
    return np.sort(roots.real)


def naive_phase_sum(weights, rates, times):
    out = []
    for t in times:
        acc = 0j
        for w, r in zip(weights, rates):
            acc += w * complex(np.cos(r * t), np.sin(r * t))
        out.append(acc)
    return np.array(out)


def overlap(a, b):
    return abs(np.vdot(a, b)) ** 2
