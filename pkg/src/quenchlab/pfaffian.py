"""Pfaffian of a real antisymmetric matrix.

Householder reduction to skew-symmetric tridiagonal form; the Pfaffian is
the product of the superdiagonal entries times the sign of the orthogonal
transform (each reflection contributes det = -1).
"""

from __future__ import annotations

import numpy as np


def pfaffian(A):
    """Pfaffian of a real antisymmetric matrix of even dimension.

    Cost O(n^3); satisfies pfaffian(A)**2 == det(A) up to roundoff.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if n % 2:
        return 0.0
    if n == 0:
        return 1.0
    asym = np.max(np.abs(A + A.T))
    scale = max(np.max(np.abs(A)), 1e-300)
    if asym > 1e-12 * scale:
        raise ValueError(f"matrix is not antisymmetric (|A+A^T| = {asym:.3g})")

    sign = 1.0
    for i in range(n - 2):
        x = A[i + 1:, i]
        normx = np.linalg.norm(x)
        if normx == 0.0:
            continue
        # reflect x onto alpha*e1 with alpha chosen for stability
        alpha = -np.sign(x[0]) * normx if x[0] != 0 else normx
        v = x.copy()
        v[0] -= alpha
        vnorm2 = v @ v
        if vnorm2 == 0.0:
            continue
        # A <- H A H^T on the trailing block; v^T B v = 0 for skew B, so the
        # reflection reduces to a rank-2 update B + v w^T - w v^T
        B = A[i + 1:, i + 1:]
        w = B @ v * (2.0 / vnorm2)
        B += np.outer(v, w)
        B -= np.outer(w, v)
        A[i + 1:, i] = 0.0
        A[i, i + 1:] = 0.0
        A[i + 1, i] = alpha
        A[i, i + 1] = -alpha
        sign = -sign

    val = sign
    for k in range(0, n, 2):
        val *= A[k, k + 1]
    return float(val)


def pfaffian_squared_vs_det(A):
    """Diagnostic: (Pf(A)^2, det(A)) for consistency checks."""
    return pfaffian(A) ** 2, float(np.linalg.det(np.asarray(A, dtype=float)))
