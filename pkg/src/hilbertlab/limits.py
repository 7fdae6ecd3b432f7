"""Radial limits by Richardson extrapolation on a geometric ladder."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["richardson", "radial_limit"]


def richardson(values, ratio: float = 2.0, exponents=None, max_columns: int = 8):
    """Extrapolate ``A(eps_k)`` to ``eps -> 0`` for ``eps_k = eps_0 ratio^-k``.

    ``A(eps) = A_0 + sum_j a_j eps^gamma_j``.  The exponents default to
    ``1, 2, 3, ...``; a known fractional leading exponent can be put first.
    Returns ``(estimate, error_estimate)``, picking the tableau entry whose
    difference from its predecessor is smallest.
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        raise ValueError("richardson needs at least one value")
    gammas = list(exponents) if exponents is not None else []
    gammas += [float(j) for j in range(1, max_columns + 1)]
    gammas = gammas[:max_columns]
    best, best_err = float(vals[-1]), (abs(vals[-1] - vals[-2]) if vals.size > 1 else math.inf)
    prev_col = vals
    for gamma in gammas:
        if prev_col.size < 2:
            break
        f = ratio**gamma
        col = prev_col[1:] + (prev_col[1:] - prev_col[:-1]) / (f - 1.0)
        diffs = np.abs(col - prev_col[1:])
        k = int(np.argmin(diffs))
        if diffs[k] < best_err:
            best, best_err = float(col[k]), float(diffs[k])
        prev_col = col
    return best, best_err


def radial_limit(g, eps0: float = 0.5, k_max: int = 30, exponents=None, max_columns: int = 8):
    """Limit of ``g(eps)`` as ``eps -> 0`` from samples at ``eps_k = eps0 2^-k``.

    ``g`` receives ``eps`` as a float (``r = 1 - eps`` is implied); ``k``
    runs from 0 to ``k_max``.
    """
    ladder = [g(eps0 * 2.0 ** (-k)) for k in range(k_max + 1)]
    return richardson(ladder, 2.0, exponents, max_columns)
