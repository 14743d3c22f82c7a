"""Matching distances between supports and between eigenvalue multisets.

Both distances are bottleneck assignment problems: minimise, over
permutations, the largest matched pair distance. Small instances are solved
by enumerating permutations; larger ones by binary search over the sorted
cost values with an augmenting-path perfect-matching test.
"""

from itertools import permutations

import numpy as np

from .errors import ParameterError
from .measures import torus_distance

__all__ = [
    "bottleneck_brute_force",
    "bottleneck_matching",
    "bottleneck_value",
    "matching_distance",
    "eigenvalue_matching_distance",
    "BRUTE_FORCE_MAX",
]

BRUTE_FORCE_MAX = 8


def bottleneck_brute_force(cost):
    """Exact bottleneck value by enumerating all permutations."""
    cost = np.asarray(cost, dtype=float)
    n = cost.shape[0]
    if n == 0:
        return 0.0
    perms = np.array(list(permutations(range(n))))
    return float(cost[np.arange(n), perms].max(axis=1).min())


def _has_perfect_matching(allowed):
    """Kuhn's augmenting-path test on a boolean adjacency matrix."""
    n = allowed.shape[0]
    adj = [np.flatnonzero(row) for row in allowed]
    match_right = [-1] * n

    def augment(u, seen):
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(n):
        if not augment(u, [False] * n):
            return False
    return True


def bottleneck_matching(cost):
    """Exact bottleneck value by threshold search plus bipartite matching.

    The answer is always one of the cost entries, so the search runs over
    the sorted distinct entries and returns one of them exactly.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.shape[0] == 0:
        return 0.0
    values = np.unique(cost)
    lo, hi = 0, values.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(cost <= values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(values[lo])


def bottleneck_value(cost, method="auto"):
    cost = np.asarray(cost, dtype=float)
    if method == "auto":
        method = "brute" if cost.shape[0] <= BRUTE_FORCE_MAX else "bottleneck"
    if method == "brute":
        return bottleneck_brute_force(cost)
    if method == "bottleneck":
        return bottleneck_matching(cost)
    raise ParameterError(f"unknown matching method {method!r}")


def _check_lengths(a, b):
    if a.shape != b.shape or a.ndim != 1:
        raise ParameterError(f"matching needs equal-length sequences, got {a.size} and {b.size}")


def matching_distance(omega, omega_hat, method="auto"):
    """``min_perm max_j |omega_hat[perm(j)] - omega[j]|`` in torus distance."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    omega_hat = np.atleast_1d(np.asarray(omega_hat, dtype=float))
    _check_lengths(omega, omega_hat)
    return bottleneck_value(torus_distance(omega[:, None], omega_hat[None, :]), method)


def eigenvalue_matching_distance(lams, lams_hat, method="auto"):
    """Matching distance between two complex multisets in modulus."""
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    lams_hat = np.atleast_1d(np.asarray(lams_hat, dtype=complex))
    _check_lengths(lams, lams_hat)
    return bottleneck_value(np.abs(lams[:, None] - lams_hat[None, :]), method)
