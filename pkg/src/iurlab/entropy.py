"""Discrete information-theory kernel.

All entropies are in bits (log base 2); ``0 * log 0`` is taken as 0. The
ratio computations downstream divide bits by bits, so the base choice only
fixes the convention that a fair-coin comparison costs exactly one bit.
"""

import math

import numpy as np

_MASS_TOL = 1e-12
# Largest population for which combinatorics stay on the exact integer path;
# above it, log-gamma is used. Continuity at the switchover is tested.
EXACT_COMB_LIMIT = 62


class InvalidDistributionError(ValueError):
    """Probabilities are negative or do not sum to one."""


def _check_mass(p, total):
    if np.any(p < 0.0):
        raise InvalidDistributionError("negative probability")
    if abs(total - 1.0) > _MASS_TOL:
        raise InvalidDistributionError(f"total mass {total!r} != 1")


def shannon_entropy(probabilities) -> float:
    """H(X) = -sum p log2 p of a discrete distribution."""
    p = np.asarray(probabilities, dtype=float)
    _check_mass(p, float(p.sum()))
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def conditional_entropy(joint) -> float:
    """H(X|Y) from a joint table with rows indexing X and columns Y.

    Zero-mass rows and columns contribute nothing.
    """
    t = np.asarray(joint, dtype=float)
    if t.ndim != 2:
        raise InvalidDistributionError("joint table must be a matrix")
    _check_mass(t, float(t.sum()))
    py = t.sum(axis=0)
    h = 0.0
    for j, colmass in enumerate(py):
        if colmass <= 0.0:
            continue
        col = t[:, j]
        nz = col[col > 0.0]
        h -= float(np.sum(nz * np.log2(nz / colmass)))
    return h


def pi(g: int) -> float:
    """Entropy in bits of the indicator that a fresh i.i.d. draw beats the
    minimum of ``g`` previous draws.

    pi(g) = -(g/(g+1)) log2(g/(g+1)) - (1/(g+1)) log2(1/(g+1)); pi(1) = 1,
    strictly decreasing toward 0.
    """
    if g < 1:
        raise ValueError(f"pi requires g >= 1, got {g}")
    q = g / (g + 1.0)
    r = 1.0 / (g + 1.0)
    return -q * math.log2(q) - r * math.log2(r)


def sum_pi(g: int) -> float:
    """sum_{i=1}^{g} pi(i); sum_pi(0) = 0."""
    if g < 0:
        raise ValueError(f"sum_pi requires g >= 0, got {g}")
    return sum(pi(i) for i in range(1, g + 1))


def _check_choose(lam: int, mu: int):
    if mu < 0 or lam < 0 or mu > lam:
        raise ValueError(f"need 0 <= mu <= lambda, got lambda={lam}, mu={mu}")


def log2_binomial(lam: int, mu: int) -> float:
    """log2 C(lambda, mu), exact integers up to the documented switchover,
    log-gamma beyond it."""
    _check_choose(lam, mu)
    if lam <= EXACT_COMB_LIMIT:
        return math.log2(math.comb(lam, mu))
    lg = math.lgamma(lam + 1) - math.lgamma(mu + 1) - math.lgamma(lam - mu + 1)
    return lg / math.log(2.0)


def log2_falling_factorial(lam: int, mu: int) -> float:
    """log2 of lambda!/(lambda-mu)!, the count of ranked mu-selections."""
    _check_choose(lam, mu)
    if lam <= EXACT_COMB_LIMIT:
        value = 1
        for k in range(lam - mu + 1, lam + 1):
            value *= k
        return math.log2(value)
    lg = math.lgamma(lam + 1) - math.lgamma(lam - mu + 1)
    return lg / math.log(2.0)
