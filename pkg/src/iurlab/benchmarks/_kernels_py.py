"""Vectorized numpy fallbacks for the benchmark function kernels.

Same formulas as the compiled versions in ``iurlab._native``; reductions are
vectorized, so float rounding may differ in the last couple of ulps.
"""

import numpy as np

TWO_PI = 2.0 * np.pi
SCHWEFEL_W_STAR = 420.96874635998194


def k_sphere(Z, out):
    np.sum(Z * Z, axis=1, out=out)


def k_elliptic(Z, out):
    d = Z.shape[1]
    w = 10.0 ** (6.0 * np.arange(d) / (d - 1)) if d > 1 else np.ones(1)
    np.sum(w * Z * Z, axis=1, out=out)


def k_bent_cigar(Z, out):
    out[:] = Z[:, 0] ** 2 + 1e6 * np.sum(Z[:, 1:] ** 2, axis=1)


def k_discus(Z, out):
    out[:] = 1e6 * Z[:, 0] ** 2 + np.sum(Z[:, 1:] ** 2, axis=1)


def k_diff_powers(Z, out):
    d = Z.shape[1]
    e = 2.0 + (4.0 * np.arange(d) / (d - 1) if d > 1 else np.zeros(1))
    out[:] = np.sqrt(np.sum(np.abs(Z) ** e, axis=1))


def k_rosenbrock(Z, out):
    a = Z[:, :-1]
    b = Z[:, 1:]
    np.sum(100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2, axis=1, out=out)


def k_schaffers_f7(Z, out):
    s = np.sqrt(Z[:, :-1] ** 2 + Z[:, 1:] ** 2)
    rt = np.sqrt(s)
    acc = np.sum(rt + rt * np.sin(50.0 * s**0.2) ** 2, axis=1) / (Z.shape[1] - 1)
    out[:] = acc * acc


def k_ackley(Z, out):
    d = Z.shape[1]
    sq = np.sum(Z * Z, axis=1)
    cs = np.sum(np.cos(TWO_PI * Z), axis=1)
    out[:] = -20.0 * np.exp(-0.2 * np.sqrt(sq / d)) - np.exp(cs / d) + 20.0 + np.e


def k_weierstrass(Z, out):
    d = Z.shape[1]
    k = np.arange(21)
    ak = 0.5**k
    bk = 3.0**k
    anchor = np.sum(ak * np.cos(TWO_PI * bk * 0.5))
    base = Z[:, :, None] + 0.5
    out[:] = np.sum(ak * np.cos(TWO_PI * bk * base), axis=(1, 2)) - d * anchor


def k_griewank(Z, out):
    d = Z.shape[1]
    sq = np.sum(Z * Z, axis=1)
    pr = np.prod(np.cos(Z / np.sqrt(np.arange(1.0, d + 1.0))), axis=1)
    out[:] = sq / 4000.0 - pr + 1.0


def k_rastrigin(Z, out):
    np.sum(Z * Z - 10.0 * np.cos(TWO_PI * Z) + 10.0, axis=1, out=out)


def k_noncont_rastrigin(Z, out):
    Y = np.where(np.abs(Z) > 0.5, np.floor(2.0 * Z + 0.5) / 2.0, Z)
    np.sum(Y * Y - 10.0 * np.cos(TWO_PI * Y) + 10.0, axis=1, out=out)


def _schwefel_g(W, d):
    g = W * np.sin(np.sqrt(np.abs(W)))
    hi = W > 500.0
    lo = W < -500.0
    if np.any(hi):
        u = 500.0 - np.mod(W[hi], 500.0)
        g[hi] = u * np.sin(np.sqrt(np.abs(u))) - (W[hi] - 500.0) ** 2 / (10000.0 * d)
    if np.any(lo):
        u = np.mod(np.abs(W[lo]), 500.0) - 500.0
        g[lo] = u * np.sin(np.sqrt(np.abs(u))) - (W[lo] + 500.0) ** 2 / (10000.0 * d)
    return g


def k_schwefel(Z, out):
    d = Z.shape[1]
    peak = SCHWEFEL_W_STAR * np.sin(np.sqrt(SCHWEFEL_W_STAR))
    np.sum(peak - _schwefel_g(Z + SCHWEFEL_W_STAR, d), axis=1, out=out)


def k_katsuura(Z, out):
    d = Z.shape[1]
    scale = 10.0 / (d * d)
    expo = 10.0 / d**1.2
    k = 2.0 ** np.arange(1, 33)
    T = Z[:, :, None] * k
    term = np.sum(np.abs(T - np.floor(T + 0.5)) / k, axis=2)
    out[:] = scale * np.prod((1.0 + np.arange(1, d + 1) * term) ** expo, axis=1) - scale


def k_lunacek(Z, out):
    d = Z.shape[1]
    mu0 = 2.5
    spar = 1.0 - 1.0 / (2.0 * np.sqrt(d + 20.0) - 8.2)
    mu1 = -np.sqrt((mu0 * mu0 - 1.0) / spar)
    a0 = np.sum((Z - mu0) ** 2, axis=1)
    a1 = d + spar * np.sum((Z - mu1) ** 2, axis=1)
    cs = np.sum(1.0 - np.cos(TWO_PI * (Z - mu0)), axis=1)
    out[:] = np.minimum(a0, a1) + 10.0 * cs


def k_exp_griewank_rosenbrock(Z, out):
    W = Z
    Wn = np.roll(W, -1, axis=1)
    t = 100.0 * (W * W - Wn) ** 2 + (W - 1.0) ** 2
    np.sum(t * t / 4000.0 - np.cos(t) + 1.0, axis=1, out=out)


def k_exp_schaffer_f6(Z, out):
    Zn = np.roll(Z, -1, axis=1)
    ss = Z * Z + Zn * Zn
    sn = np.sin(np.sqrt(ss))
    np.sum(0.5 + (sn * sn - 0.5) / (1.0 + 0.001 * ss) ** 2, axis=1, out=out)
