# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled core: the seeded random stream and benchmark function kernels.

Mirrors ``iurlab._rng_py`` (bit-identical stream) and
``iurlab.benchmarks._kernels_py`` (same formulas, loop order instead of
vectorized reductions). Selected at import by ``iurlab._backend``.
"""

from libc.math cimport cos, exp, fabs, floor, fmod, log, pow, sin, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559
cdef double E_CONST = 2.718281828459045235360287471352
cdef double INV_2_53 = 1.1102230246251565e-16  # 2**-53
cdef double SCHWEFEL_W_STAR = 420.96874635998194


cdef inline unsigned long long _rotl(unsigned long long x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef unsigned long long _splitmix64(unsigned long long *state) nogil:
    cdef unsigned long long z
    state[0] = state[0] + <unsigned long long>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <unsigned long long>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <unsigned long long>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef class RngCore:
    """xoshiro256++ stream with uniform/normal/index draws (compiled)."""

    cdef unsigned long long s0, s1, s2, s3
    cdef double _cached_normal
    cdef bint _has_cached
    cdef readonly object seed

    def __init__(self, seed):
        cdef unsigned long long state = <unsigned long long>(int(seed) & 0xFFFFFFFFFFFFFFFF)
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.s0 = _splitmix64(&state)
        self.s1 = _splitmix64(&state)
        self.s2 = _splitmix64(&state)
        self.s3 = _splitmix64(&state)
        if self.s0 == 0 and self.s1 == 0 and self.s2 == 0 and self.s3 == 0:
            self.s0 = 1
        self._cached_normal = 0.0
        self._has_cached = False

    cdef inline unsigned long long _next(self) nogil:
        cdef unsigned long long result = _rotl(self.s0 + self.s3, 23) + self.s0
        cdef unsigned long long t = self.s1 << 17
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = _rotl(self.s3, 45)
        return result

    cdef inline double _uniform(self) nogil:
        return <double>(self._next() >> 11) * INV_2_53

    cdef inline double _normal(self) nogil:
        cdef double u, v, s, factor
        if self._has_cached:
            self._has_cached = False
            return self._cached_normal
        while True:
            u = 2.0 * self._uniform() - 1.0
            v = 2.0 * self._uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                factor = sqrt(-2.0 * log(s) / s)
                self._cached_normal = v * factor
                self._has_cached = True
                return u * factor

    def next_u64(self):
        return self._next()

    def uniform(self):
        return self._uniform()

    def normal(self):
        return self._normal()

    def index(self, n):
        cdef long nn = n
        cdef long i = <long>(self._uniform() * nn)
        return nn - 1 if i >= nn else i

    def uniforms(self, n):
        cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
        cdef Py_ssize_t i
        for i in range(out.shape[0]):
            out[i] = self._uniform()
        return out

    def normals(self, n):
        cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
        cdef Py_ssize_t i
        for i in range(out.shape[0]):
            out[i] = self._normal()
        return out


# ---------------------------------------------------------------------------
# Benchmark kernels. Each takes transformed points Z (n, d) and fills (n,).
# ---------------------------------------------------------------------------

def k_sphere(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += Z[i, j] * Z[i, j]
        out[i] = acc


def k_elliptic(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    cdef double[::1] w = np.empty(d)
    for j in range(d):
        w[j] = pow(10.0, 6.0 * j / (d - 1)) if d > 1 else 1.0
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += w[j] * Z[i, j] * Z[i, j]
        out[i] = acc


def k_bent_cigar(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    for i in range(n):
        acc = Z[i, 0] * Z[i, 0]
        for j in range(1, d):
            acc += 1e6 * Z[i, j] * Z[i, j]
        out[i] = acc


def k_discus(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    for i in range(n):
        acc = 1e6 * Z[i, 0] * Z[i, 0]
        for j in range(1, d):
            acc += Z[i, j] * Z[i, j]
        out[i] = acc


def k_diff_powers(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    cdef double[::1] e = np.empty(d)
    for j in range(d):
        e[j] = 2.0 + (4.0 * j / (d - 1) if d > 1 else 0.0)
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += pow(fabs(Z[i, j]), e[j])
        out[i] = sqrt(acc)


def k_rosenbrock(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, t1, t2
    for i in range(n):
        acc = 0.0
        for j in range(d - 1):
            t1 = Z[i, j] * Z[i, j] - Z[i, j + 1]
            t2 = Z[i, j] - 1.0
            acc += 100.0 * t1 * t1 + t2 * t2
        out[i] = acc


def k_schaffers_f7(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, s, rt, sn
    for i in range(n):
        acc = 0.0
        for j in range(d - 1):
            s = sqrt(Z[i, j] * Z[i, j] + Z[i, j + 1] * Z[i, j + 1])
            rt = sqrt(s)
            sn = sin(50.0 * pow(s, 0.2))
            acc += rt + rt * sn * sn
        acc /= (d - 1)
        out[i] = acc * acc


def k_ackley(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double sq, cs
    for i in range(n):
        sq = 0.0
        cs = 0.0
        for j in range(d):
            sq += Z[i, j] * Z[i, j]
            cs += cos(TWO_PI * Z[i, j])
        out[i] = -20.0 * exp(-0.2 * sqrt(sq / d)) - exp(cs / d) + 20.0 + E_CONST


def k_weierstrass(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, k, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, term, base
    cdef double[21] ak, bk
    cdef double anchor = 0.0
    for k in range(21):
        ak[k] = pow(0.5, k)
        bk[k] = pow(3.0, k)
        anchor += ak[k] * cos(TWO_PI * bk[k] * 0.5)
    for i in range(n):
        acc = 0.0
        for j in range(d):
            base = Z[i, j] + 0.5
            term = 0.0
            for k in range(21):
                term += ak[k] * cos(TWO_PI * bk[k] * base)
            acc += term
        out[i] = acc - d * anchor


def k_griewank(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double sq, pr
    for i in range(n):
        sq = 0.0
        pr = 1.0
        for j in range(d):
            sq += Z[i, j] * Z[i, j]
            pr *= cos(Z[i, j] / sqrt(j + 1.0))
        out[i] = sq / 4000.0 - pr + 1.0


def k_rastrigin(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += Z[i, j] * Z[i, j] - 10.0 * cos(TWO_PI * Z[i, j]) + 10.0
        out[i] = acc


def k_noncont_rastrigin(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, y
    for i in range(n):
        acc = 0.0
        for j in range(d):
            y = Z[i, j]
            if fabs(y) > 0.5:
                y = floor(2.0 * y + 0.5) / 2.0
            acc += y * y - 10.0 * cos(TWO_PI * y) + 10.0
        out[i] = acc


cdef inline double _schwefel_g(double w, double d) nogil:
    cdef double u
    if w > 500.0:
        u = 500.0 - fmod(w, 500.0)
        return u * sin(sqrt(fabs(u))) - (w - 500.0) * (w - 500.0) / (10000.0 * d)
    elif w < -500.0:
        u = fmod(fabs(w), 500.0) - 500.0
        return u * sin(sqrt(fabs(u))) - (w + 500.0) * (w + 500.0) / (10000.0 * d)
    return w * sin(sqrt(fabs(w)))


def k_schwefel(double[:, ::1] Z, double[::1] out):
    # Z is pre-scaled; the kernel recenters on the analytic peak so the
    # shift point evaluates to exactly zero.
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, dd = <double>d
    cdef double peak = _schwefel_g(SCHWEFEL_W_STAR, <double>d)
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += peak - _schwefel_g(Z[i, j] + SCHWEFEL_W_STAR, dd)
        out[i] = acc


def k_katsuura(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, k, n = Z.shape[0], d = Z.shape[1]
    cdef double prod, term, tk, scale = 10.0 / (d * d)
    cdef double expo = 10.0 / pow(<double>d, 1.2)
    cdef double[32] pow2
    for k in range(32):
        pow2[k] = pow(2.0, k + 1)
    for i in range(n):
        prod = 1.0
        for j in range(d):
            term = 0.0
            for k in range(32):
                tk = pow2[k] * Z[i, j]
                term += fabs(tk - floor(tk + 0.5)) / pow2[k]
            prod *= pow(1.0 + (j + 1) * term, expo)
        out[i] = scale * prod - scale


def k_lunacek(double[:, ::1] Z, double[::1] out):
    # Z arrives centered on the first valley (optimum at Z == mu0).
    cdef Py_ssize_t i, j, n = Z.shape[0], d = Z.shape[1]
    cdef double mu0 = 2.5
    cdef double spar = 1.0 - 1.0 / (2.0 * sqrt(d + 20.0) - 8.2)
    cdef double mu1 = -sqrt((mu0 * mu0 - 1.0) / spar)
    cdef double a0, a1, cs, w
    for i in range(n):
        a0 = 0.0
        a1 = 0.0
        cs = 0.0
        for j in range(d):
            w = Z[i, j]
            a0 += (w - mu0) * (w - mu0)
            a1 += (w - mu1) * (w - mu1)
            cs += 1.0 - cos(TWO_PI * (w - mu0))
        a1 = <double>d + spar * a1
        out[i] = (a0 if a0 < a1 else a1) + 10.0 * cs


def k_exp_griewank_rosenbrock(double[:, ::1] Z, double[::1] out):
    # Z arrives shifted so the optimum sits at all-ones.
    cdef Py_ssize_t i, j, jn, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, t, t1, t2
    for i in range(n):
        acc = 0.0
        for j in range(d):
            jn = (j + 1) % d
            t1 = Z[i, j] * Z[i, j] - Z[i, jn]
            t2 = Z[i, j] - 1.0
            t = 100.0 * t1 * t1 + t2 * t2
            acc += t * t / 4000.0 - cos(t) + 1.0
        out[i] = acc


def k_exp_schaffer_f6(double[:, ::1] Z, double[::1] out):
    cdef Py_ssize_t i, j, jn, n = Z.shape[0], d = Z.shape[1]
    cdef double acc, ss, sn, den
    for i in range(n):
        acc = 0.0
        for j in range(d):
            jn = (j + 1) % d
            ss = Z[i, j] * Z[i, j] + Z[i, jn] * Z[i, jn]
            sn = sin(sqrt(ss))
            den = 1.0 + 0.001 * ss
            acc += 0.5 + (sn * sn - 0.5) / (den * den)
        out[i] = acc
