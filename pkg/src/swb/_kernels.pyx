# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the lattice, log|Delta| and Fourier-Bessel loops."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, log1p, sqrt, ceil, floor, fabs, M_PI

cnp.import_array()


def siegel_sum(double x, double y, double u, double v, double shift, double kappa,
               double bound, double r2, double r3):
    cdef double k = kappa / (y * y)
    cdef double zz = x * x + y * y
    cdef long l3, n2, l1, lo, hi, n3 = <long>floor(r3 + 1e-9)
    cdef long n2_lo = <long>ceil(-r2 - shift - 1e-9)
    cdef long n2_hi = <long>floor(r2 - shift + 1e-9)
    cdef double l2, c, B, C, disc, sq, d, maj, q4, amp, ang
    cdef double acc_re[4]
    cdef double acc_im[4]
    cdef double comp_re[4]
    cdef double comp_im[4]
    cdef double t, yk
    cdef int cls, i
    cdef long count = 0
    for i in range(4):
        acc_re[i] = 0.0
        acc_im[i] = 0.0
        comp_re[i] = 0.0
        comp_im[i] = 0.0
    for l3 in range(-n3, n3 + 1):
        for n2 in range(n2_lo, n2_hi + 1):
            l2 = n2 + shift
            c = 2.0 * l2 * x - l3 * zz
            B = 2.0 * l3 + 2.0 * k * c
            C = 2.0 * l2 * l2 + k * c * c - bound
            disc = B * B - 4.0 * k * C
            if disc < 0:
                continue
            sq = sqrt(disc)
            lo = <long>ceil((-B - sq) / (2.0 * k) - 1e-9)
            hi = <long>floor((-B + sq) / (2.0 * k) + 1e-9)
            for l1 in range(lo, hi + 1):
                d = l1 + c
                maj = 2.0 * l2 * l2 + 2.0 * l1 * l3 + k * d * d
                if maj > bound * (1.0 + 1e-14):
                    continue
                count += 1
                q4 = 4.0 * (l2 * l2 + l1 * l3)
                q4 = floor(q4 + 0.5)
                if l1 == 0 and l3 == 0 and l2 == 0.0:
                    cls = 0
                elif q4 == 0:
                    cls = 1
                elif q4 > 0:
                    cls = 2
                else:
                    cls = 3
                amp = exp(-M_PI * v * maj)
                ang = 2.0 * M_PI * (q4 * 0.25) * u
                # Kahan-compensated accumulation per class
                yk = amp * cos(ang) - comp_re[cls]
                t = acc_re[cls] + yk
                comp_re[cls] = (t - acc_re[cls]) - yk
                acc_re[cls] = t
                yk = amp * sin(ang) - comp_im[cls]
                t = acc_im[cls] + yk
                comp_im[cls] = (t - acc_im[cls]) - yk
                acc_im[cls] = t
    return (complex(acc_re[0], acc_im[0]), complex(acc_re[1], acc_im[1]),
            complex(acc_re[2], acc_im[2]), complex(acc_re[3], acc_im[3]), count)


def log_delta(x, y):
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(np.ravel(x), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ya = np.ascontiguousarray(np.ravel(y), dtype=np.float64)
    cdef Py_ssize_t m = xa.shape[0], i
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double acc, r, yy
    cdef long n, n_max
    for i in range(m):
        yy = ya[i]
        n_max = <long>ceil(42.0 / (2.0 * M_PI * yy)) + 1
        acc = 0.0
        for n in range(1, n_max + 1):
            r = exp(-2.0 * M_PI * n * yy)
            acc += log1p(r * r - 2.0 * r * cos(2.0 * M_PI * n * xa[i]))
        out[i] = -2.0 * M_PI * yy + 12.0 * acc
    return out.reshape(np.shape(x))


def eis_fourier(x, y, coeff, cosh_nu, cosh_t, weights):
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(np.ravel(x), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ya = np.ascontiguousarray(np.ravel(y), dtype=np.float64)
    cdef cnp.ndarray[double complex, ndim=1] co = np.ascontiguousarray(coeff, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=1] wc = np.ascontiguousarray(weights * cosh_nu, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] ct = np.ascontiguousarray(cosh_t, dtype=np.float64)
    cdef Py_ssize_t m = xa.shape[0], nt = ct.shape[0], nc = co.shape[0], i, j, n
    cdef cnp.ndarray[double complex, ndim=1] out = np.zeros(m, dtype=np.complex128)
    cdef double X, e
    cdef double complex kv, acc
    for i in range(m):
        acc = 0.0
        for n in range(1, nc + 1):
            X = 2.0 * M_PI * n * ya[i]
            kv = 0.0
            for j in range(nt):
                e = exp(-X * ct[j])
                if e == 0.0:
                    break
                kv = kv + e * wc[j]
            acc = acc + co[n - 1] * kv * cos(2.0 * M_PI * n * xa[i])
        out[i] = acc
    return out.reshape(np.shape(x))
