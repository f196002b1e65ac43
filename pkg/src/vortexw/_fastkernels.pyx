# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled evaluation of the phase-gradient field on flat point arrays.

Mirrors grad_phi_field_numpy in _kernels.py; that function is the
reference implementation and the two are cross-checked in the test suite.
"""


cdef inline double complex _conj(double complex w) noexcept:
    return w.real - 1j * w.imag


def grad_phi_kernel(
    const double complex[::1] z,
    const double complex[::1] alpha,
    const double[::1] degrees,
    const double complex[::1] alpha0,
    const double[::1] degrees0,
    const double complex[::1] gprime,
    double complex[::1] out,
):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t k = alpha.shape[0]
    cdef Py_ssize_t k0 = alpha0.shape[0]
    cdef Py_ssize_t ng = gprime.shape[0]
    cdef Py_ssize_t i, j, m
    cdef double complex zz, s, dz, u, p
    cdef double mag
    for i in range(n):
        zz = z[i]
        s = 0.0
        for j in range(k):
            dz = zz - alpha[j]
            mag = dz.real * dz.real + dz.imag * dz.imag
            s = s + degrees[j] * dz / mag
            u = 1.0 - _conj(alpha[j]) * zz
            mag = u.real * u.real + u.imag * u.imag
            s = s - degrees[j] * alpha[j] * u / mag
        for j in range(k0):
            u = 1.0 - _conj(alpha0[j]) * zz
            mag = u.real * u.real + u.imag * u.imag
            s = s + 2.0 * degrees0[j] * alpha0[j] * u / mag
        if ng > 0:
            p = gprime[ng - 1]
            for m in range(ng - 2, -1, -1):
                p = p * zz + gprime[m]
            s = s - 1j * _conj(p)
        out[i] = s
