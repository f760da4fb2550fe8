# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled weight-histogram kernel.

Walks codeword indices ``start <= i < stop`` in odometer order (last generator
row least significant). Each step adds one generator row; a digit rolling over
from p-1 to 0 adds its row once more, which returns it to zero because
p * row = 0 over F_p.
"""

from libc.stdint cimport int64_t, uint16_t
from libc.stdlib cimport malloc, free


def weight_histogram(
    const uint16_t[:, ::1] gen,
    const uint16_t[:, ::1] add,
    const int64_t[::1] weight,
    int p,
    long long start,
    long long stop,
    int64_t[::1] hist,
):
    cdef Py_ssize_t K = gen.shape[0]
    cdef Py_ssize_t n = gen.shape[1]
    cdef Py_ssize_t Q = add.shape[0]
    cdef Py_ssize_t r, x, d
    cdef long long idx, rem
    cdef int64_t w
    cdef uint16_t c
    cdef int *digits
    cdef uint16_t *cur
    cdef const uint16_t *addp = &add[0, 0]
    cdef const uint16_t *row

    if stop <= start:
        return
    digits = <int *> malloc(K * sizeof(int))
    cur = <uint16_t *> malloc(n * sizeof(uint16_t))
    if digits == NULL or cur == NULL:
        free(digits)
        free(cur)
        raise MemoryError()

    with nogil:
        rem = start
        for r in range(K - 1, -1, -1):
            digits[r] = <int> (rem % p)
            rem = rem // p
        for x in range(n):
            cur[x] = 0
        for r in range(K):
            row = &gen[r, 0]
            for d in range(digits[r]):
                for x in range(n):
                    cur[x] = addp[cur[x] * Q + row[x]]
        w = 0
        for x in range(n):
            w += weight[cur[x]]
        hist[w] += 1

        idx = start + 1
        while idx < stop:
            r = K - 1
            while digits[r] == p - 1:
                digits[r] = 0
                row = &gen[r, 0]
                for x in range(n):
                    cur[x] = addp[cur[x] * Q + row[x]]
                r -= 1
            digits[r] += 1
            row = &gen[r, 0]
            w = 0
            for x in range(n):
                c = addp[cur[x] * Q + row[x]]
                cur[x] = c
                w += weight[c]
            hist[w] += 1
            idx += 1

    free(digits)
    free(cur)
