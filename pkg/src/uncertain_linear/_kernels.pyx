# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernels; drop-in twins of ``_kernels_py``.

Draw layout and arithmetic match the pure-Python module exactly, so both
backends return bit-identical arrays for the same arguments.
"""

import numpy as np
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL
cdef double TO_UNIT = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


cdef inline uint64_t trial_key(uint64_t seed, uint64_t trial) nogil:
    return mix64(mix64(seed) + (trial + 1) * GAMMA)


cdef inline uint64_t draw(uint64_t key, uint64_t counter) nogil:
    return mix64(key + (counter + 1) * GAMMA)


cdef inline double unit(uint64_t x) nogil:
    return <double>(x >> 11) * TO_UNIT


cdef void sample(uint64_t key, uint64_t offset, int N, int k,
                 int* perm, char* member) nogil:
    cdef int i, j, tmp
    cdef uint64_t x
    for i in range(N):
        perm[i] = i
        member[i] = 0
    for i in range(k):
        x = draw(key, offset + i)
        j = i + <int>(((x >> 32) * <uint64_t>(N - i)) >> 32)
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
    for i in range(k):
        member[perm[i]] = 1


def mc_trials(int N, int na, double pa, int nb, double pb, int trials, seed):
    cdef uint64_t useed = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    conj_n_arr = np.empty(trials)
    conj_p_arr = np.empty(trials)
    disj_n_arr = np.empty(trials)
    disj_p_arr = np.empty(trials)
    cdef double[:] conj_n = conj_n_arr
    cdef double[:] conj_p = conj_p_arr
    cdef double[:] disj_n = disj_n_arr
    cdef double[:] disj_p = disj_p_arr
    cdef int* perm = <int*>malloc(N * sizeof(int))
    cdef char* in_a = <char*>malloc(N)
    cdef char* in_b = <char*>malloc(N)
    cdef int t, o, shared, both, positive, size
    cdef uint64_t key, base_a = 2 * <uint64_t>N, base_b = 3 * <uint64_t>N
    cdef bint out_a, out_b
    cdef double nan = float("nan")
    if perm == NULL or in_a == NULL or in_b == NULL:
        free(perm); free(in_a); free(in_b)
        raise MemoryError()
    try:
        with nogil:
            for t in range(trials):
                key = trial_key(useed, t)
                sample(key, 0, N, na, perm, in_a)
                sample(key, N, N, nb, perm, in_b)
                shared = 0
                both = 0
                positive = 0
                size = 0
                for o in range(N):
                    if not (in_a[o] or in_b[o]):
                        continue
                    size += 1
                    out_a = unit(draw(key, base_a + o)) < pa
                    out_b = unit(draw(key, base_b + o)) < pb
                    if out_a or out_b:
                        positive += 1
                    if in_a[o] and in_b[o]:
                        shared += 1
                        if out_a and out_b:
                            both += 1
                conj_n[t] = shared
                conj_p[t] = (<double>both) / shared if shared else nan
                disj_n[t] = size
                disj_p[t] = (<double>positive) / size if size else nan
    finally:
        free(perm)
        free(in_a)
        free(in_b)
    return conj_n_arr, conj_p_arr, disj_n_arr, disj_p_arr


def detector_trials(double bt, double bc, int ticks, int trials, seed):
    cdef uint64_t useed = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    out_arr = np.empty(trials)
    cdef double[:] out = out_arr
    cdef int t, k, hits
    cdef uint64_t key
    with nogil:
        for t in range(trials):
            key = trial_key(useed, t)
            hits = 0
            for k in range(ticks):
                if unit(draw(key, 2 * <uint64_t>k)) < bt and unit(draw(key, 2 * <uint64_t>k + 1)) < bc:
                    hits += 1
            out[t] = (<double>hits) / ticks
    return out_arr
