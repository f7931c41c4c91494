# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation kernel; arithmetic mirrors ``_feistel_py`` exactly."""

import numpy as np

from libc.stdint cimport uint64_t

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL


cdef inline uint64_t _walk(uint64_t index, uint64_t n, uint64_t seed,
                           int rounds, int half_bits, uint64_t half_mask) nogil:
    cdef uint64_t v = index
    cdef uint64_t left, right, tmp, h
    cdef int r
    while True:
        left = v >> half_bits
        right = v & half_mask
        for r in range(rounds):
            h = right + seed + (<uint64_t> r) * GOLDEN
            h = (h ^ (h >> 30)) * MIX1
            h = (h ^ (h >> 27)) * MIX2
            h = h ^ (h >> 31)
            tmp = right
            right = left ^ (h & half_mask)
            left = tmp
        v = (left << half_bits) | right
        if v < n:
            return v


cdef int _domain_bits(uint64_t n) except -1:
    if n < 1:
        raise ValueError("permutation domain must hold at least one element")
    cdef int bits = 0
    cdef uint64_t m = n - 1
    while m:
        bits += 1
        m >>= 1
    if bits < 2:
        bits = 2
    if bits & 1:
        bits += 1
    return bits


def permute_one(seed, n, rounds, index):
    """Map one index through the keyed permutation on [0, n)."""
    cdef uint64_t n_c = n
    cdef int bits = _domain_bits(n_c)
    cdef int half_bits = bits >> 1
    cdef uint64_t half_mask = (<uint64_t> 1 << half_bits) - 1
    return _walk(<uint64_t> index, n_c, <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF),
                 <int> rounds, half_bits, half_mask)


def materialize(seed, n, rounds):
    """Evaluate the permutation for every index; returns a uint64 array."""
    cdef uint64_t n_c = n
    cdef int bits = _domain_bits(n_c)
    cdef int half_bits = bits >> 1
    cdef uint64_t half_mask = (<uint64_t> 1 << half_bits) - 1
    cdef uint64_t seed_c = seed & 0xFFFFFFFFFFFFFFFF
    cdef int rounds_c = rounds
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] view = out
    cdef uint64_t i
    with nogil:
        for i in range(n_c):
            view[i] = _walk(i, n_c, seed_c, rounds_c, half_bits, half_mask)
    return out
