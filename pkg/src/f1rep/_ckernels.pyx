# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _pykernels for the reference semantics."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int64_t _find(int64_t[::1] parent, int64_t x) nogil:
    cdef int64_t root = x
    cdef int64_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def label_components(Py_ssize_t n, src, tgt):
    cdef int64_t[::1] s = np.ascontiguousarray(src, dtype=np.int64)
    cdef int64_t[::1] t = np.ascontiguousarray(tgt, dtype=np.int64)
    parent_arr = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    labels_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] labels = labels_arr
    relabel_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] relabel = relabel_arr
    cdef Py_ssize_t i, m = s.shape[0]
    cdef int64_t ra, rb, r, nlab = 0
    with nogil:
        for i in range(m):
            ra = _find(parent, s[i])
            rb = _find(parent, t[i])
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        for i in range(n):
            r = _find(parent, i)
            if relabel[r] < 0:
                relabel[r] = nlab
                nlab += 1
            labels[i] = relabel[r]
    return labels_arr, int(nlab)


def component_flags(pi1, pi2, comp, Py_ssize_t ncomp, out_v, in_v, out_w, in_w):
    cdef int64_t[::1] p1 = np.ascontiguousarray(pi1, dtype=np.int64)
    cdef int64_t[::1] p2 = np.ascontiguousarray(pi2, dtype=np.int64)
    cdef int64_t[::1] cc = np.ascontiguousarray(comp, dtype=np.int64)
    cdef uint64_t[::1] ov = np.ascontiguousarray(out_v, dtype=np.uint64)
    cdef uint64_t[::1] iv = np.ascontiguousarray(in_v, dtype=np.uint64)
    cdef uint64_t[::1] ow = np.ascontiguousarray(out_w, dtype=np.uint64)
    cdef uint64_t[::1] iw = np.ascontiguousarray(in_w, dtype=np.uint64)
    first_arr = np.full((4, ncomp), -1, dtype=np.int64)
    count_arr = np.zeros((4, ncomp), dtype=np.int64)
    cdef int64_t[:, ::1] first = first_arr
    cdef int64_t[:, ::1] count = count_arr
    cdef Py_ssize_t t, k, n = p1.shape[0]
    cdef int64_t v, w, c
    cdef uint64_t a, b, x, y
    cdef uint64_t f[4]
    with nogil:
        for t in range(n):
            v = p1[t]
            w = p2[t]
            a = ov[v]
            b = iv[v]
            x = ow[w]
            y = iw[w]
            if a == x and b == y:
                continue
            c = cc[t]
            f[0] = x & ~a
            f[1] = b & ~y
            f[2] = a & ~x
            f[3] = y & ~b
            for k in range(4):
                if f[k]:
                    if first[k, c] < 0:
                        first[k, c] = t
                    count[k, c] += __builtin_popcountll(f[k])
    return first_arr, count_arr
