# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled layer-peeling kernels.  Semantics mirror binlab._kernels_py."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def peel_deg(indptr, indices, is_white, int s, int t):
    cdef cnp.int32_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef cnp.int32_t[:] ix = np.ascontiguousarray(indices, dtype=np.int32)
    cdef cnp.uint8_t[:] white = np.ascontiguousarray(is_white, dtype=np.uint8)
    cdef int n = ip.shape[0] - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] layer_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[:] layer = layer_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] deg_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] deg = deg_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] alive_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] alive = alive_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] rem_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] removed = rem_arr
    cdef int v, u, j, i, lay, n_alive, n_removed, keep, thr

    for v in range(n):
        deg[v] = ip[v + 1] - ip[v]
        alive[v] = v
    n_alive = n
    lay = 0
    while n_alive > 0:
        lay += 1
        n_removed = 0
        for i in range(n_alive):
            v = alive[i]
            thr = s if white[v] else t
            if deg[v] <= thr:
                layer[v] = lay
                removed[n_removed] = v
                n_removed += 1
        if n_removed == 0:
            raise RuntimeError("peel_deg stalled (not a forest?)")
        for i in range(n_removed):
            v = removed[i]
            for j in range(ip[v], ip[v + 1]):
                u = ix[j]
                if layer[u] == 0:
                    deg[u] -= 1
        keep = 0
        for i in range(n_alive):
            v = alive[i]
            if layer[v] == 0:
                alive[keep] = v
                keep += 1
        n_alive = keep
    return layer_arr.tolist()


def peel_arc(indptr, indices, int r, int delta):
    cdef cnp.int32_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef cnp.int32_t[:] ix = np.ascontiguousarray(indices, dtype=np.int32)
    cdef int n = ip.shape[0] - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] layer_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[:] layer = layer_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] reason_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[:] reason = reason_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] deg_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] deg = deg_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] alive_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] alive = alive_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] rem_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] removed = rem_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:] queue = queue_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cov_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[:] cov_at = cov_arr  # last layer at which node was covered
    cdef int v, u, j, i, lay, n_alive, n_removed, keep
    cdef int q_lo, q_hi, level_end, depth

    for v in range(n):
        deg[v] = ip[v + 1] - ip[v]
        alive[v] = v
    n_alive = n
    lay = 0
    while n_alive > 0:
        lay += 1
        q_lo = 0
        q_hi = 0
        for i in range(n_alive):
            v = alive[i]
            if deg[v] >= delta:
                queue[q_hi] = v
                q_hi += 1
                cov_at[v] = lay
        depth = 0
        while depth < r and q_lo < q_hi:
            level_end = q_hi
            while q_lo < level_end:
                v = queue[q_lo]
                q_lo += 1
                for j in range(ip[v], ip[v + 1]):
                    u = ix[j]
                    if layer[u] == 0 and cov_at[u] != lay:
                        cov_at[u] = lay
                        queue[q_hi] = u
                        q_hi += 1
            depth += 1
        n_removed = 0
        for i in range(n_alive):
            v = alive[i]
            if deg[v] <= 1:
                layer[v] = lay
                reason[v] = 1
                removed[n_removed] = v
                n_removed += 1
            elif cov_at[v] != lay:
                layer[v] = lay
                reason[v] = 2
                removed[n_removed] = v
                n_removed += 1
        if n_removed == 0:
            raise RuntimeError("peel_arc stalled (not a forest?)")
        for i in range(n_removed):
            v = removed[i]
            for j in range(ip[v], ip[v + 1]):
                u = ix[j]
                if layer[u] == 0:
                    deg[u] -= 1
        keep = 0
        for i in range(n_alive):
            v = alive[i]
            if layer[v] == 0:
                alive[keep] = v
                keep += 1
        n_alive = keep
    return layer_arr.tolist(), reason_arr.tolist()
