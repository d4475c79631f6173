# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernel; same contract as ``_bnb_py.bnb_search``."""
import time

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def bnb_search(customer, terminal, ptr, idx, int n_customers, int n_remaining,
               int64_t lam_num, int64_t lam_den, int64_t node_limit=-1, double time_limit=-1.0):
    cdef int[::1] cust = np.ascontiguousarray(customer, dtype=np.intc)
    cdef int[::1] term = np.ascontiguousarray(terminal, dtype=np.intc)
    cdef int[::1] p = np.ascontiguousarray(ptr, dtype=np.intc)
    cdef int[::1] ix = np.ascontiguousarray(idx, dtype=np.intc)
    cdef int H = cust.shape[0]

    cdef int[::1] assigned = np.full(max(n_remaining, 1), -1, dtype=np.intc)
    cdef int[::1] refs = np.zeros(max(n_remaining, 1), dtype=np.intc)
    cdef char[::1] used = np.zeros(max(n_customers, 1), dtype=np.int8)
    cdef int64_t[::1] seen = np.zeros(max(n_customers, 1), dtype=np.int64)
    cdef char[::1] chosen = np.zeros(max(H, 1), dtype=np.int8)
    cdef char[::1] state = np.zeros(max(H, 1), dtype=np.int8)
    cdef char[::1] best_sel = np.zeros(max(H, 1), dtype=np.int8)

    cdef int64_t n = 0, m = 0, val, best_val = 0, nodes = 0, stamp = 0, ub
    cdef bint have_best = False, aborted = False, ok, has_deadline = time_limit > 0
    cdef double deadline = time.perf_counter() + time_limit if time_limit > 0 else 0.0
    cdef int d = 0, s, k, j, c, t, a, r

    while True:
        if d == H:
            val = n * lam_den - m * lam_num
            if not have_best or val > best_val:
                best_val = val
                have_best = True
                for k in range(H):
                    best_sel[k] = chosen[k]
            d -= 1
            if d < 0:
                break
            continue
        s = state[d]
        if s == 0:
            nodes += 1
            if node_limit >= 0 and nodes > node_limit:
                aborted = True
                break
            if has_deadline and (nodes & 1023) == 0 and time.perf_counter() > deadline:
                aborted = True
                break
            if have_best:
                stamp += 1
                ub = 0
                for k in range(d, H):
                    c = cust[k]
                    if used[c] or seen[c] == stamp:
                        continue
                    t = term[k]
                    ok = True
                    for j in range(p[k], p[k + 1]):
                        a = assigned[ix[j]]
                        if a != -1 and a != t:
                            ok = False
                            break
                    if ok:
                        seen[c] = stamp
                        ub += 1
                if (n + ub) * lam_den - m * lam_num <= best_val:
                    d -= 1
                    if d < 0:
                        break
                    continue
            state[d] = 1
            # try to select path d
            c = cust[d]
            ok = not used[c]
            if ok:
                t = term[d]
                for j in range(p[d], p[d + 1]):
                    a = assigned[ix[j]]
                    if a != -1 and a != t:
                        ok = False
                        break
            if ok:
                for j in range(p[d], p[d + 1]):
                    r = ix[j]
                    if refs[r] == 0:
                        assigned[r] = t
                        m += 1
                    refs[r] += 1
                used[c] = 1
                n += 1
                chosen[d] = 1
                d += 1
                continue
            s = 1
        if s == 1:
            if chosen[d]:
                for j in range(p[d], p[d + 1]):
                    r = ix[j]
                    refs[r] -= 1
                    if refs[r] == 0:
                        assigned[r] = -1
                        m -= 1
                used[cust[d]] = 0
                n -= 1
                chosen[d] = 0
            state[d] = 2
            d += 1
            continue
        state[d] = 0
        d -= 1
        if d < 0:
            break

    sel = [0] * H
    cdef int64_t bn = 0
    if have_best:
        for k in range(H):
            sel[k] = best_sel[k]
            bn += best_sel[k]
    touched = set()
    for k in range(H):
        if sel[k]:
            for j in range(p[k], p[k + 1]):
                touched.add(ix[j])
    return sel, bn, len(touched), nodes, aborted
