"""Pure-Python branch-and-bound kernel.

Reference implementation of the compiled kernel in ``_bnb.pyx``; both must
return identical results for identical input.
"""
from __future__ import annotations

import time


def bnb_search(customer, terminal, ptr, idx, n_customers, n_remaining, lam_num, lam_den, node_limit=-1, time_limit=-1.0):
    """Depth-first search over path selections.

    Paths are decided in index order, "select" before "skip", so the first
    optimum reached is the lexicographically greatest one; the incumbent is
    only replaced by strictly better leaves. Selecting a path assigns its
    interior elements to its terminal, and conflicts cut the branch.

    Values are kept scaled by ``lam_den``: ``n * lam_den - m * lam_num`` for
    ``n`` selected paths and ``m`` assigned elements.

    Returns ``(selection, n, m, nodes, aborted)``.
    """
    H = len(customer)
    assigned = [-1] * n_remaining
    refs = [0] * n_remaining
    used = [False] * n_customers
    chosen = [0] * H
    state = [0] * H  # 0 fresh, 1 inside "select" branch, 2 inside "skip" branch
    seen = [0] * n_customers
    stamp = 0

    n = m = 0
    best_sel = [0] * H
    best_val = 0
    have_best = False
    nodes = 0
    aborted = False
    deadline = time.perf_counter() + time_limit if time_limit > 0 else None

    def bound(d):
        nonlocal stamp
        stamp += 1
        ub = 0
        for k in range(d, H):
            c = customer[k]
            if used[c] or seen[c] == stamp:
                continue
            t = terminal[k]
            for j in range(ptr[k], ptr[k + 1]):
                a = assigned[idx[j]]
                if a != -1 and a != t:
                    break
            else:
                seen[c] = stamp
                ub += 1
        return ub

    def try_select(k):
        nonlocal n, m
        c = customer[k]
        if used[c]:
            return False
        t = terminal[k]
        for j in range(ptr[k], ptr[k + 1]):
            a = assigned[idx[j]]
            if a != -1 and a != t:
                return False
        for j in range(ptr[k], ptr[k + 1]):
            r = idx[j]
            if refs[r] == 0:
                assigned[r] = t
                m += 1
            refs[r] += 1
        used[c] = True
        n += 1
        return True

    def undo(k):
        nonlocal n, m
        for j in range(ptr[k], ptr[k + 1]):
            r = idx[j]
            refs[r] -= 1
            if refs[r] == 0:
                assigned[r] = -1
                m -= 1
        used[customer[k]] = False
        n -= 1

    d = 0
    while True:
        if d == H:
            val = n * lam_den - m * lam_num
            if not have_best or val > best_val:
                best_val, have_best = val, True
                best_sel = chosen[:]
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
            if deadline is not None and (nodes & 1023) == 0 and time.perf_counter() > deadline:
                aborted = True
                break
            if have_best and (n + bound(d)) * lam_den - m * lam_num <= best_val:
                d -= 1
                if d < 0:
                    break
                continue
            state[d] = 1
            if try_select(d):
                chosen[d] = 1
                d += 1
                continue
            s = 1
        if s == 1:
            if chosen[d]:
                undo(d)
                chosen[d] = 0
            state[d] = 2
            d += 1
            continue
        state[d] = 0
        d -= 1
        if d < 0:
            break

    if not have_best:
        best_sel = [0] * H
        best_val = 0
        bn = bm = 0
    else:
        bn = sum(best_sel)
        touched = set()
        for k in range(H):
            if best_sel[k]:
                touched.update(idx[ptr[k]:ptr[k + 1]])
        bm = len(touched)
    return best_sel, bn, bm, nodes, aborted
