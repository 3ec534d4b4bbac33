# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef Py_ssize_t idx_t
ctypedef const Py_ssize_t[:, ::1] table_t
ctypedef const Py_ssize_t[::1] vec_t
ctypedef const unsigned char[:, ::1] rel_t


def set_product(table_t mul, vec_t inv, table_t meet, table_t join, idx_t bottom, vec_t left, vec_t right):
    cdef idx_t n = left.shape[0], x, y, acc
    out = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] o = out
    for x in range(n):
        acc = bottom
        for y in range(n):
            acc = join[acc, meet[left[y], right[mul[inv[y], x]]]]
        o[x] = acc
    return out


def conjugate_by_subset(table_t mul, vec_t inv, table_t meet, table_t join, idx_t bottom, vec_t theta, vec_t eta):
    cdef idx_t n = eta.shape[0], x, z, y, acc
    out = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] o = out
    for x in range(n):
        acc = bottom
        for z in range(n):
            y = mul[mul[inv[z], x], z]
            acc = join[acc, meet[eta[y], theta[z]]]
        o[x] = acc
    return out


def subgroup_violation(table_t mul, vec_t inv, table_t meet, rel_t leq, vec_t v):
    cdef idx_t n = v.shape[0], x, y
    for x in range(n):
        if v[inv[x]] != v[x]:
            return (x, -1)
    for x in range(n):
        for y in range(n):
            if not leq[meet[v[x], v[y]], v[mul[x, y]]]:
                return (x, y)
    return (-1, -1)


def normal_violation(table_t mul, vec_t inv, table_t meet, rel_t leq, vec_t eta, vec_t mu):
    cdef idx_t n = eta.shape[0], x, y
    for x in range(n):
        for y in range(n):
            if not leq[meet[eta[x], mu[y]], eta[mul[mul[y, x], inv[y]]]]:
                return (x, y)
    return (-1, -1)


def normalizer_conjugacy(table_t mul, vec_t inv, table_t meet, table_t join, rel_t leq, idx_t bottom, vec_t eta, vec_t mu):
    cdef idx_t n = eta.shape[0], m = meet.shape[0], x, g, a, acc, ix
    cdef bint ok
    out = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] o = out
    moved_arr = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] moved = moved_arr
    for x in range(n):
        ix = inv[x]
        for g in range(n):
            moved[g] = eta[mul[mul[x, g], ix]]
        acc = bottom
        for a in range(m):
            if not leq[a, mu[x]]:
                continue
            ok = True
            for g in range(n):
                if not leq[meet[a, moved[g]], eta[g]]:
                    ok = False
                    break
            if ok:
                acc = join[acc, a]
        o[x] = acc
    return out


def normalizer_setproduct(table_t mul, vec_t inv, table_t meet, table_t join, rel_t leq, idx_t bottom, vec_t eta, vec_t mu):
    cdef idx_t n = eta.shape[0], m = meet.shape[0], x, z, a, acc, ix
    cdef bint ok
    out = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] o = out
    left_arr = np.empty(n, dtype=np.intp)
    right_arr = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] left = left_arr
    cdef Py_ssize_t[::1] right = right_arr
    for x in range(n):
        ix = inv[x]
        for z in range(n):
            left[z] = eta[mul[ix, z]]
            right[z] = eta[mul[z, ix]]
        acc = bottom
        for a in range(m):
            if not leq[a, mu[x]]:
                continue
            ok = True
            for z in range(n):
                if meet[a, left[z]] != meet[a, right[z]]:
                    ok = False
                    break
            if ok:
                acc = join[acc, a]
        o[x] = acc
    return out


def subgroup_closure(table_t mul, vec_t inv, table_t meet, table_t join, vec_t vals):
    cdef idx_t n = vals.shape[0], x, y, p, j
    cdef bint changed = True
    out = np.array(vals, dtype=np.intp)
    cdef Py_ssize_t[::1] v = out
    while changed:
        changed = False
        for x in range(n):
            j = join[v[inv[x]], v[x]]
            if j != v[inv[x]]:
                v[inv[x]] = j
                changed = True
        for x in range(n):
            for y in range(n):
                p = mul[x, y]
                j = join[v[p], meet[v[x], v[y]]]
                if j != v[p]:
                    v[p] = j
                    changed = True
    return out


cdef bint _consistent(table_t mul, vec_t inv, table_t meet, rel_t leq, Py_ssize_t[::1] val, idx_t x):
    cdef idx_t y, p, w, vx = val[x], vy
    for y in range(x + 1):
        vy = val[y]
        p = mul[x, y]
        if p <= x and not leq[meet[vx, vy], val[p]]:
            return False
        p = mul[y, x]
        if p <= x and not leq[meet[vy, vx], val[p]]:
            return False
        w = mul[inv[y], x]
        if w <= x and not leq[meet[vy, val[w]], vx]:
            return False
    return True


def subgroups_between(table_t mul, vec_t inv, table_t meet, rel_t leq, vec_t lower, vec_t upper, Py_ssize_t limit):
    cdef idx_t n = lower.shape[0], m = meet.shape[0], x, a, ix
    found = []
    if n == 0:
        return found
    val_arr = np.zeros(n, dtype=np.intp)
    pos_arr = np.full(n, -1, dtype=np.intp)  # next candidate lattice index to try at depth x
    cdef Py_ssize_t[::1] val = val_arr
    cdef Py_ssize_t[::1] pos = pos_arr
    x = 0
    # iterative depth-first search; pos[x] scans lattice indices in order
    while x >= 0:
        ix = inv[x]
        a = pos[x] + 1
        while a < m:
            if leq[lower[x], a] and leq[a, upper[x]] and (ix >= x or a == val[ix]):
                val[x] = a
                if _consistent(mul, inv, meet, leq, val, x):
                    break
            a += 1
        if a >= m:
            pos[x] = -1
            x -= 1
            continue
        pos[x] = a
        if x == n - 1:
            found.append(np.array(val_arr, copy=True))
            if limit > 0 and len(found) >= limit:
                return found
        else:
            x += 1
    return found
