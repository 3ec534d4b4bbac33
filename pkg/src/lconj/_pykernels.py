"""Pure-Python kernels; the reference backend and the fallback when the
compiled extension is unavailable.

Every function takes dense index tables: ``mul`` (n x n), ``inv`` (n),
lattice ``meet``/``join`` (m x m), ``leq`` (m x m, 0/1) and L-subsets as
length-n arrays of lattice indices.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _lists(*arrays):
    return [np.asarray(a).tolist() for a in arrays]


def set_product(mul, inv, meet, join, bottom, left, right):
    mul, inv, meet, join, left, right = _lists(mul, inv, meet, join, left, right)
    n = len(left)
    out = [bottom] * n
    for x in range(n):
        acc = bottom
        for y in range(n):
            acc = join[acc][meet[left[y]][right[mul[inv[y]][x]]]]
        out[x] = acc
    return np.array(out, dtype=np.intp)


def conjugate_by_subset(mul, inv, meet, join, bottom, theta, eta):
    mul, inv, meet, join, theta, eta = _lists(mul, inv, meet, join, theta, eta)
    n = len(eta)
    out = [bottom] * n
    for x in range(n):
        acc = bottom
        for z in range(n):
            # x = z y z^-1  <=>  y = z^-1 x z
            y = mul[mul[inv[z]][x]][z]
            acc = join[acc][meet[eta[y]][theta[z]]]
        out[x] = acc
    return np.array(out, dtype=np.intp)


def subgroup_violation(mul, inv, meet, leq, vals):
    """First ``(x, y)`` with ``v(xy) < v(x) ^ v(y)``, or ``(x, -1)`` with
    ``v(x^-1) != v(x)``; ``(-1, -1)`` when ``vals`` is an L-subgroup."""
    mul, inv, meet, leq, v = _lists(mul, inv, meet, leq, vals)
    n = len(v)
    for x in range(n):
        if v[inv[x]] != v[x]:
            return (x, -1)
    for x in range(n):
        vx = v[x]
        row = mul[x]
        for y in range(n):
            if not leq[meet[vx][v[y]]][v[row[y]]]:
                return (x, y)
    return (-1, -1)


def normal_violation(mul, inv, meet, leq, eta, mu):
    """First ``(x, y)`` with ``eta(y x y^-1) < eta(x) ^ mu(y)``, else ``(-1, -1)``."""
    mul, inv, meet, leq, eta, mu = _lists(mul, inv, meet, leq, eta, mu)
    n = len(eta)
    for x in range(n):
        for y in range(n):
            if not leq[meet[eta[x]][mu[y]]][eta[mul[mul[y][x]][inv[y]]]]:
                return (x, y)
    return (-1, -1)


def normalizer_conjugacy(mul, inv, meet, join, leq, bottom, eta, mu):
    """Pointwise sup of ``a <= mu(x)`` with ``eta^{a_x} <= eta``."""
    mul, inv, meet, join, leq, eta, mu = _lists(mul, inv, meet, join, leq, eta, mu)
    n, m = len(eta), len(meet)
    out = [bottom] * n
    for x in range(n):
        ix = inv[x]
        # eta(x g x^-1) for every g
        moved = [eta[mul[mul[x][g]][ix]] for g in range(n)]
        acc = bottom
        for a in range(m):
            if not leq[a][mu[x]]:
                continue
            ma = meet[a]
            if all(leq[ma[moved[g]]][eta[g]] for g in range(n)):
                acc = join[acc][a]
        out[x] = acc
    return np.array(out, dtype=np.intp)


def normalizer_setproduct(mul, inv, meet, join, leq, bottom, eta, mu):
    """Pointwise sup of ``a <= mu(x)`` whose left and right cosets agree."""
    mul, inv, meet, join, leq, eta, mu = _lists(mul, inv, meet, join, leq, eta, mu)
    n, m = len(eta), len(meet)
    out = [bottom] * n
    for x in range(n):
        ix = inv[x]
        left = [eta[mul[ix][z]] for z in range(n)]
        right = [eta[mul[z][ix]] for z in range(n)]
        acc = bottom
        for a in range(m):
            if not leq[a][mu[x]]:
                continue
            ma = meet[a]
            if all(ma[left[z]] == ma[right[z]] for z in range(n)):
                acc = join[acc][a]
        out[x] = acc
    return np.array(out, dtype=np.intp)


def subgroup_closure(mul, inv, meet, join, vals):
    """Least fixpoint above ``vals`` of ``v(xy) |= v(x) ^ v(y)``, ``v(x^-1) |= v(x)``."""
    mul, inv, meet, join, v = _lists(mul, inv, meet, join, vals)
    n = len(v)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            j = join[v[inv[x]]][v[x]]
            if j != v[inv[x]]:
                v[inv[x]] = j
                changed = True
        for x in range(n):
            row = mul[x]
            for y in range(n):
                p = row[y]
                j = join[v[p]][meet[v[x]][v[y]]]
                if j != v[p]:
                    v[p] = j
                    changed = True
    return np.array(v, dtype=np.intp)


def subgroups_between(mul, inv, meet, leq, lower, upper, limit):
    """All L-subgroups ``t`` with ``lower <= t <= upper`` pointwise, by
    depth-first assignment in element order with pruning.

    Stops after ``limit`` results when ``limit > 0``.
    """
    mul, inv, meet, leq, lower, upper = _lists(mul, inv, meet, leq, lower, upper)
    n, m = len(lower), len(meet)
    cand = [[a for a in range(m) if leq[lower[x]][a] and leq[a][upper[x]]] for x in range(n)]
    val = [0] * n
    found = []

    def consistent(x):
        vx = val[x]
        for y in range(x + 1):
            vy = val[y]
            p = mul[x][y]
            if p <= x and not leq[meet[vx][vy]][val[p]]:
                return False
            p = mul[y][x]
            if p <= x and not leq[meet[vy][vx]][val[p]]:
                return False
            w = mul[inv[y]][x]  # y * w == x
            if w <= x and not leq[meet[vy][val[w]]][vx]:
                return False
        return True

    def dfs(x):
        if x == n:
            found.append(np.array(val, dtype=np.intp))
            return limit > 0 and len(found) >= limit
        ix = inv[x]
        choices = [val[ix]] if ix < x else cand[x]
        for a in choices:
            if ix < x and a not in cand[x]:
                continue
            val[x] = a
            if consistent(x) and dfs(x + 1):
                return True
        return False

    dfs(0)
    return found
