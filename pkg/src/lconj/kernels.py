"""Backend selection for the table-driven inner loops.

The compiled ``_ckernels`` extension is used when importable; otherwise the
pure-Python ``_pykernels`` module.  Setting ``LCONJ_PURE_PYTHON=1`` forces the
fallback.  The wrappers here take group/lattice objects and normalise arrays
to the dtypes both backends expect.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

if os.environ.get("LCONJ_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND


def _vec(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.intp)


def _rel(L) -> np.ndarray:
    return np.ascontiguousarray(L.leq, dtype=np.uint8)


def set_product(G, L, left, right, impl=None):
    impl = impl or _impl
    return impl.set_product(G.mul, G.inv, L.meet_table, L.join_table, L.bottom, _vec(left), _vec(right))


def conjugate_by_subset(G, L, theta, eta, impl=None):
    impl = impl or _impl
    return impl.conjugate_by_subset(G.mul, G.inv, L.meet_table, L.join_table, L.bottom, _vec(theta), _vec(eta))


def subgroup_violation(G, L, vals, impl=None):
    impl = impl or _impl
    return impl.subgroup_violation(G.mul, G.inv, L.meet_table, _rel(L), _vec(vals))


def normal_violation(G, L, eta, mu, impl=None):
    impl = impl or _impl
    return impl.normal_violation(G.mul, G.inv, L.meet_table, _rel(L), _vec(eta), _vec(mu))


def normalizer_conjugacy(G, L, eta, mu, impl=None):
    impl = impl or _impl
    return impl.normalizer_conjugacy(G.mul, G.inv, L.meet_table, L.join_table, _rel(L), L.bottom, _vec(eta), _vec(mu))


def normalizer_setproduct(G, L, eta, mu, impl=None):
    impl = impl or _impl
    return impl.normalizer_setproduct(G.mul, G.inv, L.meet_table, L.join_table, _rel(L), L.bottom, _vec(eta), _vec(mu))


def subgroup_closure(G, L, vals, impl=None):
    impl = impl or _impl
    return impl.subgroup_closure(G.mul, G.inv, L.meet_table, L.join_table, _vec(vals))


def subgroups_between(G, L, lower, upper, limit=0, impl=None):
    impl = impl or _impl
    return impl.subgroups_between(G.mul, G.inv, L.meet_table, _rel(L), _vec(lower), _vec(upper), int(limit))
