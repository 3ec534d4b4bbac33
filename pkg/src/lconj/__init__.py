"""Exact lattice-valued subgroup computations on finite groups."""

from .checks import Check
from .conjugacy import (
    conjugate_by_point,
    conjugate_by_subset,
    crisp_bridge,
    generated,
    is_maximal,
    l_subgroups_between,
    level_conjugate_equiv,
    maximal_conjugate_check,
)
from .errors import LConjError, ValidationError
from .group import FiniteGroup, GroupHom, build_group, build_hom, cyclic, dihedral, symmetric
from .kernels import BACKEND
from .lattice import Lattice, build_lattice
from .lsubset import (
    LPoint,
    LSubset,
    contains,
    image,
    is_l_subgroup,
    is_l_subgroup_of,
    is_normal_in,
    preimage,
    set_product,
)
from .normality import (
    coset,
    normality_via_conjugates,
    normalizer,
    normalizer_conjugacy,
    normalizer_conjugation_identity,
    normalizer_setproduct,
)

__version__ = "0.1.0"
