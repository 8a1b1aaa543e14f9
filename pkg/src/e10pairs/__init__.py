"""Exact lattice arithmetic for root pairs in E10."""

from .arith import d_profile, factorize, kronecker, zeta_d
from .e10 import (
    PairRecord,
    complement_of_pair,
    construct_pairs,
    e10_gram,
    enumerate_roots,
    find_pair,
    is_prenilpotent,
    is_root,
    n_lower_bound,
    positivity_search,
    reflect,
)
from .errors import (
    DegenerateLattice,
    DomainError,
    E10PairsError,
    NotAnIsometry,
    NotSaturated,
    UnsupportedConfiguration,
)
from .genus import GenusSymbol, genus_exists, genus_of_gram, predicted_K_genus
from .interval import IntervalReal
from .lattice import discriminant_form, glue_lattice, orthogonal_complement, saturate, smith_normal_form
from .mass import MassValue, mass_closed_form, mass_stepwise, numeric_mass
from .padic import PAdicSymbol, jordan_symbol

__version__ = "0.1.0"
