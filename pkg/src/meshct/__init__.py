"""Mesh algebras of Dynkin type, their module categories and equivariant cluster tilting."""

from .dynkin import DynkinSpec, UnsupportedType, folding_datum, parse_type
from .linalg import FP32003, RATIONALS, default_field, field_from_name
from .translation import build_window, fold
from .mesh import hammock, hom_dim
from .algebra import Representation, build_algebra, decompose, ext_dim, hom_space
from .matrices import LabeledIntMatrix, OrbitPartitionSpec, fold_matrix, fz_mutate, uw_factors
from .tilting import CTModule, start_module, mutate, exchange_matrix, homological_profile

__all__ = [
    "DynkinSpec", "UnsupportedType", "folding_datum", "parse_type",
    "FP32003", "RATIONALS", "default_field", "field_from_name",
    "build_window", "fold", "hammock", "hom_dim",
    "Representation", "build_algebra", "decompose", "ext_dim", "hom_space",
    "LabeledIntMatrix", "OrbitPartitionSpec", "fold_matrix", "fz_mutate", "uw_factors",
    "CTModule", "start_module", "mutate", "exchange_matrix", "homological_profile",
]
__version__ = "0.1.0"
