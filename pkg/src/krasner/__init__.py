"""Finite commutative Krasner (m,n)-hyperrings and the phi-delta-S-primary
family of hyperideal classes."""
from ._backend import backend_name
from .classify import (
    FAILS,
    HOLDS,
    SAMPLED,
    VACUOUS,
    Classification,
    is_delta_primary,
    is_delta_S_primary,
    is_phi_delta_primary,
    is_phi_delta_S_primary,
    is_phi_S_primary,
    is_S_primary,
    is_strongly_phi_delta_S_primary,
    is_weakly_S_primary,
)
from .constructions import direct_product, localize
from .core import (
    AxiomError,
    ConstructionError,
    FiniteHyperring,
    InputError,
    KrasnerError,
    PreconditionError,
    from_ring,
    validate,
)
from .corpus import hyper3
from .docio import dump_structure, load_structure
from .ideals import Hyperideal, enumerate_hyperideals, radical
from .maps import get_map

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "Classification", "ConstructionError", "FAILS", "FiniteHyperring", "HOLDS", "Hyperideal",
    "InputError", "KrasnerError", "PreconditionError", "SAMPLED", "VACUOUS", "backend_name", "direct_product",
    "dump_structure", "enumerate_hyperideals", "from_ring", "get_map", "hyper3", "is_S_primary", "is_delta_S_primary",
    "is_delta_primary", "is_phi_S_primary", "is_phi_delta_S_primary", "is_phi_delta_primary",
    "is_strongly_phi_delta_S_primary", "is_weakly_S_primary", "load_structure", "localize", "radical", "validate",
]
