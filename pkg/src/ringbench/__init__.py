"""Finite rings with involution, Peirce decompositions and reverse-derivable maps."""
from .maps import RingMap, build_inner_wp, check_identity, reduce_delta
from .peirce import (
    AntiAutomorphism,
    PeirceFrame,
    check_M1,
    check_M2,
    check_M3,
    component_of,
    find_idempotents,
    is_prime,
    peirce_project,
    validate_antiautomorphism,
)
from .ring import FiniteRing, RingError, SchemaError, make_dual, make_m2, make_zmod, validate_ring
from .search import SearchConfig, enumerate_reverse_maps, find_nonadditive_witness, naive_enumerate
from .verify import verify_theorem

__version__ = "0.1.0"
