"""Polarized hyperbolic lattice arithmetic, censuses and certificates."""

from .lattice import (DivisorClass, GramLattice, PolarizedLattice,
                      basis_change_check, bordered_gram,
                      genus4_global_count, h0_lower_bound,
                      hodge_index_check, lm_invariants,
                      max_admissible_size, moduli_dimensions, rr_chi)
from .slices import CensusResult, enumerate_slice
from .certify import (Certificate, PencilCensus, certify_ample,
                      certify_bn_general, certify_nef, pencil_census)
from .chains import verify_fiber_chain_genus8
from .catalog import (BUILTIN_NAMES, builtin, dump_gram, load_gram, m6,
                      n_pencils, u3)

__all__ = [
    "DivisorClass", "GramLattice", "PolarizedLattice", "CensusResult",
    "Certificate", "PencilCensus",
    "enumerate_slice", "certify_ample", "certify_bn_general", "certify_nef",
    "pencil_census", "verify_fiber_chain_genus8",
    "rr_chi", "h0_lower_bound", "hodge_index_check", "basis_change_check",
    "moduli_dimensions", "genus4_global_count", "lm_invariants",
    "bordered_gram", "max_admissible_size",
    "builtin", "BUILTIN_NAMES", "dump_gram", "load_gram",
    "u3", "m6", "n_pencils",
]
