"""Exact Borel-Weil-Bott computations certifying the failure of Bott
vanishing on adjoint and coadjoint partial flag varieties."""

from .bwb import CohomologyTable, bundle_cohomology, bwb_line
from .characters import (
    Character,
    SymmetryContext,
    decompose,
    exterior_power,
    irrep_character,
    weyl_dimension,
)
from .flag import (
    FlagVariety,
    MarkedDiagram,
    adjoint_marking,
    build_flag,
    coadjoint_marking,
    flag,
    lambda_q_tangent_e1,
)
from .rootsystem import (
    DynkinType,
    RootSystem,
    build_root_system,
    dominant_conjugate,
    inner_product,
    reflect,
    root_system,
)
from .verify import (
    Certificate,
    bott_vanishing_scan,
    certify,
    find_minimal_q,
    reproduce_tables,
    stabilization_scan,
)

__version__ = "0.1.0"
