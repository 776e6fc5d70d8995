"""X-form Yang-Baxter R-matrices, their entangling power and a Yangian-symmetric Hamiltonian."""

from .linalg import EigenSystem, hermitian_eig
from .xform import (
    HalfInt,
    PhaseTable,
    RMatrix,
    XFormM,
    build_m,
    build_m_partner,
    build_r,
    family_4x4,
    family_6x6,
    family_8x8,
    make_phase_table,
    validate_phase_table,
)

__version__ = "0.1.0"
