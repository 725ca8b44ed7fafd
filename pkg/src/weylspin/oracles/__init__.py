"""Independent matrix realizations used to validate the abstract torus model.

Submodules: structure constants with the extraspecial-pair convention, the
adjoint representation oracle, special linear and symplectic realizations,
and Clifford-algebra spin groups for small B and D ranks.
"""

from .chevalley import StructureConstants, compute_structure_constants
from .adjoint import AdjointRealization, RelationReport, verify_relations
from .classical import MatrixRealization, classical_spin_check, sl_realization, sp_realization
from .clifford import SpinRealization, clifford_spin_check, spin_realization

__all__ = [
    "StructureConstants",
    "compute_structure_constants",
    "AdjointRealization",
    "RelationReport",
    "verify_relations",
    "MatrixRealization",
    "classical_spin_check",
    "sl_realization",
    "sp_realization",
    "SpinRealization",
    "clifford_spin_check",
    "spin_realization",
]
