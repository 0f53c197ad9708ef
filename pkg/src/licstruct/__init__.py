"""Left-invariant complex structures on su(2), u(2) and their direct products."""

from .lie_core import LieAlgebraId, structure_constants
from .torsion import evaluate_torsion, is_complex_structure, torsion_equations

__all__ = [
    "LieAlgebraId",
    "evaluate_torsion",
    "is_complex_structure",
    "structure_constants",
    "torsion_equations",
]

__version__ = "0.1.0"
