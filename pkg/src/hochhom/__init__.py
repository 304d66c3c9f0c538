"""Higher Hochschild homology and cohomology of commutative algebras over Q."""

from .algebra import FDAlgebra, FDModule, GradedAlgebra, SizeBudgetExceeded
from .exactlin import ChainComplex, RatMatrix, Subspace
from .hochschild import (
    chain_complex,
    cochain_complex,
    cohomology,
    graded_chain_complex,
    graded_homology,
    homology,
    normalized_complex,
)
from .homalg import degeneration_check, ext, free_resolution
from .simplicial import FinSimpSet

__version__ = "0.1.0"
