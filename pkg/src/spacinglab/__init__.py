"""Eigenvalue-spacing laws, Gaussian-ensemble Monte Carlo, gamma fitting and
gamma-manifold geometry."""

from .errors import (DegenerateSampleError, DomainError, ParseError, SolverError,
                     SpacingLabError, UnsupportedLawError)
from .laws import EnsembleClass
from .samples import SpacingSample

__version__ = "0.1.0"
