"""geophase: a numerical laboratory for two-level geometric phases.

Complex two-component dynamics, its lossless rewrite as real coupled
oscillators, balanced gain/loss operators with their symmetry-breaking
transition, phase decompositions (total / dynamic / geometric and the
classical holonomy angle), and the gyrator-coupled circuit analogs.
"""

from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
