"""iurlab: information-utilization accounting for heuristic optimizers.

Closed-form utilized-over-acquired information ratios for eight classic
optimizers, an exact enumeration oracle that verifies the definition on
tiny finite problems, a style-alike 28-function benchmark suite, and a
desk-scale experiment harness with rank-sum statistics.
"""

from iurlab._backend import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
