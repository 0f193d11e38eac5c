"""Ordered Bratteli diagrams and their Vershik dynamics.

The package models finite-rank ordered Bratteli diagrams, the
lexicographic successor (Vershik) map on their path spaces, the factor
subshifts read through level truncations, compatibility depth between
orbits, the merge/split level-insertion surgery that lowers rank, and
the odometer-vs-expansive classification evidence, together with a
document format and the ``bvd`` command line.
"""

from .diagram import (
    FinitePath,
    Level,
    OrderedDiagram,
    RepeatSpec,
    ValidationReport,
    count_paths,
    iter_tower,
    path_rank,
    path_unrank,
    telescope,
    validate_and_profile,
)

__version__ = "0.1.0"

__all__ = [
    "FinitePath",
    "Level",
    "OrderedDiagram",
    "RepeatSpec",
    "ValidationReport",
    "count_paths",
    "iter_tower",
    "path_rank",
    "path_unrank",
    "telescope",
    "validate_and_profile",
    "__version__",
]
