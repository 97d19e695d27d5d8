"""Computable staggered sheaves for a diagonal torus acting on affine space."""

from .derived import (
    FreeComplex,
    cohomology,
    dualize,
    free_resolution,
    iso_as_sum_of_cohomology,
    minimize,
    pullback_L,
    pushforward_closed,
    rhom,
    shift,
    shriek_R,
    tensorL,
)
from .errors import StaggerError
from .graded import GradedFree, GradedMatrix, PresentedModule, skyscraper, stratum_sheaf
from .perversity import Perversity
from .sstructure import OrbitRep
from .torus import Stratum, TorusSetup

__all__ = [
    "FreeComplex",
    "GradedFree",
    "GradedMatrix",
    "OrbitRep",
    "Perversity",
    "PresentedModule",
    "StaggerError",
    "Stratum",
    "TorusSetup",
    "cohomology",
    "dualize",
    "free_resolution",
    "iso_as_sum_of_cohomology",
    "minimize",
    "pullback_L",
    "pushforward_closed",
    "rhom",
    "shift",
    "shriek_R",
    "skyscraper",
    "stratum_sheaf",
    "tensorL",
]
