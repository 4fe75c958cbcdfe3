"""Regular dual, coadjoint actions of the algebra and the group, isotropy."""

from .dual import (
    CurrentElement,
    Density,
    DensityVector,
    coad_algebra,
    current_bracket,
    density_act,
    mode_current,
    pairing,
)
from .grid import DEFAULT_GRID, GridFunction
from .group import (
    Diffeo,
    GridDensity,
    GroupElement,
    NonConstantRotation,
    NotADiffeomorphism,
    coad_group,
    group_inv,
    group_mul,
    linearize_check,
    schwarzian,
)
from .isotropy import isotropy_solve

__all__ = [
    "DEFAULT_GRID",
    "CurrentElement",
    "Density",
    "DensityVector",
    "Diffeo",
    "GridDensity",
    "GridFunction",
    "GroupElement",
    "NonConstantRotation",
    "NotADiffeomorphism",
    "coad_algebra",
    "coad_group",
    "current_bracket",
    "density_act",
    "group_inv",
    "group_mul",
    "isotropy_solve",
    "linearize_check",
    "mode_current",
    "pairing",
    "schwarzian",
]
