"""Numerical certification of relative Prym varieties over K3 double covers
of rational surfaces."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConsistencyError,
    HomologyError,
    LatticeError,
    PositivityError,
    PrymError,
    SurfaceError,
)
from .surfaces import del_pezzo, make_surface, projective_plane  # noqa: E402
from .prym import hypothesis_report, prym_dimension, verdict  # noqa: E402

__all__ = [
    "ConsistencyError",
    "HomologyError",
    "LatticeError",
    "PositivityError",
    "PrymError",
    "SurfaceError",
    "del_pezzo",
    "hypothesis_report",
    "make_surface",
    "projective_plane",
    "prym_dimension",
    "verdict",
]
