"""Rational quotient surfaces T = S/i and their K3 double covers.

Supported: the projective plane (main invariant (1,1,1)) and del Pezzo
surfaces of degree 1..8 presented as blow-ups of P^2 in 9-d points
(invariant (10-d, 10-d, 1)).  P^1 x P^1 is not supported.

Classes are integer tuples in the basis (H, E_1, ..., E_{9-d}).  The usual
presentation C = aH - sum b_i E_i therefore has coordinates (a, -b_1, ...);
use :meth:`SurfaceModel.divisor` and :meth:`SurfaceModel.ab` to convert.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import SurfaceError
from .lattice import GramLattice, Vector

PROJECTIVE_PLANE = "ProjectivePlane"
DEL_PEZZO = "DelPezzo"


@dataclass(frozen=True)
class SurfaceModel:
    kind: str
    degree: int  # K_T^2; 9 for the plane
    picard: GramLattice
    basis_names: tuple[str, ...]
    canonical: Vector
    branch: Vector
    nikulin: tuple[int, int, int]
    k3: GramLattice

    @property
    def rank(self) -> int:
        return self.picard.rank

    @property
    def name(self) -> str:
        return "p2" if self.kind == PROJECTIVE_PLANE else f"dp{self.degree}"

    @property
    def anticanonical(self) -> Vector:
        return tuple(-x for x in self.canonical)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return self.picard.pair(u, v)

    def square(self, u: Sequence[int]) -> int:
        return self.picard.pair(u, u)

    def divisor(self, a: int, b: Sequence[int] = ()) -> Vector:
        """Class of aH - sum b_i E_i."""
        if len(b) != self.rank - 1:
            raise SurfaceError(
                f"{self.name} needs {self.rank - 1} exceptional coefficients, got {len(b)}"
            )
        return (int(a),) + tuple(-int(x) for x in b)

    def ab(self, cls: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        """Inverse of :meth:`divisor`."""
        return cls[0], tuple(-x for x in cls[1:])

    def exceptional(self, i: int) -> Vector:
        """E_i, 1-based."""
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    @property
    def hyperplane(self) -> Vector:
        return (1,) + (0,) * (self.rank - 1)

    def describe(self, cls: Sequence[int]) -> str:
        a, b = self.ab(cls)
        terms = [f"{a}H"]
        for i, bi in enumerate(b, 1):
            if bi:
                terms.append(f"{'-' if bi > 0 else '+'} {abs(bi)}E{i}")
        return " ".join(terms)


def projective_plane() -> SurfaceModel:
    return SurfaceModel(
        kind=PROJECTIVE_PLANE,
        degree=9,
        picard=GramLattice.diagonal([1]),
        basis_names=("H",),
        canonical=(-3,),
        branch=(6,),
        nikulin=(1, 1, 1),
        k3=GramLattice.diagonal([2]),
    )


def del_pezzo(d: int) -> SurfaceModel:
    if not isinstance(d, int) or not 1 <= d <= 8:
        raise SurfaceError(f"del Pezzo degree must be in 1..8, got {d!r}")
    k = 9 - d
    canonical = (-3,) + (1,) * k
    return SurfaceModel(
        kind=DEL_PEZZO,
        degree=d,
        picard=GramLattice.diagonal([1] + [-1] * k),
        basis_names=("H",) + tuple(f"E{i}" for i in range(1, k + 1)),
        canonical=canonical,
        branch=tuple(-2 * x for x in canonical),
        nikulin=(10 - d, 10 - d, 1),
        k3=GramLattice.diagonal([2] + [-2] * k),
    )


def make_surface(name: str) -> SurfaceModel:
    """Parse ``"p2"`` or ``"dp1"`` .. ``"dp8"``."""
    key = name.strip().lower().replace(" ", "")
    if key in ("p2", "projectiveplane"):
        return projective_plane()
    if key in ("p1xp1", "p1p1", "quadric"):
        raise SurfaceError(
            "P1 x P1 (degree-8 del Pezzo that is not a blow-up of P2) is excluded: "
            "classes are presented in the blow-up basis H, E_i"
        )
    m = re.fullmatch(r"dp(-?\d+)", key)
    if not m:
        raise SurfaceError(f"unknown surface {name!r}; expected p2 or dp1..dp8")
    return del_pezzo(int(m.group(1)))


def supported_surfaces() -> list[SurfaceModel]:
    return [projective_plane()] + [del_pezzo(d) for d in range(1, 9)]


# ---------------------------------------------------------------------------
# fixed locus of the involution


@dataclass(frozen=True)
class FixedLocusDescription:
    shape: str  # "Empty" | "TwoEllipticCurves" | "GenusCurvePlusRationals"
    branch_self_intersection: int
    genus: int | None = None
    rational_count: int | None = None
    supported_model: bool = False


def fixed_locus_invariants(r: int, a: int, delta: int) -> FixedLocusDescription:
    """Shape of Fix(i) for main invariant (r, a, delta).

    No membership check against the 75 realizable triples is made;
    ``supported_model`` only flags triples that come from a SurfaceModel here.
    """
    if r < 0 or a < 0 or delta not in (0, 1):
        raise SurfaceError(f"not a realizable invariant: {(r, a, delta)}")
    supported = (r, a, delta) == (1, 1, 1) or (2 <= r <= 9 and a == r and delta == 1)
    b2 = 4 * (10 - r)
    if (r, a, delta) == (10, 10, 0):
        return FixedLocusDescription("Empty", b2, supported_model=supported)
    if (r, a, delta) == (10, 8, 0):
        return FixedLocusDescription("TwoEllipticCurves", b2, supported_model=supported)
    if (r + a) % 2:
        raise SurfaceError(f"not a realizable invariant: r + a odd in {(r, a, delta)}")
    g = 11 - (r + a) // 2
    k = (r - a) // 2
    if g < 0 or k < 0:
        raise SurfaceError(f"not a realizable invariant: genus {g}, rational curves {k}")
    return FixedLocusDescription("GenusCurvePlusRationals", b2, g, k, supported)


# ---------------------------------------------------------------------------
# numerical invariants of curves


def genus_of(T: SurfaceModel, C: Sequence[int]) -> int:
    """Arithmetic genus by adjunction, (C^2 + C.K)/2 + 1."""
    s = T.square(C) + T.pair(C, T.canonical)
    if s % 2:
        raise SurfaceError(f"class not characteristic-consistent: C^2 + C.K = {s} is odd")
    return s // 2 + 1


def covering_genus(T: SurfaceModel, C: Sequence[int]) -> int:
    """Genus of D = f^{-1}(C) on the K3 double cover."""
    return 2 * genus_of(T, C) - T.pair(C, T.canonical) - 1


@dataclass(frozen=True)
class LinearSystemDim:
    value: int
    exact: bool
    note: str = ""


def linear_system_dim(T: SurfaceModel, C: Sequence[int]) -> LinearSystemDim:
    """dim |C| for an effective class C.

    Exact when C.K < 0; otherwise the h^0(omega_T|_C) correction is unknown
    and ``value`` is the Riemann-Roch lower bound C^2 + 1 - g.
    """
    ck = T.pair(C, T.canonical)
    value = T.square(C) + 1 - genus_of(T, C)
    if ck < 0:
        return LinearSystemDim(value, True)
    if ck == 0:
        note = "C.K = 0: h^0(omega_T|_C) term unresolved"
    else:
        note = "C.K > 0: vanishing of h^1 not guaranteed"
    return LinearSystemDim(value, False, note)


def pullback_to_k3(T: SurfaceModel, C: Sequence[int]) -> Vector:
    """f^*C in the basis (f^*H, f^*E_1, ...) of NS(S); coordinates are unchanged."""
    if len(C) != T.rank:
        raise SurfaceError(f"class of length {len(C)} on a rank-{T.rank} surface")
    return tuple(int(x) for x in C)
