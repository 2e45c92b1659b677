"""Very-ampleness on the quotient surface and on the K3 double cover.

On a del Pezzo surface very ampleness of C = aH - sum b_i E_i is decided by
di Rocco's inequalities.  On the K3 surface S the class D = f^*(nC) is
handled by a cascade: the n >= 3 rule for multiples of ample classes,
Reider's criterion when D^2 > 8, and Saint-Donat's criterion for
4 <= D^2 <= 8.  The Reider/Saint-Donat obstructions are searched for
exhaustively with an exact Fincke-Pohst enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt
from typing import Iterator, Sequence

from .effective import classify_positivity
from .errors import LatticeError, PositivityError
from .lattice import GramLattice, Vector, signature
from .surfaces import PROJECTIVE_PLANE, SurfaceModel, pullback_to_k3

VERY_AMPLE = "VeryAmple"
NOT_VERY_AMPLE = "NotVeryAmple"
NOT_DETERMINED = "NotDetermined"

# (D.E, E^2) strata of Reider's theorem; (3, 1) additionally needs D = 3E
REIDER_STRATA = ((0, -1), (0, -2), (1, 0), (1, -1), (2, 0), (3, 1))
SAINT_DONAT_STRATA = ((1, 0), (2, 0))


@dataclass(frozen=True)
class ReiderException:
    E: Vector
    d_dot_e: int
    e_squared: int

    @property
    def kind(self) -> str:
        return f"D.E={self.d_dot_e}, E^2={self.e_squared}"


@dataclass(frozen=True)
class VeryAmpleVerdict:
    status: str
    reason: str = ""
    witnesses: tuple[ReiderException, ...] = field(default=())

    def __post_init__(self):
        if self.status == VERY_AMPLE and self.witnesses:
            raise ValueError("a very ample verdict cannot carry obstruction witnesses")

    @property
    def very_ample(self) -> bool:
        return self.status == VERY_AMPLE


# ---------------------------------------------------------------------------
# quotient surface

# Per degree: (multiplier of a, weights on the b_i).  Each inequality reads
# m*a >= sum w_t b_{i_t} + 1 over distinct indices; with b sorted
# descending the binding choice pairs the largest weights with the largest b.
_DI_ROCCO = {
    8: [(1, (1,))],
    7: [(1, (1, 1))],
    6: [(1, (1, 1))],
    5: [(1, (1, 1))],
    4: [(1, (1, 1)), (2, (1,) * 5)],
    3: [(1, (1, 1)), (2, (1,) * 5)],
    2: [(1, (1, 1)), (2, (1,) * 5), (3, (2,) + (1,) * 6)],
    1: [
        (1, (1, 1)),
        (2, (1,) * 5),
        (3, (2,) + (1,) * 6),
        (4, (2,) * 3 + (1,) * 5),
        (5, (2,) * 6 + (1, 1)),
        (6, (3,) + (2,) * 7),
    ],
}


def di_rocco_inequalities(d: int) -> list[tuple[int, tuple[int, ...]]]:
    return list(_DI_ROCCO[d])


def very_ample_on_quotient(T: SurfaceModel, C: Sequence[int]) -> VeryAmpleVerdict:
    C = tuple(C)
    if T.kind == PROJECTIVE_PLANE:
        if C[0] >= 1:
            return VeryAmpleVerdict(VERY_AMPLE, f"O({C[0]}) on P2")
        return VeryAmpleVerdict(NOT_VERY_AMPLE, f"O({C[0]}) on P2 with degree < 1")
    d = T.degree
    mK = T.anticanonical
    if d == 1 and C in (mK, tuple(2 * x for x in mK)):
        which = "-K" if C == mK else "-2K"
        return VeryAmpleVerdict(NOT_DETERMINED, f"excluded by criterion statement ({which} on degree 1)")
    if d == 2 and C == mK:
        return VeryAmpleVerdict(NOT_VERY_AMPLE, "-K on degree 2: anticanonical map is a double cover of P2")
    a, b = T.ab(C)
    b = sorted(b, reverse=True)
    if b[-1] < 1:
        return VeryAmpleVerdict(NOT_VERY_AMPLE, f"b_min = {b[-1]} < 1")
    for mult, weights in _DI_ROCCO[d]:
        rhs = sum(w * x for w, x in zip(weights, b)) + 1
        if mult * a < rhs:
            return VeryAmpleVerdict(NOT_VERY_AMPLE, f"{mult}a = {mult * a} < {rhs} (weights {weights})")
    return VeryAmpleVerdict(VERY_AMPLE, f"all degree-{d} inequalities hold")


# ---------------------------------------------------------------------------
# short vectors


def _ldl(Q: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q = L diag(q) L^T, computed exactly; raises unless Q is positive definite."""
    n = len(Q)
    A = [[Fraction(x) for x in row] for row in Q]
    q = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if A[i][i] <= 0:
            raise LatticeError("quadratic form is not positive definite")
        q[i] = A[i][i]
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / q[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= mu[i][j] * q[i] * mu[i][k]
    return q, mu


def _int_interval(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    r = isqrt(floor(radius_sq)) + 1
    lo = floor(center) - r
    while lo <= floor(center) + r + 1 and (lo - center) ** 2 > radius_sq:
        lo += 1
    hi = floor(center) + r + 1
    while hi >= lo and (hi - center) ** 2 > radius_sq:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(Q: Sequence[Sequence[int]], bound: int) -> Iterator[Vector]:
    """All nonzero x in Z^n with x^T Q x <= bound (Q positive definite, integral).

    Fincke-Pohst enumeration with exact rational arithmetic.  Each vector
    and its negative are both produced.
    """
    n = len(Q)
    q, mu = _ldl(Q)
    x = [0] * n
    bound = Fraction(bound)

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if any(x):
                yield tuple(x)
            return
        c = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        for v in _int_interval(c, remaining / q[i]):
            x[i] = v
            yield from rec(i - 1, remaining - q[i] * (v - c) ** 2)
        x[i] = 0

    yield from rec(n - 1, bound)


# ---------------------------------------------------------------------------
# K3 double cover


def reider_exceptional_search(
    NS: GramLattice, D: Sequence[int], strata: Sequence[tuple[int, int]] = REIDER_STRATA
) -> list[ReiderException]:
    """Every integral E != 0 with (D.E, E^2) in ``strata`` (effectivity unchecked).

    Completeness: write E = (t/D^2) D + E_perp with t = D.E.  On a hyperbolic
    lattice D^perp is negative definite, so
    P(E) = 2 (D.E)^2 - D^2 E^2 = D^2 |E_perp|^2 + t^2
    is a positive definite integral form and every solution has
    P(E) <= max over strata of 2t^2 - D^2 e.  All vectors under that bound
    are enumerated and filtered.
    """
    D = tuple(D)
    d2 = NS.pair(D, D)
    if d2 <= 0:
        raise LatticeError(f"Reider search needs D^2 > 0, got {d2}")
    pos, neg = signature(NS)
    if pos != 1:
        raise LatticeError(f"Reider search needs a hyperbolic lattice, signature is {(pos, neg)}")
    n = NS.rank
    GD = [sum(NS.gram[i][j] * D[j] for j in range(n)) for i in range(n)]
    P = [[2 * GD[i] * GD[j] - d2 * NS.gram[i][j] for j in range(n)] for i in range(n)]
    wanted = set(strata)
    bound = max(2 * t * t - d2 * e for t, e in wanted)
    found = []
    for E in short_vectors(P, bound):
        t = sum(g * e for g, e in zip(GD, E))
        e2 = NS.pair(E, E)
        if (t, e2) not in wanted:
            continue
        if (t, e2) == (3, 1) and tuple(3 * x for x in E) != D:
            continue
        found.append(ReiderException(E, t, e2))
    found.sort(key=lambda r: (r.d_dot_e, r.e_squared, r.E))
    return found


def very_ample_on_k3(T: SurfaceModel, C: Sequence[int], n: int = 1) -> VeryAmpleVerdict:
    """Very ampleness of D = f^*(nC) on the K3 surface, for C ample on T."""
    if n < 1:
        raise PositivityError(f"multiplier must be >= 1, got {n}")
    C = tuple(C)
    if not classify_positivity(T, C).ample:
        raise PositivityError(f"{T.describe(C)} is not ample on {T.name}")
    if n >= 3:
        return VeryAmpleVerdict(VERY_AMPLE, f"{n} >= 3 times an ample class on a K3")
    D = pullback_to_k3(T, tuple(n * x for x in C))
    d2 = T.k3.pair(D, D)
    if d2 > 8:
        witnesses = tuple(reider_exceptional_search(T.k3, D))
        if not witnesses:
            return VeryAmpleVerdict(VERY_AMPLE, f"Reider: D^2 = {d2} > 8 and no exceptional class")
        return VeryAmpleVerdict(NOT_DETERMINED, "Reider obstruction", witnesses)
    if d2 >= 4:
        if all(x % 2 == 0 for x in D):
            half = tuple(x // 2 for x in D)
            if T.k3.pair(half, half) == 2:
                return VeryAmpleVerdict(NOT_VERY_AMPLE, "Saint-Donat: D = 2B with B^2 = 2 (hyperelliptic)")
        witnesses = tuple(reider_exceptional_search(T.k3, D, SAINT_DONAT_STRATA))
        if witnesses:
            return VeryAmpleVerdict(
                NOT_VERY_AMPLE, "Saint-Donat: elliptic class with D.E in {1, 2}", witnesses
            )
        return VeryAmpleVerdict(VERY_AMPLE, f"Saint-Donat: D^2 = {d2}, no elliptic class with D.E <= 2, D != 2B")
    return VeryAmpleVerdict(NOT_DETERMINED, f"Reider hypothesis D^2 > 8 fails (D^2 = {d2})")
