"""Effectivity, nefness and 2-connectedness of classes on the quotient surface.

The closed cone of curves of every supported surface is finite polyhedral:
it is spanned by the (-1)-curves for d <= 7, by E_1 and the fibre H - E_1
on the degree-8 del Pezzo F_1, and by H on P^2.  Nefness and ampleness are
tested against these generators.  Effectivity uses fixed-component
reduction: a class with negative intersection with an irreducible curve R
contains R, so R is subtracted until the residue is nef or has negative
anticanonical degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .errors import ConsistencyError, PositivityError
from .lattice import Vector
from .surfaces import DEL_PEZZO, PROJECTIVE_PLANE, SurfaceModel, linear_system_dim

# candidate arrays above this many rows are split along the first coordinate
_CHUNK = 1 << 20


# ---------------------------------------------------------------------------
# (-1)-curves


def _distinct_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    values = sorted(values)
    n = len(values)
    while True:
        yield tuple(values)
        # next lexicographic permutation
        i = n - 2
        while i >= 0 and values[i] >= values[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while values[j] <= values[i]:
            j -= 1
        values[i], values[j] = values[j], values[i]
        values[i + 1:] = reversed(values[i + 1:])


def _sorted_solutions(k: int, total: int, squares: int, cap: int) -> Iterator[list[int]]:
    """Non-increasing b_1 >= ... >= b_k with sum b = total, sum b^2 = squares, b_1 <= cap."""
    if k == 0:
        if total == 0 and squares == 0:
            yield []
        return
    if squares < 0 or total * total > k * squares or (total - squares) % 2 or total > k * cap:
        return
    r = isqrt(squares)
    for b in range(min(cap, r), -r - 1, -1):
        for rest in _sorted_solutions(k - 1, total - b, squares - b * b, b):
            yield [b] + rest


@lru_cache(maxsize=None)
def minus_one_curves(T: SurfaceModel) -> tuple[Vector, ...]:
    """All classes E with E^2 = -1 and E.K = -1, sorted.

    Writing E = aH - sum b_i E_i this means sum b_i = 3a - 1 and
    sum b_i^2 = a^2 + 1; Cauchy-Schwarz bounds a, and the search runs over
    sorted b-vectors before expanding permutations.
    """
    k = T.rank - 1
    if k == 0:
        return ()
    found = set()
    a = 0
    while True:
        total, squares = 3 * a - 1, a * a + 1
        if total * total > k * squares and a > 0:
            break
        for b in _sorted_solutions(k, total, squares, isqrt(squares)):
            for perm in _distinct_permutations(b):
                found.add(T.divisor(a, perm))
        a += 1
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def cone_generators(T: SurfaceModel) -> tuple[Vector, ...]:
    """Extremal rays of the cone of curves, as irreducible curve classes."""
    if T.kind == PROJECTIVE_PLANE:
        return (T.hyperplane,)
    if T.degree == 8:
        return (T.exceptional(1), T.divisor(1, (1,)))
    return minus_one_curves(T)


# ---------------------------------------------------------------------------
# positivity


@dataclass(frozen=True)
class PositivityFlags:
    effective: bool
    nef: bool
    ample: bool


def _is_effective(T: SurfaceModel, A: Sequence[int]) -> bool:
    gens = cone_generators(T)
    mK = T.anticanonical
    x = list(A)
    subtracted = False
    while True:
        if T.pair(x, mK) < 0:
            return False
        R = next((R for R in gens if T.pair(x, R) < 0), None)
        if R is None:
            return subtracted or any(x)
        x = [xi - ri for xi, ri in zip(x, R)]
        subtracted = True


def classify_positivity(T: SurfaceModel, A: Sequence[int]) -> PositivityFlags:
    pairings = [T.pair(A, R) for R in cone_generators(T)]
    nef = min(pairings) >= 0
    ample = nef and min(pairings) > 0 and T.square(A) > 0
    # "effective" means nonzero effective throughout
    return PositivityFlags(_is_effective(T, A), nef, ample)


def is_nef(T: SurfaceModel, A: Sequence[int]) -> bool:
    return all(T.pair(A, R) >= 0 for R in cone_generators(T))


def is_ample(T: SurfaceModel, A: Sequence[int]) -> bool:
    return classify_positivity(T, A).ample


def effective_mask(T: SurfaceModel, X: np.ndarray) -> np.ndarray:
    """Vectorized :func:`classify_positivity` ``.effective`` over the rows of X."""
    X = np.array(X, dtype=np.int64, copy=True).reshape(-1, T.rank)
    G = np.array(T.picard.gram, dtype=np.int64)
    R = np.array(cone_generators(T), dtype=np.int64)
    # float64 products are exact at these sizes and go through BLAS
    RG = (R @ G).T.astype(np.float64)
    mK = G @ np.array(T.anticanonical, dtype=np.int64)
    result = np.zeros(len(X), dtype=bool)
    subtracted = np.zeros(len(X), dtype=bool)
    alive = np.arange(len(X))
    while alive.size:
        Xa = X[alive]
        deg = Xa @ mK
        neg = (Xa.astype(np.float64) @ RG) < 0
        has_neg = neg.any(axis=1)
        finished = (deg >= 0) & ~has_neg
        result[alive[finished]] = subtracted[alive[finished]] | Xa[finished].any(axis=1)
        step = (deg >= 0) & has_neg
        rows = alive[step]
        X[rows] -= R[np.argmax(neg[step], axis=1)]
        subtracted[rows] = True
        alive = rows
    return result


# ---------------------------------------------------------------------------
# effective decompositions


def _min_ratio(T: SurfaceModel, C: Sequence[int], N: Sequence[int]) -> Fraction:
    """Largest mu with C - mu*N nef (C nef, N nef)."""
    R = np.array(cone_generators(T), dtype=np.int64)
    G = np.array(T.picard.gram, dtype=np.int64)
    cr = R @ G @ np.array(C, dtype=np.int64)
    nr = R @ G @ np.array(N, dtype=np.int64)
    ratios = [Fraction(int(c), int(n)) for c, n in zip(cr, nr) if n > 0]
    return min(ratios) if ratios else Fraction(0)


def _fibre(T: SurfaceModel, i: int) -> Vector:
    k = T.rank - 1
    return T.divisor(1, tuple(int(j == i) for j in range(k)))


def decomposition_box(
    T: SurfaceModel, C: Sequence[int], max_dot: int | None = None
) -> tuple[tuple[int, int], list]:
    """Search box for C_1 in C = C_1 + C_2 (both nonzero effective).

    Returns ``((a_lo, a_hi), b_ranges)`` where ``b_ranges(a)`` gives the
    (lo, hi) range of each b_i for C_1 = aH - sum b_i E_i.  The base box is
    a in [0, a_C], b_i in [-N, a] with N = C.(-K); the same bounds applied
    to C_2 tighten it.  With ``max_dot`` and C nef and big, C_1.C <= max_dot
    adds cuts from the nef classes H and H - E_i.
    """
    aC, bC = T.ab(C)
    N = T.pair(C, T.anticanonical)
    a_hi = aC
    lo_cut = [-N] * len(bC)
    mus: list[Fraction] = [Fraction(0)] * len(bC)
    if max_dot is not None and is_nef(T, C) and T.square(C) > 0:
        lam = _min_ratio(T, C, T.hyperplane)
        if lam > 0:
            a_hi = min(a_hi, int(Fraction(max_dot) / lam))
        for i in range(len(bC)):
            mus[i] = _min_ratio(T, C, _fibre(T, i))
            if bC[i] > 0:
                # C_1 = m E_i + R with R.E_i >= 0: b_i >= -m >= -(C_1.C)/(C.E_i)
                lo_cut[i] = max(lo_cut[i], -(max_dot // bC[i]))

    def b_ranges(a: int) -> list[tuple[int, int]]:
        out = []
        for i, b in enumerate(bC):
            lo = max(lo_cut[i], b - (aC - a))
            hi = min(a, b + N)
            if mus[i] > 0:
                lo = max(lo, a - int(Fraction(max_dot) / mus[i]))
            out.append((lo, hi))
        return out

    return (0, a_hi), b_ranges


def _grid(ranges: Sequence[range]) -> Iterator[np.ndarray]:
    total = 1
    for r in ranges:
        total *= len(r)
    if total == 0:
        return
    if total <= _CHUNK or len(ranges) == 1:
        mesh = np.meshgrid(*[np.arange(r.start, r.stop, dtype=np.int64) for r in ranges], indexing="ij")
        yield np.stack([m.ravel() for m in mesh], axis=1)
        return
    for v in ranges[0]:
        for block in _grid(ranges[1:]):
            yield np.concatenate([np.full((len(block), 1), v, dtype=np.int64), block], axis=1)


def _passes_nef_tests(X: np.ndarray) -> np.ndarray:
    """Necessary conditions for effectivity: x.F >= 0 for the nef classes
    2H - E_i - E_j - E_k - E_l (conic pencils) and 3H - sum_{i in S} E_i,
    |S| <= 8 (pulled-back anticanonical classes)."""
    if X.shape[1] < 3:
        return np.ones(len(X), dtype=bool)
    a = X[:, 0]
    b = -np.sort(X[:, 1:], axis=1)  # b_i in descending order
    top = np.cumsum(b, axis=1)
    ok = 3 * a >= top[:, : min(8, top.shape[1])].max(axis=1)
    if top.shape[1] >= 4:
        ok &= 2 * a >= top[:, 3]
    return ok


def _candidates(T: SurfaceModel, C: Sequence[int], max_dot: int | None) -> Iterator[np.ndarray]:
    """Blocks of C_1 (true coordinates) from the box, filtered by degree window."""
    N = T.pair(C, T.anticanonical)
    if N < 2:
        return
    (a_lo, a_hi), b_ranges = decomposition_box(T, C, max_dot)
    G = np.array(T.picard.gram, dtype=np.int64)
    mK = G @ np.array(T.anticanonical, dtype=np.int64)
    Carr = np.array(C, dtype=np.int64)
    Cg = G @ Carr
    for a in range(a_lo, a_hi + 1):
        ranges = [range(lo, hi + 1) for lo, hi in b_ranges(a)]
        blocks = _grid(ranges) if ranges else iter([np.zeros((1, 0), dtype=np.int64)])
        for block in blocks:
            X = np.concatenate([np.full((len(block), 1), a, dtype=np.int64), -block], axis=1)
            deg = X @ mK
            keep = (deg >= 1) & (deg <= N - 1)
            if max_dot is not None:
                keep &= (X @ Cg) <= max_dot
            X = X[keep]
            X = X[_passes_nef_tests(X) & _passes_nef_tests(Carr - X)]
            if len(X):
                yield X


def _effective_pairs(T: SurfaceModel, C: Sequence[int], max_dot: int | None = None) -> np.ndarray:
    Carr = np.array(C, dtype=np.int64)
    out = []
    for X in _candidates(T, C, max_dot):
        ok = effective_mask(T, X)
        X = X[ok]
        if len(X):
            X = X[effective_mask(T, Carr - X)]
            out.append(X)
    if not out:
        return np.zeros((0, T.rank), dtype=np.int64)
    return np.concatenate(out)


def effective_decompositions(T: SurfaceModel, C: Sequence[int]) -> Iterator[tuple[Vector, Vector]]:
    """All unordered (C_1, C_2), C_1 + C_2 = C, both nonzero effective.

    Each pair is emitted once with C_1 <= C_2 lexicographically, in
    lexicographic order.
    """
    C = tuple(int(x) for x in C)
    if not classify_positivity(T, C).effective:
        raise PositivityError(f"{T.describe(C)} is not effective on {T.name}")
    pairs = set()
    for row in _effective_pairs(T, C).tolist():
        x = tuple(row)
        y = tuple(c - v for c, v in zip(C, x))
        pairs.add((min(x, y), max(x, y)))
    yield from sorted(pairs)


# ---------------------------------------------------------------------------
# 2-connectedness


@dataclass(frozen=True)
class BLException:
    """A matched case of the ample-divisor 2-connectedness exception list."""

    code: str  # "A1".."A4"
    detail: str
    certain: bool = True


@dataclass(frozen=True)
class ConnectednessVerdict:
    two_connected: bool
    witness: tuple[Vector, Vector, int] | None
    bl_exceptions: tuple[BLException, ...]
    ample: bool = False

    @property
    def predicted(self) -> bool | None:
        """Exception-list prediction (only meaningful for ample C)."""
        if not self.ample:
            return None
        return not self.bl_exceptions


def bl_exceptions(T: SurfaceModel, C: Sequence[int]) -> list[BLException]:
    C = tuple(C)
    found = []
    # A1 needs a smooth quadric surface: P1 x P1 is unsupported, never matched.
    if T.kind == PROJECTIVE_PLANE and C == (2,):
        found.append(BLException("A2", "C^2 = 4, X = P2, C = O(2)"))
    if T.kind == DEL_PEZZO and T.square(C) == 4 and all(x % 2 == 0 for x in C):
        L = tuple(x // 2 for x in C)
        if T.square(L) == 1 and classify_positivity(T, L).effective:
            dim = linear_system_dim(T, L)
            delta = 2 + T.square(L) - (dim.value + 1)
            if dim.exact:
                if delta in (1, 2):
                    found.append(BLException("A3", f"C = 2L, L^2 = 1, Delta-genus {delta}"))
            else:
                found.append(BLException("A3", "C = 2L, L^2 = 1, h^0(L) unresolved", certain=False))
    if T.kind == DEL_PEZZO and T.degree == 8:
        a, (b1,) = T.ab(C)
        if a - b1 == 1 and a >= 0:
            found.append(BLException("A4", f"F1 = P(O + O(-1)): C = E1 + {a}(H - E1), section plus fibres"))
    return found


def _hodge_bound(t: int, c2: int) -> Fraction:
    # C_1.(C - C_1) >= t - t^2/C^2 by the Hodge index theorem, t = C_1.C
    return Fraction(t) - Fraction(t * t, c2)


def _best(T, C, X, best):
    Cg = np.array(C, dtype=np.int64)
    G = np.array(T.picard.gram, dtype=np.int64)
    vals = (X @ G @ Cg) - np.einsum("ij,jk,ik->i", X, G, X)
    for row, v in zip(X.tolist(), vals.tolist()):
        x = tuple(row)
        y = tuple(c - xi for c, xi in zip(C, x))
        key = (v, min(x, y), max(x, y))
        if best is None or key < best:
            best = key
    return best


def is_two_connected(T: SurfaceModel, C: Sequence[int]) -> ConnectednessVerdict:
    """Direct check of C_1.C_2 >= 2 over all effective decompositions,
    cross-checked against the exception list when C is ample.

    For nef and big C the minimum of C_1.C_2 is found by branch and bound on
    t = C_1.C: candidates with t beyond the current cap all satisfy
    C_1.C_2 >= t - t^2/C^2, so the search stops once that exceeds the best
    value found.
    """
    C = tuple(int(x) for x in C)
    flags = classify_positivity(T, C)
    c2 = T.square(C)
    best = None
    if flags.nef and c2 > 0:
        half = c2 // 2
        cap = min(2, half)
        while True:
            best = _best(T, C, _effective_pairs(T, C, cap), best)
            if cap >= half or (best is not None and _hodge_bound(cap + 1, c2) > best[0]):
                break
            if best is None:
                cap = min(half, 2 * cap + 1)
            else:
                t = cap + 1
                while t < half and _hodge_bound(t, c2) <= best[0]:
                    t += 1
                cap = t
    else:
        best = _best(T, C, _effective_pairs(T, C), best)
    witness = None if best is None else (best[1], best[2], best[0])
    two = best is None or best[0] >= 2
    exc = tuple(bl_exceptions(T, C))
    if flags.ample and not exc and not two:
        raise ConsistencyError(
            f"{T.describe(C)} on {T.name} is ample with no exception, yet "
            f"{witness[0]} + {witness[1]} has pairing {witness[2]}"
        )
    return ConnectednessVerdict(two, witness, exc, flags.ample)
