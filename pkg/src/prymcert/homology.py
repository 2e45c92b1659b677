"""Integral homology of a double cover D -> C with its covering involution.

C has genus l and the cover has 2m + 2 branch points, so D has genus
h = 2l + m.  H_1(D, Z) has basis

    beta_1..beta_{2l}, i beta_1..i beta_{2l}, delta_1..delta_{2m}

where beta_j lift a symplectic basis of H_1(C), i swaps beta_j and
i beta_j, and the delta_k are anti-invariant loops around consecutive
branch points.  Consecutive deltas meet once, so their block of the
intersection form is a tridiagonal chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import HomologyError
from .lattice import (
    GramLattice,
    Matrix,
    Vector,
    hermite_normal_form,
    identity,
    integer_kernel,
    matvec,
    smith_normal_form,
    solve_integer,
    transpose,
)


@dataclass(frozen=True)
class SymmetricHomologyModel:
    l: int
    m: int
    gram: GramLattice
    involution: Matrix

    @property
    def rank(self) -> int:
        return 4 * self.l + 2 * self.m

    @property
    def genus(self) -> int:
        return 2 * self.l + self.m

    @property
    def fixed_points(self) -> int:
        return 2 * self.m + 2

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return self.gram.pair(x, y)

    def apply_involution(self, x: Sequence[int]) -> Vector:
        return matvec(self.involution, x)

    def basis_vector(self, name: str) -> Vector:
        """``"b3"`` (beta_3), ``"ib3"`` (i beta_3) or ``"d2"`` (delta_2); 1-based."""
        if name.startswith("ib"):
            offset, count, idx = 2 * self.l, 2 * self.l, name[2:]
        elif name.startswith("b"):
            offset, count, idx = 0, 2 * self.l, name[1:]
        elif name.startswith("d"):
            offset, count, idx = 4 * self.l, 2 * self.m, name[1:]
        else:
            raise HomologyError(f"unknown basis name {name!r}")
        if not idx.isdigit() or not 1 <= int(idx) <= count:
            raise HomologyError(f"{name!r} is out of range for l={self.l}, m={self.m}")
        v = [0] * self.rank
        v[offset + int(idx) - 1] = 1
        return tuple(v)

    def cycle(self, terms: dict[str, int]) -> Vector:
        """Integer combination of named basis vectors."""
        v = [0] * self.rank
        for name, coeff in terms.items():
            v = [x + coeff * y for x, y in zip(v, self.basis_vector(name))]
        return tuple(v)

    def check(self, x: Sequence[int]) -> Vector:
        if len(x) != self.rank:
            raise HomologyError(f"cycle of length {len(x)} in a rank-{self.rank} model")
        return tuple(int(c) for c in x)


def _symplectic_block(G: list[list[int]], start: int, size: int) -> None:
    for j in range(0, size, 2):
        G[start + j][start + j + 1] = 1
        G[start + j + 1][start + j] = -1


def build_model(l: int, m: int) -> SymmetricHomologyModel:
    if l < 0 or m < 0:
        raise HomologyError(f"l and m must be non-negative, got l={l}, m={m}")
    rank = 4 * l + 2 * m
    G = [[0] * rank for _ in range(rank)]
    _symplectic_block(G, 0, 2 * l)
    _symplectic_block(G, 2 * l, 2 * l)
    base = 4 * l
    for k in range(2 * m - 1):
        G[base + k][base + k + 1] = 1
        G[base + k + 1][base + k] = -1

    inv = [[0] * rank for _ in range(rank)]
    for j in range(2 * l):
        inv[j][2 * l + j] = 1
        inv[2 * l + j][j] = 1
    for k in range(base, rank):
        inv[k][k] = -1
    return SymmetricHomologyModel(l, m, GramLattice(tuple(map(tuple, G)), kind="skew"), inv)


def anti_invariant_basis(M: SymmetricHomologyModel) -> list[Vector]:
    """HNF basis of H_1(D)_- = ker(1 + i)."""
    if M.rank == 0:
        return []
    one_plus = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(identity(M.rank), M.involution)]
    return integer_kernel(one_plus, M.rank)


def is_anti_invariant(M: SymmetricHomologyModel, x: Sequence[int]) -> bool:
    x = M.check(x)
    return all(a + b == 0 for a, b in zip(x, M.apply_involution(x)))


def picard_lefschetz_twist(M: SymmetricHomologyModel, alpha: Sequence[int], c: Sequence[int]) -> Vector:
    """T_alpha(c) = c + (c.alpha) alpha."""
    alpha, c = M.check(alpha), M.check(c)
    if M.pair(alpha, alpha) != 0:
        raise HomologyError("vanishing cycle must be isotropic")
    t = M.pair(c, alpha)
    return tuple(x + t * a for x, a in zip(c, alpha))


def twist_pair(M: SymmetricHomologyModel, alpha: Sequence[int], c: Sequence[int]) -> Vector:
    """T_{i alpha} o T_alpha (c), the monodromy of a pair of swapped vanishing cycles."""
    i_alpha = M.apply_involution(M.check(alpha))
    return picard_lefschetz_twist(M, i_alpha, picard_lefschetz_twist(M, alpha, c))


def twist_matrix(M: SymmetricHomologyModel, alpha: Sequence[int]) -> Matrix:
    """Matrix of T_alpha acting on column vectors."""
    cols = [picard_lefschetz_twist(M, alpha, e) for e in identity(M.rank)]
    return transpose(cols)


@dataclass(frozen=True)
class GenerationResult:
    generates: bool
    index: int | None  # None when the span has lower rank
    rank_deficiency: int = 0
    invariant_factors: tuple[int, ...] = ()


def _coordinates(M: SymmetricHomologyModel, basis: list[Vector], x: Vector) -> Vector:
    coords = solve_integer(transpose(basis), x)
    if coords is None:
        raise HomologyError(f"{x} is not in the anti-invariant lattice")
    return coords


def generates_anti_invariant(M: SymmetricHomologyModel, cycles: Sequence[Sequence[int]]) -> GenerationResult:
    """Whether ``cycles`` span H_1(D)_- over Z; otherwise the index or rank deficiency."""
    basis = anti_invariant_basis(M)
    rows = []
    for c in cycles:
        c = M.check(c)
        if not is_anti_invariant(M, c):
            raise HomologyError(f"cycle {c} is not anti-invariant")
        rows.append(_coordinates(M, basis, c))
    r = len(basis)
    if r == 0:
        return GenerationResult(True, 1)
    if not rows:
        return GenerationResult(False, None, r)
    D, _, _ = smith_normal_form(rows)
    factors = tuple(D[i][i] for i in range(min(len(rows), r)) if D[i][i])
    deficiency = r - len(factors)
    if deficiency:
        return GenerationResult(False, None, deficiency, factors)
    index = prod(factors)
    return GenerationResult(index == 1, index, 0, factors)


@dataclass(frozen=True)
class EvenForm:
    pass


@dataclass(frozen=True)
class OddPairingWitness:
    x: Vector
    y: Vector
    value: int


def parity_obstruction(M: SymmetricHomologyModel) -> EvenForm | OddPairingWitness:
    """First odd pairing between anti-invariant basis vectors, if any."""
    basis = anti_invariant_basis(M)
    for i, x in enumerate(basis):
        for y in basis[i + 1 :]:
            v = M.pair(x, y)
            if v % 2:
                return OddPairingWitness(x, y, v)
    return EvenForm()


def find_dual_cycle(M: SymmetricHomologyModel, alpha: Sequence[int]) -> Vector | None:
    """Some anti-invariant c with c.alpha = 1, or None if no such c exists."""
    alpha = M.check(alpha)
    basis = anti_invariant_basis(M)
    if not basis:
        return None
    coeffs = solve_integer([[M.pair(b, alpha) for b in basis]], [1])
    if coeffs is None:
        return None
    return tuple(sum(k * b[j] for k, b in zip(coeffs, basis)) for j in range(M.rank))


def commutator_images(M: SymmetricHomologyModel) -> list[Vector]:
    """(c.alpha) alpha for alpha = delta_k and (c.alpha)(alpha - i alpha) for alpha = beta_j,
    with c running over the anti-invariant basis; zero vectors are dropped."""
    basis = anti_invariant_basis(M)
    out = []
    for k in range(1, 2 * M.m + 1):
        a = M.basis_vector(f"d{k}")
        for c in basis:
            t = M.pair(c, a)
            if t:
                out.append(tuple(t * x for x in a))
    for j in range(1, 2 * M.l + 1):
        a = M.basis_vector(f"b{j}")
        diff = tuple(x - y for x, y in zip(a, M.apply_involution(a)))
        for c in basis:
            t = M.pair(c, a)
            if t:
                out.append(tuple(t * x for x in diff))
    return out


def pushforward_matrix(M: SymmetricHomologyModel) -> Matrix:
    """f_*: H_1(D) -> H_1(C), beta_j and i beta_j to the j-th basis vector, delta_k to 0."""
    n = 2 * M.l
    F = [[0] * M.rank for _ in range(n)]
    for j in range(n):
        F[j][j] = 1
        F[j][n + j] = 1
    return F


def base_curve_lattice(M: SymmetricHomologyModel) -> GramLattice:
    G = [[0] * (2 * M.l) for _ in range(2 * M.l)]
    _symplectic_block(G, 0, 2 * M.l)
    return GramLattice(tuple(map(tuple, G)), kind="skew")


def reduced(cycles: Sequence[Sequence[int]]) -> list[Vector]:
    """HNF of the span; handy for comparing sublattices."""
    return hermite_normal_form(cycles)
