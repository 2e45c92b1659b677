"""Exact integer lattices with symmetric or skew-symmetric Gram matrices.

Everything here works on plain Python ints and :class:`fractions.Fraction`;
no floating point is used anywhere in this module.  Classes (vectors) are
tuples of ints in the lattice's fixed basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import LatticeError

Vector = tuple[int, ...]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# small matrix helpers


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# lattice types


@dataclass(frozen=True)
class GramLattice:
    """A free Z-module with an integral bilinear form given by its Gram matrix.

    ``kind`` is ``"symmetric"`` or ``"skew"``.
    """

    gram: tuple[tuple[int, ...], ...]
    kind: str = "symmetric"

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError(f"Gram matrix must be square, got row lengths {[len(r) for r in gram]}")
        if self.kind == "symmetric":
            bad = [(i, j) for i in range(n) for j in range(i) if gram[i][j] != gram[j][i]]
            if bad:
                raise LatticeError(f"symmetric Gram matrix is not symmetric at {bad[0]}")
        elif self.kind == "skew":
            bad = [(i, j) for i in range(n) for j in range(i + 1) if gram[i][j] != -gram[j][i]]
            if bad:
                raise LatticeError(f"skew Gram matrix fails G = -G^T at {bad[0]}")
        else:
            raise LatticeError(f"unknown symmetry kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "GramLattice":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return pair(self, u, v)

    def square(self, u: Sequence[int]) -> int:
        return pair(self, u, u)

    def determinant(self) -> int:
        return determinant(self.gram)

    def __str__(self):
        return f"GramLattice(rank={self.rank}, kind={self.kind})"


def hyperbolic_plane() -> GramLattice:
    return GramLattice(((0, 1), (1, 0)))


def pair(L: GramLattice, u: Sequence[int], v: Sequence[int]) -> int:
    """Return u^T G v."""
    n = L.rank
    if len(u) != n or len(v) != n:
        raise LatticeError(f"vector lengths {len(u)}, {len(v)} do not match lattice rank {n}")
    G = L.gram
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = G[i]
            total += ui * sum(row[j] * v[j] for j in range(n) if v[j])
    return total


# ---------------------------------------------------------------------------
# normal forms


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal (same shape as ``M``) with non-negative entries, each
    dividing the next.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (including 1s)."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    n = len(A[0])
    r = 0
    for c in range(n):
        if r == len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    return [tuple(row) for row in A[:r]]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """HNF basis of ``{x in Z^n : M x = 0}``."""
    if not M:
        n = ncols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    D, _, V = smith_normal_form(M)
    n = len(M[0])
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    basis = [tuple(V[i][j] for i in range(n)) for j in range(rank, n)]
    return hermite_normal_form(basis)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Vector | None:
    """Some integer solution of ``A x = b``, or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    D, U, V = smith_normal_form(A)
    Ub = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if Ub[i]:
                return None
        else:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
    return matvec(V, y)


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class DiscriminantData:
    """Structure of the discriminant group L^v / L.

    ``delta`` is ``None`` when the group is not 2-elementary.
    ``generator_norms`` holds q(x) mod 2 for the SNF generators.
    """

    invariant_factors: tuple[int, ...]
    is_two_elementary: bool
    a: int
    delta: int | None
    generator_norms: tuple[Fraction, ...] = field(default=(), compare=False)


def discriminant_data(L: GramLattice) -> DiscriminantData:
    if L.kind != "symmetric":
        raise LatticeError("discriminant data needs a symmetric form")
    if L.rank and L.determinant() == 0:
        raise LatticeError("degenerate Gram matrix (determinant 0)")
    D, _, V = smith_normal_form(L.gram)
    n = L.rank
    factors = [(D[i][i], i) for i in range(n) if D[i][i] > 1]
    norms = []
    for d, i in factors:
        x = [Fraction(V[k][i], d) for k in range(n)]
        q = sum(x[r] * L.gram[r][c] * x[c] for r in range(n) for c in range(n))
        norms.append(q % 2)
    two_el = all(d == 2 for d, _ in factors)
    if two_el:
        delta = 0 if all(q.denominator == 1 for q in norms) else 1
    else:
        delta = None
    return DiscriminantData(
        invariant_factors=tuple(d for d, _ in factors),
        is_two_elementary=two_el,
        a=sum(1 for d, _ in factors if d == 2),
        delta=delta,
        generator_norms=tuple(norms),
    )


def signature(L: GramLattice) -> tuple[int, int]:
    """(positive, negative) inertia by exact congruence diagonalization."""
    if L.kind != "symmetric":
        raise LatticeError("signature needs a symmetric form")
    A = [[Fraction(x) for x in row] for row in L.gram]
    active = list(range(L.rank))
    pos = neg = 0
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair_ij = next(((i, j) for i in active for j in active if A[i][j] != 0), None)
            if pair_ij is None:
                raise LatticeError(f"degenerate form: radical of rank {len(active)}")
            i, j = pair_ij
            # congruence e_i -> e_i + e_j gives A[i][i] = 2 A[i][j] != 0
            for k in range(L.rank):
                A[i][k] += A[j][k]
            for k in range(L.rank):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            if A[i][piv]:
                f = A[i][piv] / p
                for k in active:
                    A[i][k] -= f * A[piv][k]
        for i in active:
            A[i][piv] = A[piv][i] = Fraction(0)
    return pos, neg


def is_unimodular(L: GramLattice) -> bool:
    return abs(L.determinant()) == 1


def congruent(L: GramLattice, P: Sequence[Sequence[int]]) -> GramLattice:
    """The lattice with Gram matrix P^T G P."""
    G = matmul(matmul(transpose(P), L.gram), P)
    return GramLattice(tuple(map(tuple, G)), L.kind)
