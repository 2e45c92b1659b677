"""Hypothesis checklist and verdicts for relative Prym varieties.

Given a quotient surface T, an effective class C on T and a multiplier n,
the class nC is run through five numerical conditions:

1. |nC| is very ample on T and D = f^*(nC) is very ample on the K3 surface S;
2. nC.B > 2;
3. not ((nC)^2 = 4 and nC.B = 4);
4. |nC| is 2-connected;
5. nC is non-hyperelliptic, needed only when B^2 <= 0.

When all of them certify, the relative Prym variety of the family of
double covers D -> nC is irreducible symplectic of dimension
(nC)^2 + nC.B/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ampleness import (
    NOT_VERY_AMPLE,
    VERY_AMPLE,
    VeryAmpleVerdict,
    very_ample_on_k3,
    very_ample_on_quotient,
)
from .effective import ConnectednessVerdict, classify_positivity, is_two_connected
from .errors import PositivityError
from .lattice import Vector
from .surfaces import (
    SurfaceModel,
    covering_genus,
    fixed_locus_invariants,
    genus_of,
    pullback_to_k3,
)

IRREDUCIBLE_SYMPLECTIC = "IrreducibleSymplectic"
INCONCLUSIVE = "Inconclusive"

VACUOUS = "Vacuous"
REQUIRES_NON_HYPERELLIPTIC = "RequiresNonHyperelliptic"

# condition names in report order; also the keys used by the catalog
CONDITIONS = ("veryAmpleC", "veryAmpleD", "CBgt2", "not44", "twoConnected", "hyperelliptic")


@dataclass(frozen=True)
class HyperellipticClause:
    status: str  # VACUOUS or REQUIRES_NON_HYPERELLIPTIC
    branch_square: int


@dataclass(frozen=True)
class BranchConditions:
    """The four conditions (a)-(d) in branch-curve form."""

    a_positive_on_branch: bool
    b_not_44: bool
    c_two_connected: bool
    d_hyperelliptic: HyperellipticClause
    rational_components: int = 0


@dataclass(frozen=True)
class HypothesisReport:
    cond1_veryAmpleC: VeryAmpleVerdict
    cond1_veryAmpleD: VeryAmpleVerdict
    cond2_CBgt2: bool
    CB: int
    cond3_not44: bool
    C2: int
    cond4_twoConnected: ConnectednessVerdict
    cond5_hyperellipticClause: HyperellipticClause
    thm5_conds: BranchConditions

    def failures(self, assert_non_hyperelliptic: bool = False) -> list[str]:
        """Names of conditions that do not certify, in report order."""
        failed = []
        if self.cond1_veryAmpleC.status != VERY_AMPLE:
            failed.append("veryAmpleC")
        if self.cond1_veryAmpleD.status != VERY_AMPLE:
            failed.append("veryAmpleD")
        if not self.cond2_CBgt2:
            failed.append("CBgt2")
        if not self.cond3_not44:
            failed.append("not44")
        if not self.cond4_twoConnected.two_connected:
            failed.append("twoConnected")
        if self.cond5_hyperellipticClause.status != VACUOUS and not assert_non_hyperelliptic:
            failed.append("hyperelliptic")
        return failed


@dataclass(frozen=True)
class CertifiedExample:
    surface: str
    C: Vector
    n: int
    dimension: int
    mukai_vector: tuple[int, Vector, int]
    verdict: str
    failed: tuple[str, ...] = field(default=())
    report: HypothesisReport | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == IRREDUCIBLE_SYMPLECTIC


def _scaled(C: Sequence[int], n: int) -> Vector:
    return tuple(n * int(x) for x in C)


def _require_effective(T: SurfaceModel, C: Sequence[int], n: int) -> None:
    if n < 1:
        raise PositivityError(f"multiplier must be >= 1, got {n}")
    if len(C) != T.rank:
        raise PositivityError(f"class of length {len(C)} on a rank-{T.rank} surface")
    if not classify_positivity(T, C).effective:
        raise PositivityError(f"{T.describe(C)} is not effective on {T.name}")


def hyperelliptic_clause(T: SurfaceModel) -> HyperellipticClause:
    b2 = T.square(T.branch)
    return HyperellipticClause(VACUOUS if b2 > 0 else REQUIRES_NON_HYPERELLIPTIC, b2)


def hypothesis_report(T: SurfaceModel, C: Sequence[int], n: int = 1) -> HypothesisReport:
    C = tuple(int(x) for x in C)
    _require_effective(T, C, n)
    nC = _scaled(C, n)
    c2 = T.square(nC)
    cb = T.pair(nC, T.branch)

    va_c = very_ample_on_quotient(T, nC)
    if classify_positivity(T, C).ample:
        va_d = very_ample_on_k3(T, C, n)
    else:
        # f is finite, so f^*(nC) is ample only if nC is
        va_d = VeryAmpleVerdict(NOT_VERY_AMPLE, "C is not ample, so neither is its pullback")
    conn = is_two_connected(T, nC)
    clause = hyperelliptic_clause(T)

    r, a, delta = T.nikulin
    k = fixed_locus_invariants(r, a, delta).rational_count or 0
    # with rational branch components present their classes would be needed;
    # none of the supported surfaces has any, so (a) is C.B > 0
    thm5 = BranchConditions(
        a_positive_on_branch=cb > 0 and k == 0,
        b_not_44=not (c2 == 4 and cb == 4),
        c_two_connected=conn.two_connected,
        d_hyperelliptic=clause,
        rational_components=k,
    )
    return HypothesisReport(
        cond1_veryAmpleC=va_c,
        cond1_veryAmpleD=va_d,
        cond2_CBgt2=cb > 2,
        CB=cb,
        cond3_not44=not (c2 == 4 and cb == 4),
        C2=c2,
        cond4_twoConnected=conn,
        cond5_hyperellipticClause=clause,
        thm5_conds=thm5,
    )


def prym_dimension(T: SurfaceModel, C: Sequence[int], n: int = 1) -> int:
    """n^2 C^2 + n C.B / 2, checked against 2(g(D) - g(nC))."""
    c2 = T.square(C)
    cb = T.pair(C, T.branch)
    assert cb % 2 == 0, f"C.B = {cb} is odd; B is not divisible by 2 on this lattice"
    dim = n * n * c2 + n * cb // 2
    nC = _scaled(C, n)
    via_genus = 2 * (covering_genus(T, nC) - genus_of(T, nC))
    assert dim == via_genus, f"Prym dimension {dim} disagrees with genus difference {via_genus}"
    return dim


def mukai_vector(T: SurfaceModel, C: Sequence[int], n: int = 1) -> tuple[int, Vector, int]:
    nC = _scaled(C, n)
    return (0, pullback_to_k3(T, nC), 1 - covering_genus(T, nC))


@dataclass(frozen=True)
class Empty:
    reason: str


@dataclass(frozen=True)
class Codim:
    q: Fraction


def non_integral_pullback_codim(T: SurfaceModel, C: Sequence[int]) -> Empty | Codim:
    """Codimension in |C| of the curves whose preimage splits into two components.

    A split preimage D = D_1 + i^*D_1 forces a class A with A^2 = C^2/2, so an
    odd C^2 leaves the locus empty.
    """
    c2 = T.square(C)
    cb = T.pair(C, T.branch)
    if c2 <= 0 or cb <= 0:
        raise PositivityError(f"needs C^2 > 0 and C.B > 0, got C^2 = {c2}, C.B = {cb}")
    if c2 % 2:
        return Empty(f"no candidate half-class: C^2 = {c2} is odd")
    return Codim(Fraction(c2, 4) + Fraction(cb, 4) - 1)


def milnor_number(contact_order: int) -> int:
    """Milnor number of the preimage singularity over a point of contact order m with B."""
    if contact_order < 1:
        raise PositivityError(f"contact order must be >= 1, got {contact_order}")
    return contact_order - 1


def verdict(
    T: SurfaceModel, C: Sequence[int], n: int = 1, assert_non_hyperelliptic: bool = False
) -> CertifiedExample:
    C = tuple(int(x) for x in C)
    report = hypothesis_report(T, C, n)
    failed = report.failures(assert_non_hyperelliptic)
    return CertifiedExample(
        surface=T.name,
        C=C,
        n=n,
        dimension=prym_dimension(T, C, n),
        mukai_vector=mukai_vector(T, C, n),
        verdict=INCONCLUSIVE if failed else IRREDUCIBLE_SYMPLECTIC,
        failed=tuple(failed),
        report=report,
    )
