"""Killing form, semisimplicity test and the inverse (Casimir) tensor."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedInput, NotSemisimple, SingularMatrix
from .lie_algebra import StructureConstants, validate_structure
from .linalg_exact import RationalMatrix, det_exact, invert_exact


@dataclass(frozen=True)
class KillingData:
    B: RationalMatrix
    theta: RationalMatrix


def _check(sc: StructureConstants, check: bool) -> None:
    if check and not validate_structure(sc).empty:
        raise MalformedInput(f"{sc.label or 'algebra'} violates antisymmetry or Jacobi")


def killing_matrix(sc: StructureConstants, check: bool = True) -> RationalMatrix:
    """B_ij = sum_{a,b} mu_ia^b mu_jb^a, i.e. trace(ad v_i ad v_j)."""
    _check(sc, check)
    n = sc.n
    # ad[i][(a, b)] = mu_ia^b
    ad = defaultdict(dict)
    for i, a, b, v in sc.full_entries():
        ad[i][(a, b)] = v
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        Ai = ad.get(i, {})
        for j in range(i, n + 1):
            Aj = ad.get(j, {})
            s = sum((v * Aj[(b, a)] for (a, b), v in Ai.items() if (b, a) in Aj), Fraction(0))
            B[i - 1][j - 1] = B[j - 1][i - 1] = s
    return RationalMatrix(B)


def casimir_theta(sc: StructureConstants, check: bool = True) -> KillingData:
    B = killing_matrix(sc, check)
    try:
        theta = invert_exact(B)
    except SingularMatrix:
        raise NotSemisimple(f"{sc.label or 'algebra'}: Killing form is degenerate") from None
    return KillingData(B, theta)


def is_semisimple(sc: StructureConstants) -> bool:
    return det_exact(killing_matrix(sc)) != 0
