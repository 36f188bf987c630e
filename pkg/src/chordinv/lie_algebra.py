"""Structure constants of Lie algebras and the GL(V) basis-change action.

Indices are 1-based throughout, ``mu[(i, j, k)]`` is the coefficient of
``v_k`` in ``[v_i, v_j]``. Only entries with ``i < j`` are stored; the
``i > j`` values follow from antisymmetry.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping

import numpy as np

from .errors import MalformedInput, NotSemisimpleFamily, SingularMatrix
from .linalg_exact import RationalMatrix, det_exact, format_rational, invert_exact, parse_rational


@dataclass(frozen=True)
class StructureConstants:
    n: int
    mu: Mapping[tuple[int, int, int], Fraction]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise MalformedInput(f"dimension must be a positive integer, got {self.n!r}")
        clean = {}
        for key in sorted(self.mu):
            i, j, k = key
            if not all(1 <= x <= self.n for x in key):
                raise MalformedInput(f"index out of range in {key}")
            if i >= j:
                raise MalformedInput(f"only i<j entries may be stored, got {key}")
            v = Fraction(self.mu[key])
            if v:
                clean[key] = v
        object.__setattr__(self, "mu", clean)

    @classmethod
    def from_full(cls, n: int, entries: Mapping[tuple[int, int, int], Fraction], label: str = "") -> "StructureConstants":
        """Build from a mapping that may list both (i,j,k) and (j,i,k).

        Entries must already be antisymmetric; use :func:`validate_structure`
        on the raw mapping first if unsure.
        """
        upper = {}
        for (i, j, k), v in entries.items():
            v = Fraction(v)
            if i < j:
                upper[(i, j, k)] = v
            elif i == j and v:
                raise MalformedInput(f"nonzero diagonal entry {(i, j, k)}")
        for (i, j, k), v in entries.items():
            if i > j and Fraction(v) != -upper.get((j, i, k), 0):
                raise MalformedInput(f"entries {(j, i, k)} and {(i, j, k)} are not antisymmetric")
        return cls(n, upper, label)

    def __getitem__(self, ijk: tuple[int, int, int]) -> Fraction:
        i, j, k = ijk
        if i < j:
            return self.mu.get((i, j, k), Fraction(0))
        if i > j:
            return -self.mu.get((j, i, k), Fraction(0))
        return Fraction(0)

    def full_entries(self) -> Iterator[tuple[int, int, int, Fraction]]:
        """All nonzero (i, j, k, value) in lexicographic order, both orders of (i, j)."""
        expanded = {}
        for (i, j, k), v in self.mu.items():
            expanded[(i, j, k)] = v
            expanded[(j, i, k)] = -v
        for key in sorted(expanded):
            yield (*key, expanded[key])

    def nnz(self) -> int:
        return 2 * len(self.mu)

    def is_abelian(self) -> bool:
        return not self.mu

    def dense(self) -> np.ndarray:
        """Object array ``A[i-1, j-1, k-1]`` of Fractions."""
        A = np.full((self.n,) * 3, Fraction(0), dtype=object)
        for i, j, k, v in self.full_entries():
            A[i - 1, j - 1, k - 1] = v
        return A

    @classmethod
    def from_dense(cls, A: np.ndarray, label: str = "") -> "StructureConstants":
        n = A.shape[0]
        mu = {}
        for i, j, k in zip(*np.nonzero(A != 0)):
            if i < j:
                mu[(int(i) + 1, int(j) + 1, int(k) + 1)] = Fraction(A[i, j, k])
        return cls(n, mu, label)

    def to_json(self) -> dict:
        return {"n": self.n, "mu": [[i, j, k, format_rational(v)] for (i, j, k), v in sorted(self.mu.items())]}

    @classmethod
    def from_json(cls, obj, label: str = "") -> "StructureConstants":
        if not isinstance(obj, dict) or "n" not in obj or "mu" not in obj:
            raise MalformedInput('algebra JSON needs keys "n" and "mu"')
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise MalformedInput(f"bad dimension {n!r}")
        mu = {}
        for entry in obj["mu"]:
            if not isinstance(entry, list) or len(entry) != 4:
                raise MalformedInput(f"bad mu entry {entry!r}")
            i, j, k, v = entry
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
                raise MalformedInput(f"non-integer index in {entry!r}")
            if i >= j:
                raise MalformedInput(f"entry {entry!r} must have i<j")
            if (i, j, k) in mu:
                raise MalformedInput(f"duplicate key {(i, j, k)}")
            mu[(i, j, k)] = parse_rational(v)
        return cls(n, mu, label)


def load_algebra(path) -> StructureConstants:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg})") from None
    return StructureConstants.from_json(obj, label=str(path))


def dump_algebra(sc: StructureConstants) -> str:
    return json.dumps(sc.to_json())


@dataclass
class ValidationReport:
    antisymmetry: list[tuple[int, int, int]] = field(default_factory=list)
    jacobi: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.antisymmetry and not self.jacobi

    def to_json(self) -> dict:
        return {"antisymmetry": [list(t) for t in self.antisymmetry], "jacobi": [list(t) for t in self.jacobi]}


def validate_structure(sc, n: int | None = None) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity exactly.

    ``sc`` is a :class:`StructureConstants` or a raw mapping
    ``(i, j, k) -> value`` over all index orders (then ``n`` is required).
    The Jacobi residual checked is
    ``mu_ij^a mu_ak^b + mu_jk^a mu_ai^b + mu_ki^a mu_aj^b`` for every i, j, k, b.
    """
    if isinstance(sc, StructureConstants):
        n = sc.n
        raw = {(i, j, k): v for i, j, k, v in sc.full_entries()}
    else:
        if n is None:
            raise MalformedInput("dimension required for a raw structure mapping")
        raw = {}
        for key, v in sc.items():
            if len(key) != 3 or not all(isinstance(x, int) and 1 <= x <= n for x in key):
                raise MalformedInput(f"index out of range in {key}")
            v = Fraction(v)
            if v:
                raw[tuple(key)] = v

    report = ValidationReport()
    seen = set()
    for (i, j, k), v in sorted(raw.items()):
        if (i, j, k) in seen:
            continue
        if raw.get((j, i, k), 0) != -v:
            report.antisymmetry.append((min(i, j), max(i, j), k))
            seen.add((j, i, k))
        seen.add((i, j, k))
    report.antisymmetry = sorted(set(report.antisymmetry))

    # T[i,j,k,b] = sum_a mu_ij^a mu_ak^b, computed over nonzeros only
    by_first = defaultdict(list)
    for (a, k, b), v in raw.items():
        by_first[a].append((k, b, v))
    T = defaultdict(Fraction)
    for (i, j, a), v in raw.items():
        for k, b, w in by_first.get(a, ()):
            T[(i, j, k, b)] += v * w
    candidates = set()
    for (i, j, k, b) in T:
        candidates.update({(i, j, k, b), (j, k, i, b), (k, i, j, b)})
    bad = []
    for (i, j, k, b) in sorted(candidates):
        r = T.get((i, j, k, b), 0) + T.get((j, k, i, b), 0) + T.get((k, i, j, b), 0)
        if r:
            bad.append((i, j, k, b))
    report.jacobi = bad
    return report


# --- classical families -----------------------------------------------------

def _coords_from_matrices(basis: list[np.ndarray], coord) -> dict:
    n = len(basis)
    mu = {}
    for i in range(n):
        for j in range(i + 1, n):
            C = basis[i] @ basis[j] - basis[j] @ basis[i]
            for k, c in enumerate(coord(C)):
                if c:
                    mu[(i + 1, j + 1, k + 1)] = Fraction(int(c))
    return mu


def _sl_basis(m: int):
    basis = []
    for p in range(m):
        for q in range(m):
            if p != q:
                E = np.zeros((m, m), dtype=np.int64)
                E[p, q] = 1
                basis.append(E)
    for p in range(m - 1):
        H = np.zeros((m, m), dtype=np.int64)
        H[p, p], H[p + 1, p + 1] = 1, -1
        basis.append(H)

    def coord(C):
        off = [C[p, q] for p in range(m) for q in range(m) if p != q]
        # traceless diagonal D = sum_p c_p (E_pp - E_p+1,p+1) with c_p = D_11 + ... + D_pp
        diag = list(np.cumsum(np.diag(C))[: m - 1])
        return off + diag

    return basis, coord


def _so_basis(m: int):
    basis = []
    pairs = [(p, q) for p in range(m) for q in range(p + 1, m)]
    for p, q in pairs:
        A = np.zeros((m, m), dtype=np.int64)
        A[p, q], A[q, p] = 1, -1
        basis.append(A)
    return basis, lambda C: [C[p, q] for p, q in pairs]


def _sp_basis(two_r: int):
    r = two_r // 2
    basis = []
    # block form [[A, B], [C, -A^T]] with B, C symmetric
    for i in range(r):
        for j in range(r):
            X = np.zeros((two_r, two_r), dtype=np.int64)
            X[i, j] += 1
            X[r + j, r + i] -= 1
            basis.append(X)
    upper = [(i, j) for i in range(r) for j in range(i, r)]
    for i, j in upper:
        X = np.zeros((two_r, two_r), dtype=np.int64)
        X[i, r + j] = 1
        X[j, r + i] = 1
        basis.append(X)
    for i, j in upper:
        X = np.zeros((two_r, two_r), dtype=np.int64)
        X[r + i, j] = 1
        X[r + j, i] = 1
        basis.append(X)

    def coord(C):
        a = [C[i, j] for i in range(r) for j in range(r)]
        b = [C[i, r + j] for i, j in upper]
        c = [C[r + i, j] for i, j in upper]
        return a + b + c

    return basis, coord


_FAMILY_ALIASES = {
    "special_linear": "special_linear", "sl": "special_linear",
    "orthogonal": "orthogonal", "so": "orthogonal",
    "symplectic": "symplectic", "sp": "symplectic",
}


def _family(family: str, m: int):
    fam = _FAMILY_ALIASES.get(family)
    if fam is None:
        raise MalformedInput(f"unknown family {family!r}")
    if not isinstance(m, int) or m < 1:
        raise NotSemisimpleFamily(f"bad parameter {m!r}")
    if fam == "special_linear":
        if m < 2:
            raise NotSemisimpleFamily("sl(m) needs m >= 2")
        return _sl_basis(m), f"sl({m})"
    if fam == "orthogonal":
        if m < 3:
            raise NotSemisimpleFamily("so(m) needs m >= 3")
        return _so_basis(m), f"so({m})"
    if m < 2 or m % 2:
        raise NotSemisimpleFamily("sp(m) needs an even m >= 2")
    return _sp_basis(m), f"sp({m})"


def classical_matrices(family: str, m: int) -> list[np.ndarray]:
    """The matrix basis used by :func:`build_classical`, in order."""
    (basis, _), _ = _family(family, m)
    return basis


def build_classical(family: str, m: int) -> StructureConstants:
    """Structure constants of sl(m), so(m) or sp(m) in a matrix basis.

    Bases (in this order):

    * ``special_linear``: ``E_pq`` for p != q (row-major), then
      ``E_pp - E_{p+1,p+1}``; dimension m^2 - 1.
    * ``orthogonal``: ``E_pq - E_qp`` for p < q (row-major); dimension m(m-1)/2.
    * ``symplectic`` (m = 2r): matrices ``[[A, B], [C, -A^T]]`` with B, C
      symmetric; ``E_ij - E_{r+j,r+i}`` row-major, then ``E_{i,r+j} + E_{j,r+i}``
      and ``E_{r+i,j} + E_{r+j,i}`` for i <= j (for i = j just ``E_{i,r+i}``
      and ``E_{r+i,i}``); dimension r(2r+1).
    """
    (basis, coord), label = _family(family, m)
    return StructureConstants(len(basis), _coords_from_matrices(basis, coord), label)


def direct_sum(a: StructureConstants, b: StructureConstants) -> StructureConstants:
    for s in (a, b):
        if not validate_structure(s).empty:
            raise MalformedInput(f"invalid summand {s.label or '<algebra>'}")
    mu = dict(a.mu)
    off = a.n
    for (i, j, k), v in b.mu.items():
        mu[(i + off, j + off, k + off)] = v
    label = f"{a.label}+{b.label}" if a.label and b.label else ""
    return StructureConstants(a.n + b.n, mu, label)


# --- basis change ------------------------------------------------------------

@dataclass(frozen=True)
class BasisChange:
    """New basis ``w_j = sum_i T[i, j] v_i`` (columns of T are the new vectors)."""

    n: int
    T: RationalMatrix

    def __post_init__(self):
        if self.T.shape != (self.n, self.n):
            raise MalformedInput(f"basis change must be {self.n}x{self.n}")
        if det_exact(self.T) == 0:
            raise SingularMatrix("basis change matrix is singular")

    def inverse(self) -> "BasisChange":
        return BasisChange(self.n, invert_exact(self.T))

    def compose(self, inner: "BasisChange") -> "BasisChange":
        """``self ∘ inner``: apply ``inner`` first, then ``self``.

        ``change_basis(sc, g.compose(h)) == change_basis(change_basis(sc, h), g)``.
        The combined new basis is ``v · T_h · T_g``.
        """
        return BasisChange(self.n, inner.T @ self.T)


def change_basis(sc: StructureConstants, g: BasisChange) -> StructureConstants:
    """mu'_ij^k = sum_{a,b,c} T_ai T_bj mu_ab^c (T^-1)_kc."""
    if g.n != sc.n:
        raise MalformedInput(f"basis change of size {g.n} on a {sc.n}-dimensional algebra")
    n = sc.n
    T = np.array(g.T.tolist(), dtype=object)
    Tinv = np.array(invert_exact(g.T).tolist(), dtype=object)
    A = sc.dense()
    A = np.tensordot(T.T, A, axes=(1, 0))                    # [i, b, c]
    A = np.tensordot(A, T, axes=(1, 0)).transpose(0, 2, 1)   # [i, j, c]
    A = np.tensordot(A, Tinv.T, axes=(2, 0))                 # [i, j, k]
    mu = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = Fraction(A[i, j, k])
                if v:
                    mu[(i + 1, j + 1, k + 1)] = v
    return StructureConstants(n, mu, sc.label)


def random_invertible(n: int, seed: int, bound: int = 2) -> BasisChange:
    """Deterministic ``L @ U`` with unit-triangular integer factors, det = 1."""
    rng = np.random.default_rng(seed)
    L = np.eye(n, dtype=np.int64)
    U = np.eye(n, dtype=np.int64)
    for i, j in product(range(n), range(n)):
        if i > j:
            L[i, j] = rng.integers(-bound, bound + 1)
        elif i < j:
            U[i, j] = rng.integers(-bound, bound + 1)
    return BasisChange(n, RationalMatrix((L @ U).tolist()))
