"""Invariant vectors, algebra comparison and the chord-count bound."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .chords import ChordDiagram, enumerate_diagrams, format_diagram
from .killing import KillingData, casimir_theta
from .lie_algebra import StructureConstants
from .linalg_exact import format_rational
from .tensor_eval import evaluate_diagram, evaluate_float

DISTINCT = "distinct"
EQUAL_UP_TO = "equal_up_to"
CERTIFIED = "isomorphy_certified"


def theorem_bound(n: int) -> Fraction:
    """(1/8)(n^3 + n^2)(n + 1)^2 (2n + 1)^(2 n^2), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction((n**3 + n**2) * (n + 1) ** 2 * (2 * n + 1) ** (2 * n * n), 8)


def theorem_bound_floor(n: int) -> int:
    k = theorem_bound(n)
    return k.numerator // k.denominator


@dataclass
class InvariantVector:
    label: str
    max_chords: int
    values: dict = field(default_factory=dict)
    mode: str = "exact"

    def to_csv(self) -> str:
        lines = ["diagram,value"]
        for d, v in self.values.items():
            lines.append(f"{format_diagram(d)},{_fmt(v)}")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return format_rational(v)


def _diagrams(max_chords: int) -> list[ChordDiagram]:
    return [d for m in range(1, max_chords + 1) for d in enumerate_diagrams(m, "rotation")]


def _eval_one(args):
    d, sc, kd, mode = args
    return evaluate_diagram(d, sc, kd) if mode == "exact" else evaluate_float(d, sc, kd)


def invariant_vector(
    sc: StructureConstants,
    max_chords: int,
    mode: str = "exact",
    kd: KillingData | None = None,
    jobs: int = 1,
) -> InvariantVector:
    """Values of every rotation-canonical diagram with 1..max_chords chords."""
    if max_chords < 1:
        raise ValueError("max_chords must be >= 1")
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if kd is None:
        kd = casimir_theta(sc)
    ds = _diagrams(max_chords)
    tasks = [(d, sc, kd, mode) for d in ds]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            vals = list(ex.map(_eval_one, tasks))
    else:
        vals = [_eval_one(t) for t in tasks]
    return InvariantVector(sc.label, max_chords, dict(zip(ds, vals)), mode)


@dataclass
class Verdict:
    kind: str
    max_chords: int
    witness: ChordDiagram | None = None
    values: tuple | None = None

    def __str__(self) -> str:
        if self.kind == DISTINCT:
            a, b = self.values
            return f"distinct witness={format_diagram(self.witness)} values={_fmt(a)},{_fmt(b)}"
        if self.kind == EQUAL_UP_TO:
            return f"equal up to {self.max_chords} chords"
        return f"isomorphic (certified at {self.max_chords} chords)"


def _float_differs(x: float, y: float, rtol: float = 1e-9) -> bool:
    return abs(x - y) > rtol * max(1.0, abs(x), abs(y))


def compare_algebras(
    a: StructureConstants,
    b: StructureConstants,
    max_chords: int,
    prescreen: bool = False,
    ka: KillingData | None = None,
    kb: KillingData | None = None,
) -> Verdict:
    """Compare chord-diagram invariants for m = 1, 2, ... up to ``max_chords``.

    Stops at the first diagram (canonical order) with different exact values.
    With ``prescreen`` each level is first scanned in floating point; a float
    difference is confirmed exactly before it is reported, and agreeing levels
    are still confirmed exactly.
    """
    ka = casimir_theta(a) if ka is None else ka
    kb = casimir_theta(b) if kb is None else kb
    one = enumerate_diagrams(1)[0]
    if a.n != b.n:
        return Verdict(DISTINCT, max_chords, one, (Fraction(a.n), Fraction(b.n)))
    for m in range(1, max_chords + 1):
        ds = enumerate_diagrams(m, "rotation")
        if prescreen:
            for d in ds:
                if _float_differs(evaluate_float(d, a, ka), evaluate_float(d, b, kb)):
                    va, vb = evaluate_diagram(d, a, ka), evaluate_diagram(d, b, kb)
                    if va != vb:
                        return Verdict(DISTINCT, max_chords, d, (va, vb))
        for d in ds:
            va, vb = evaluate_diagram(d, a, ka), evaluate_diagram(d, b, kb)
            if va != vb:
                return Verdict(DISTINCT, max_chords, d, (va, vb))
    if max_chords >= theorem_bound_floor(a.n):
        return Verdict(CERTIFIED, max_chords)
    return Verdict(EQUAL_UP_TO, max_chords)
