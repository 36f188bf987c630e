"""Chord diagrams: perfect matchings of 2m points on a circle.

A diagram is stored as its partner sequence: ``partners[p-1]`` is the point
matched with ``p``. Rotations relabel ``p -> p + r (mod 2m)``; reflections
``p -> 1 - p (mod 2m)`` (then rotate).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import MalformedInput

SYMMETRIES = ("none", "rotation", "dihedral")


@dataclass(frozen=True, order=True)
class ChordDiagram:
    partners: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.partners)
        object.__setattr__(self, "partners", p)
        N = len(p)
        if N == 0 or N % 2:
            raise MalformedInput("a chord diagram needs an even, positive number of points")
        for i, q in enumerate(p, start=1):
            if not isinstance(q, int) or not 1 <= q <= N or q == i or p[q - 1] != i:
                raise MalformedInput(f"not a perfect matching: {p}")

    @classmethod
    def from_pairs(cls, pairs) -> "ChordDiagram":
        pairs = [tuple(x) for x in pairs]
        N = 2 * len(pairs)
        partners = [0] * N
        for a, b in pairs:
            for x in (a, b):
                if not 1 <= x <= N:
                    raise MalformedInput(f"point {x} outside 1..{N}")
                if partners[x - 1]:
                    raise MalformedInput(f"point {x} repeated")
            if a == b:
                raise MalformedInput(f"chord {a}-{b} joins a point to itself")
            partners[a - 1], partners[b - 1] = b, a
        return cls(tuple(partners))

    @property
    def m(self) -> int:
        return len(self.partners) // 2

    @property
    def points(self) -> int:
        return len(self.partners)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, q) for i, q in enumerate(self.partners, start=1) if i < q)

    def rotate(self, r: int) -> "ChordDiagram":
        N = self.points
        out = [0] * N
        for i, q in enumerate(self.partners):
            out[(i + r) % N] = (q - 1 + r) % N + 1
        return ChordDiagram(tuple(out))

    def reflect(self) -> "ChordDiagram":
        N = self.points
        out = [0] * N
        for i, q in enumerate(self.partners):
            out[(-i) % N] = (-(q - 1)) % N + 1
        return ChordDiagram(tuple(out))

    def __str__(self) -> str:
        return format_diagram(self)

    @property
    def is_canonical(self) -> bool:
        return canonicalize(self) == self


def _orbit(d: ChordDiagram, symmetry: str) -> list[ChordDiagram]:
    if symmetry == "none":
        return [d]
    seeds = [d] if symmetry == "rotation" else [d, d.reflect()]
    return [s.rotate(r) for s in seeds for r in range(d.points)]


def canonicalize(d: ChordDiagram, symmetry: str = "rotation") -> ChordDiagram:
    """Lexicographically least partner sequence over the symmetry orbit."""
    if symmetry not in SYMMETRIES:
        raise MalformedInput(f"unknown symmetry {symmetry!r}")
    return min(_orbit(d, symmetry))


def orbit(d: ChordDiagram, symmetry: str = "rotation") -> set[ChordDiagram]:
    return set(_orbit(d, symmetry))


def _matchings(N: int):
    """All perfect matchings of 1..N as partner lists, lexicographic order."""
    partners = [0] * (N + 1)

    def rec():
        try:
            first = partners.index(0, 1)
        except ValueError:
            yield tuple(partners[1:])
            return
        for q in range(first + 1, N + 1):
            if partners[q] == 0:
                partners[first], partners[q] = q, first
                yield from rec()
                partners[first] = partners[q] = 0

    yield from rec()


def enumerate_diagrams(m: int, symmetry: str = "rotation") -> list[ChordDiagram]:
    """Every m-chord diagram, one per orbit of the symmetry group, sorted."""
    if m < 1:
        raise MalformedInput("m must be >= 1")
    if symmetry not in SYMMETRIES:
        raise MalformedInput(f"unknown symmetry {symmetry!r}")
    out = []
    for p in _matchings(2 * m):
        d = ChordDiagram(p)
        # orbit members are all matchings, so keeping fixed points of
        # canonicalize keeps exactly one per orbit
        if symmetry == "none" or canonicalize(d, symmetry) == d:
            out.append(d)
    return sorted(out)


_PAIR_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_diagram(text: str, canonical: bool = True) -> ChordDiagram:
    """Parse ``"1-4,2-6,3-5"``; rotation-canonicalized unless ``canonical=False``."""
    if not isinstance(text, str) or not text.strip():
        raise MalformedInput("empty diagram")
    pairs = []
    for part in text.split(","):
        m = _PAIR_RE.match(part)
        if m is None:
            raise MalformedInput(f"bad chord {part!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    d = ChordDiagram.from_pairs(pairs)
    return canonicalize(d) if canonical else d


def format_diagram(d: ChordDiagram) -> str:
    return ",".join(f"{a}-{b}" for a, b in d.pairs)
