"""Scan so(7) and sp(6) chord by chord, then confirm differences exactly.

Both algebras have dimension 21. The script prints every diagram's float
values and the exact values of the diagrams where they differ.
"""

import argparse
import time
from dataclasses import dataclass

from chordinv.chords import enumerate_diagrams
from chordinv.killing import casimir_theta
from chordinv.lie_algebra import build_classical
from chordinv.tensor_eval import evaluate_diagram, evaluate_float


@dataclass
class Config:
    max_chords: int = 4
    rtol: float = 1e-9
    exact_all: bool = False  # confirm every differing diagram, not just the first


def main(cfg: Config) -> None:
    a, b = build_classical("so", 7), build_classical("sp", 6)
    ka, kb = casimir_theta(a), casimir_theta(b)
    found = []
    for m in range(1, cfg.max_chords + 1):
        t0 = time.perf_counter()
        for d in enumerate_diagrams(m):
            x, y = evaluate_float(d, a, ka), evaluate_float(d, b, kb)
            differs = abs(x - y) > cfg.rtol * max(1.0, abs(x), abs(y))
            print(f"m={m} {str(d):<20} so7={x:<22.15g} sp6={y:<22.15g}{'  differs' if differs else ''}")
            if differs:
                found.append(d)
        print(f"# m={m} float scan {time.perf_counter() - t0:.2f} s")
    if not found:
        print("no difference found")
        return
    for d in found if cfg.exact_all else found[:1]:
        t0 = time.perf_counter()
        va, vb = evaluate_diagram(d, a, ka), evaluate_diagram(d, b, kb)
        print(f"exact {d}: so7={va} sp6={vb} [{time.perf_counter() - t0:.2f} s]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-chords", type=int, default=Config.max_chords)
    ap.add_argument("--exact-all", action="store_true")
    args = ap.parse_args()
    main(Config(max_chords=args.max_chords, exact_all=args.exact_all))
