"""Compare invariant vectors of small isomorphic and non-isomorphic pairs."""

import argparse
import time
from dataclasses import dataclass, field

from chordinv.invariants import compare_algebras
from chordinv.lie_algebra import build_classical, direct_sum


@dataclass
class Config:
    max_chords: int = 3
    prescreen: bool = True
    pairs: list = field(
        default_factory=lambda: [
            ("so3", "sl2"),
            ("so4", "sl2+sl2"),
            ("so5", "sp4"),
            ("so6", "sl4"),
            ("sl3", "so5"),
            ("so7", "sp6"),
        ]
    )


def build(name: str):
    if "+" in name:
        a, b = name.split("+")
        return direct_sum(build(a), build(b))
    return build_classical(name[:2], int(name[2:]))


def main(cfg: Config) -> None:
    print(f"{'pair':<18}{'n':>4}  verdict")
    for a, b in cfg.pairs:
        A, B = build(a), build(b)
        t0 = time.perf_counter()
        v = compare_algebras(A, B, cfg.max_chords, prescreen=cfg.prescreen)
        dt = time.perf_counter() - t0
        print(f"{a + ' vs ' + b:<18}{A.n:>4}  {v}  [{dt:.2f} s]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-chords", type=int, default=Config.max_chords)
    ap.add_argument("--no-prescreen", action="store_true")
    args = ap.parse_args()
    main(Config(max_chords=args.max_chords, prescreen=not args.no_prescreen))
