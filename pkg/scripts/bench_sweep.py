"""Time exact, float and naive evaluation across algebras and chord counts."""

import argparse
import time
from dataclasses import dataclass, field

from chordinv.chords import enumerate_diagrams
from chordinv.errors import BudgetExceeded
from chordinv.killing import casimir_theta
from chordinv.lie_algebra import build_classical
from chordinv.tensor_eval import build_network, evaluate_diagram, evaluate_float, evaluate_naive, plan_contraction


@dataclass
class Config:
    algebras: list = field(default_factory=lambda: [("sl", 2), ("sl", 3), ("so", 5), ("sl", 4), ("so", 7)])
    max_chords: int = 3
    naive_budget: int = 2_000_000


def timed(fn, *args):
    t0 = time.perf_counter()
    try:
        fn(*args)
    except BudgetExceeded:
        return float("nan")
    return time.perf_counter() - t0


def main(cfg: Config) -> None:
    print(f"{'algebra':<8}{'n':>4}{'m':>3}{'diagrams':>10}{'peak':>6}{'exact s':>10}{'float s':>10}{'naive s':>10}")
    for fam, p in cfg.algebras:
        sc = build_classical(fam, p)
        kd = casimir_theta(sc)
        for m in range(1, cfg.max_chords + 1):
            ds = enumerate_diagrams(m)
            peak = max(plan_contraction(build_network(d, sc.n)).peak_width for d in ds)
            te = sum(timed(evaluate_diagram, d, sc, kd) for d in ds)
            tf = sum(timed(evaluate_float, d, sc, kd) for d in ds)
            tn = sum(timed(lambda d: evaluate_naive(d, sc, kd, cfg.naive_budget), d) for d in ds)
            print(f"{fam}({p})".ljust(8) + f"{sc.n:>4}{m:>3}{len(ds):>10}{peak:>6}{te:>10.3f}{tf:>10.3f}{tn:>10.3f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-chords", type=int, default=Config.max_chords)
    args = ap.parse_args()
    main(Config(max_chords=args.max_chords))
