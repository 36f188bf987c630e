"""Chord diagrams as closed (mu, theta) tensor networks, and their contraction.

A chord diagram with m chords gives the scalar

    W(D) = sum  prod_p mu_{a_p c_p}^{c_{p+1}}  prod_{{p,q} chord} theta^{a_p a_q}

over circle indices c_1..c_2m (cyclic) and chord-leg indices a_1..a_2m: the
circle edge leaving position p enters position p+1 at the second input, the
chord leg enters at the first input. Equivalently W(D) is a trace of products
of ad-matrices with Casimir insertions, which is what the sweep evaluates.

Exact evaluation clears denominators once (mu scaled by ``dmu``, theta by
``dth``) and runs on Python integers; the final value is divided by
``dmu^(2m) dth^m``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .chords import ChordDiagram
from .errors import BudgetExceeded, MalformedInput
from .killing import KillingData
from .lie_algebra import StructureConstants

MU_PORTS = ("in1", "in2", "out")
THETA_PORTS = ("p1", "p2")

# elements per state block in the sweep kernel
EXACT_BLOCK = 1_500_000
FLOAT_BLOCK = 8_000_000


@dataclass(frozen=True)
class TensorNetwork:
    """Closed network of mu-nodes and theta-nodes.

    ``edges`` pairs ports ``(kind, index, port)`` with kind ``"mu"`` or
    ``"theta"``; each edge carries one index of dimension ``n``.
    """

    n: int
    n_mu: int
    n_theta: int
    edges: tuple
    diagram: ChordDiagram | None = field(default=None, compare=False)

    def ports(self):
        for i in range(self.n_mu):
            for p in MU_PORTS:
                yield ("mu", i, p)
        for j in range(self.n_theta):
            for p in THETA_PORTS:
                yield ("theta", j, p)

    def check_closed(self) -> None:
        used = [x for e in self.edges for x in e]
        if sorted(used) != sorted(self.ports()):
            raise MalformedInput("network is not closed: every port must lie on exactly one edge")

    def node_labels(self) -> list[list[int]]:
        """Index labels (edge ids) of every tensor, mu-nodes first, in port order."""
        where = {}
        for eid, (x, y) in enumerate(self.edges):
            where[x] = eid
            where[y] = eid
        labels = [[where[("mu", i, p)] for p in MU_PORTS] for i in range(self.n_mu)]
        labels += [[where[("theta", j, p)] for p in THETA_PORTS] for j in range(self.n_theta)]
        return labels


@dataclass(frozen=True)
class ContractionPlan:
    """Pairwise contraction path in SSA form (as used by opt_einsum).

    Tensor ids ``0..n_mu-1`` are mu-nodes, then theta-nodes; each step
    contracts two live ids into a new id. ``widths[s]`` is the number of open
    indices of the intermediate produced by step s.
    """

    kind: str
    steps: tuple[tuple[int, int], ...]
    widths: tuple[int, ...]
    peak_width: int
    cost: int
    naive_cost: int
    start: int | None = None
    order: tuple[int, ...] = ()
    n: int = 1

    @property
    def peak_size(self) -> int:
        return self.n ** self.peak_width

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "steps": [list(s) for s in self.steps],
            "widths": list(self.widths),
            "peak_width": self.peak_width,
            "cost": self.cost,
            "naive_cost": self.naive_cost,
            "start": self.start,
        }


def build_network(d: ChordDiagram, n: int) -> TensorNetwork:
    N = d.points
    edges = []
    for p in range(N):
        # circle edge p -> p+1 enters the second input
        edges.append((("mu", p, "out"), ("mu", (p + 1) % N, "in2")))
    for j, (a, b) in enumerate(d.pairs):
        edges.append((("theta", j, "p1"), ("mu", a - 1, "in1")))
        edges.append((("theta", j, "p2"), ("mu", b - 1, "in1")))
    return TensorNetwork(n, N, d.m, tuple(edges), diagram=d)


def _simulate(labels: list[list[int]], steps, n: int) -> tuple[list[int], int]:
    live = {i: set(l) for i, l in enumerate(labels)}
    # an index repeated on one tensor is traced immediately
    for i, l in enumerate(labels):
        live[i] = {x for x in l if l.count(x) == 1}
    nxt = len(labels)
    widths, cost = [], 0
    for a, b in steps:
        A, B = live.pop(a), live.pop(b)
        cost += n ** len(A | B)
        res = A ^ B
        live[nxt] = res
        nxt += 1
        widths.append(len(res))
    return widths, cost


def _sweep_order(d: ChordDiagram) -> tuple[int, list[int], int]:
    """Best start position (0-based) for the sweep and the max open chord count."""
    N = d.points
    best = None
    for s in range(N):
        opened, peak = set(), 0
        for t in range(N):
            p = (s + t) % N
            q = d.partners[p] - 1
            if q in opened:
                opened.discard(q)
            else:
                opened.add(p)
            peak = max(peak, len(opened))
        if best is None or peak < best[1]:
            best = (s, peak)
    s, peak = best
    return s, [(s + t) % N for t in range(N)], peak


def _sweep_steps(d: ChordDiagram, start: int, order: list[int]):
    N = d.points
    chord_of = {}
    for j, (a, b) in enumerate(d.pairs):
        chord_of[a - 1] = chord_of[b - 1] = j
    steps, seen = [], set()
    cur = order[0]
    nxt = N + d.m
    seen.add(order[0])
    for p in order[1:]:
        q = d.partners[p] - 1
        if q in seen:
            steps.append((cur, N + chord_of[p]))
            cur = nxt
            nxt += 1
        steps.append((cur, p))
        cur = nxt
        nxt += 1
        seen.add(p)
    return steps


def _greedy_steps(labels: list[list[int]], n: int):
    live = {i: frozenset(x for x in l if l.count(x) == 1) for i, l in enumerate(labels)}
    nxt = len(labels)
    steps = []
    while len(live) > 1:
        best = None
        ids = sorted(live)
        for a, b in itertools.combinations(ids, 2):
            A, B = live[a], live[b]
            shared = A & B
            if not shared and best is not None and best[0][0] == 0:
                continue
            key = (0 if shared else 1, len(A ^ B), len(A | B), a, b)
            if best is None or key < best[0]:
                best = (key, a, b)
        _, a, b = best
        res = live.pop(a) ^ live.pop(b)
        live[nxt] = res
        steps.append((a, b))
        nxt += 1
    return steps


def plan_contraction(net: TensorNetwork) -> ContractionPlan:
    """Sweep plan for chord-diagram networks, greedy plan otherwise."""
    labels = net.node_labels()
    n_tensors = len(labels)
    naive = net.n ** len(net.edges) * max(n_tensors - 1, 1)
    if net.diagram is not None:
        start, order, _ = _sweep_order(net.diagram)
        steps = _sweep_steps(net.diagram, start, order)
        kind = "sweep"
    else:
        steps, start, order = _greedy_steps(labels, net.n), None, []
        kind = "greedy"
    widths, cost = _simulate(labels, steps, net.n)
    return ContractionPlan(
        kind=kind,
        steps=tuple(steps),
        widths=tuple(widths),
        peak_width=max(widths, default=0),
        cost=cost,
        naive_cost=naive,
        start=start,
        order=tuple(order),
        n=net.n,
    )


# --- algebra data prepared for contraction ----------------------------------

class AlgebraTensors:
    """Integer-scaled and float copies of mu and theta, plus sparse views."""

    def __init__(self, sc: StructureConstants, kd: KillingData):
        n = sc.n
        if kd.theta.shape != (n, n):
            raise MalformedInput(f"Killing data of size {kd.theta.shape} for a {n}-dimensional algebra")
        self.n = n
        self.sc = sc
        self.kd = kd
        entries = list(sc.full_entries())
        self.dmu = lcm(1, *(v.denominator for *_, v in entries))
        self.dth = lcm(1, *(x.denominator for r in kd.theta.tolist() for x in r))

        mu = np.zeros((n, n, n), dtype=object)
        for i, j, k, v in entries:
            mu[i - 1, j - 1, k - 1] = int(v * self.dmu)
        th = np.array([[int(x * self.dth) for x in r] for r in kd.theta.tolist()], dtype=object)
        self.mu_int = mu
        self.theta_int = th
        self.mu_float = np.array([[[float(Fraction(x)) / self.dmu for x in r] for r in M] for M in mu], dtype=float)
        self.theta_float = th.astype(float) / self.dth

        # X_a[c, c'] = mu_{a c}^{c'};  Xup^a[c, c'] = theta^{ab} mu_{b c}^{c'}
        self.mu_nz = [(i - 1, j - 1, k - 1, int(v * self.dmu)) for i, j, k, v in entries]
        up = defaultdict(int)
        th_rows = defaultdict(list)
        for a in range(n):
            for b in range(n):
                if th[a, b]:
                    th_rows[b].append((a, th[a, b]))
        for b, c, c2, v in self.mu_nz:
            for a, t in th_rows.get(b, ()):
                up[(a, c, c2)] += t * v
        self.up_nz = sorted((a, c, c2, v) for (a, c, c2), v in up.items() if v)
        # float views for the dense BLAS path
        self.X_float = np.transpose(self.mu_float, (1, 0, 2)).copy()          # [c, a, c']
        self.Xup_float = np.einsum("ab,bcd->acd", self.theta_float, self.mu_float)  # [a, c, c']

    def scale(self, n_mu: int, n_theta: int) -> int:
        return self.dmu ** n_mu * self.dth ** n_theta


_CACHE: dict = {}


def algebra_tensors(sc: StructureConstants, kd: KillingData) -> AlgebraTensors:
    key = (id(sc), id(kd))
    hit = _CACHE.get(key)
    if hit is not None and hit.sc is sc and hit.kd is kd:
        return hit
    if len(_CACHE) > 32:
        _CACHE.clear()
    at = AlgebraTensors(sc, kd)
    _CACHE[key] = at
    return at


# --- sweep kernel ------------------------------------------------------------

def _sweep(d: ChordDiagram, at: AlgebraTensors, exact: bool):
    """Transfer-matrix sweep around the circle.

    The state has one axis per open chord (the chord-leg index at its first
    endpoint), then the block of starting circle indices, then the current
    circle index. Opening applies X_a; closing applies Xup^a summed against
    the stored leg index.
    """
    n = at.n
    start, order, peak_open = _sweep_order(d)
    block_budget = EXACT_BLOCK if exact else FLOAT_BLOCK
    per_start = n ** (peak_open + 1)
    chunk = max(1, min(n, block_budget // max(per_start, 1)))
    total = 0 if exact else 0.0
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        if exact:
            state = np.zeros((hi - lo, n), dtype=object)
        else:
            state = np.zeros((hi - lo, n), dtype=float)
        for r in range(hi - lo):
            state[r, lo + r] = 1
        open_axes: list[int] = []  # position that opened each axis
        for p in order:
            q = d.partners[p] - 1
            if q in open_axes:
                t = open_axes.index(q)
                state = _close(state, t, at, exact)
                open_axes.pop(t)
            else:
                state = _open(state, at, exact)
                open_axes.append(p)
        assert not open_axes
        rows = np.arange(hi - lo)
        total += state[rows, lo + rows].sum()
    return total


def _open(state, at: AlgebraTensors, exact: bool):
    n = at.n
    if not exact:
        # (..., blk, c) x [c, a, c'] -> (..., blk, a, c') -> (..., a, blk, c')
        out = np.tensordot(state, at.X_float, axes=([-1], [0]))
        return np.moveaxis(out, -2, -3)
    shape = state.shape[:-2] + (n,) + state.shape[-2:]
    out = np.zeros(shape, dtype=object)
    cols = [state[..., c] for c in range(n)]
    for a, c, c2, v in at.mu_nz:
        src = cols[c]
        if v == 1:
            out[..., a, :, c2] += src
        elif v == -1:
            out[..., a, :, c2] -= src
        else:
            out[..., a, :, c2] += src * v
    return out


def _close(state, t: int, at: AlgebraTensors, exact: bool):
    if not exact:
        out = np.tensordot(state, at.Xup_float, axes=([t, state.ndim - 1], [0, 1]))
        return out
    shape = state.shape[:t] + state.shape[t + 1:]
    out = np.zeros(shape, dtype=object)
    idx = [slice(None)] * state.ndim
    for a, c, c2, w in at.up_nz:
        idx[t] = a
        idx[-1] = c
        out[..., c2] += state[tuple(idx)] * w
    return out


def _check_dims(d: ChordDiagram, sc: StructureConstants, kd: KillingData) -> None:
    if not isinstance(d, ChordDiagram):
        raise MalformedInput("expected a ChordDiagram")
    if kd.B.shape != (sc.n, sc.n) or kd.theta.shape != (sc.n, sc.n):
        raise MalformedInput(f"Killing data does not match a {sc.n}-dimensional algebra")


def evaluate_diagram(d: ChordDiagram, sc: StructureConstants, kd: KillingData) -> Fraction:
    """Exact W(D). Any matching is accepted, canonical or not."""
    _check_dims(d, sc, kd)
    at = algebra_tensors(sc, kd)
    raw = _sweep(d, at, exact=True)
    return Fraction(int(raw), at.scale(d.points, d.m))


def evaluate_float(d: ChordDiagram, sc: StructureConstants, kd: KillingData) -> float:
    _check_dims(d, sc, kd)
    at = algebra_tensors(sc, kd)
    return float(_sweep(d, at, exact=False))


def naive_work(d: ChordDiagram, sc: StructureConstants, kd: KillingData) -> int:
    """Upper bound on the index tuples the zero-skipping naive loop visits."""
    rows = defaultdict(int)
    for a, c, c2, v in sc.full_entries():
        rows[c] += 1
    r = max(rows.values(), default=0)
    return sc.n * r ** d.points


def evaluate_naive(d: ChordDiagram, sc: StructureConstants, kd: KillingData, budget: int = 5_000_000) -> Fraction:
    """Direct loop over the defining sum, skipping index tuples with a zero factor.

    Walks the circle position by position choosing (a_p, c_{p+1}) with
    ``mu_{a_p c_p}^{c_{p+1}} != 0``; at the second endpoint of a chord only
    legs with ``theta^{a_p a_q} != 0`` are kept. Works in Fractions on the
    original constants and shares no code with the sweep.
    """
    _check_dims(d, sc, kd)
    work = naive_work(d, sc, kd)
    if work > budget:
        raise BudgetExceeded(f"naive evaluation would visit up to {work} index tuples (budget {budget})")
    # by_in2[c] = [(a, c2, v)] with mu_{a c}^{c2} = v
    by_in2 = defaultdict(list)
    for a, c, c2, v in sc.full_entries():
        by_in2[c].append((a, c2, v))
    theta = kd.theta
    N = d.points
    partner = [q - 1 for q in d.partners]
    legs = [0] * N
    total = Fraction(0)

    def walk(p: int, c: int, c1: int, acc: Fraction):
        nonlocal total
        q = partner[p]
        for a, c2, v in by_in2.get(c, ()):
            if q < p:
                t = theta[legs[q] - 1, a - 1]
                if not t:
                    continue
                w = acc * v * t
            else:
                w = acc * v
            if p == N - 1:
                if c2 == c1:
                    total += w
                continue
            legs[p] = a
            walk(p + 1, c2, c1, w)

    for c1 in range(1, sc.n + 1):
        walk(0, c1, c1, Fraction(1))
    return total


# --- generic dense contraction (any closed network) ---------------------------

def _node_tensors(net: TensorNetwork, at: AlgebraTensors, exact: bool):
    mu = at.mu_int if exact else at.mu_float
    th = at.theta_int if exact else at.theta_float
    return [mu] * net.n_mu + [th] * net.n_theta


def contract_network(net: TensorNetwork, at: AlgebraTensors, plan: ContractionPlan | None = None, exact: bool = True):
    """Contract any closed network with dense pairwise tensordots.

    Returns a Fraction in exact mode, a float otherwise.
    """
    if net.n != at.n:
        raise MalformedInput(f"network of dimension {net.n} against a {at.n}-dimensional algebra")
    net.check_closed()
    labels = net.node_labels()
    if not labels:
        return Fraction(1) if exact else 1.0
    if plan is None or plan.kind != "greedy":
        plan = ContractionPlan("greedy", tuple(_greedy_steps(labels, net.n)), (), 0, 0, 0)
    tensors = {}
    for i, (T, l) in enumerate(zip(_node_tensors(net, at, exact), labels)):
        keep = [x for x in l if l.count(x) == 1]
        if len(keep) != len(l):
            letters = {x: chr(97 + k) for k, x in enumerate(dict.fromkeys(l))}
            spec = "".join(letters[x] for x in l) + "->" + "".join(letters[x] for x in keep)
            T = np.einsum(spec, T)
        tensors[i] = (T, keep)
    nxt = len(labels)
    for a, b in plan.steps:
        (A, la), (B, lb) = tensors.pop(a), tensors.pop(b)
        shared = [x for x in la if x in lb]
        res = np.tensordot(A, B, axes=([la.index(x) for x in shared], [lb.index(x) for x in shared]))
        tensors[nxt] = (res, [x for x in la if x not in shared] + [x for x in lb if x not in shared])
        nxt += 1
    (T, l), = tensors.values()
    assert not l
    val = T.item() if isinstance(T, np.ndarray) else T
    if exact:
        return Fraction(int(val), at.scale(net.n_mu, net.n_theta))
    return float(val)
