"""Closed (mu, theta) pictures and their reduction to chord diagrams.

A picture pairs ports: mu-nodes have inputs ``in1``, ``in2`` and output
``out``; theta-nodes have two symmetric ports ``p1``, ``p2``. Contracting
requires every input to be fed either by a mu output or by a theta port, so a
valid picture is the same as a bijection ``feed: inputs -> sources``. The
rewrites below act on that bijection.

Rewrites used by :func:`reduce_picture`, all exact identities for a
semisimple algebra with theta the inverse Killing form:

* swap the two inputs of a mu-node (coefficient -1);
* Jacobi, ``[[x, y], z] = [x, [y, z]] - [y, [x, z]]``;
* theta slide, ``theta^{yx} mu_{xz}^o = theta^{ow} mu_{zw}^y`` (ad-invariance
  of theta), used to make the mu-only subgraph connected.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice

import networkx as nx

from .chords import ChordDiagram, canonicalize, format_diagram, parse_diagram
from .errors import InvariantViolated, MalformedInput
from .killing import KillingData, casimir_theta
from .lie_algebra import StructureConstants
from .linalg_exact import format_rational, parse_rational
from .tensor_eval import (
    MU_PORTS,
    THETA_PORTS,
    TensorNetwork,
    algebra_tensors,
    contract_network,
    evaluate_diagram,
)

INPUTS = ("in1", "in2")


def _port_kind(port: str) -> str:
    if port in MU_PORTS:
        return "mu"
    if port in THETA_PORTS:
        return "theta"
    raise MalformedInput(f"unknown port {port!r}")


@dataclass(frozen=True)
class ClosedPicture:
    """Raw picture: node counts and a tuple of port pairs.

    Ports are ``(kind, index, name)`` with 0-based indices counted separately
    for mu-nodes and theta-nodes. Invalid pictures can be represented so that
    :func:`validate_picture` can report on them.
    """

    n_mu: int
    n_theta: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted((tuple(a), tuple(b)))) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_feed(cls, n_mu: int, n_theta: int, feed: dict) -> "ClosedPicture":
        return cls(n_mu, n_theta, tuple((src, dst) for dst, src in feed.items()))

    def feed(self) -> dict:
        """Map each mu input port to the port feeding it; requires a valid picture."""
        rep = validate_picture(self)
        if not rep.empty:
            raise MalformedInput(f"invalid picture: {rep.summary()}")
        out = {}
        for a, b in self.edges:
            if a[2] in INPUTS:
                out[a] = b
            else:
                out[b] = a
        return dict(sorted(out.items()))

    def to_network(self, n: int) -> TensorNetwork:
        return TensorNetwork(n, self.n_mu, self.n_theta, self.edges)

    def to_json(self) -> dict:
        return {
            "mu_nodes": self.n_mu,
            "theta_nodes": self.n_theta,
            "edges": [[a[1], a[2], b[1], b[2]] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, obj) -> "ClosedPicture":
        if not isinstance(obj, dict) or not {"mu_nodes", "theta_nodes", "edges"} <= obj.keys():
            raise MalformedInput('picture JSON needs "mu_nodes", "theta_nodes" and "edges"')
        n_mu, n_theta = obj["mu_nodes"], obj["theta_nodes"]
        for v in (n_mu, n_theta):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise MalformedInput(f"bad node count {v!r}")
        edges = []
        for e in obj["edges"]:
            if not isinstance(e, list) or len(e) != 4:
                raise MalformedInput(f"bad edge {e!r}")
            u, pu, v, pv = e
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
                raise MalformedInput(f"bad node id in edge {e!r}")
            edges.append(((_port_kind(pu), u, pu), (_port_kind(pv), v, pv)))
        return cls(n_mu, n_theta, tuple(edges))


def load_picture(path) -> ClosedPicture:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg})") from None
    return ClosedPicture.from_json(obj)


@dataclass
class PictureReport:
    open_ports: list = field(default_factory=list)
    reused_ports: list = field(default_factory=list)
    unknown_ports: list = field(default_factory=list)
    orientation: list = field(default_factory=list)
    ratio: str | None = None

    @property
    def empty(self) -> bool:
        return not (self.open_ports or self.reused_ports or self.unknown_ports or self.orientation or self.ratio)

    def summary(self) -> str:
        parts = []
        for name in ("open_ports", "reused_ports", "unknown_ports", "orientation"):
            v = getattr(self, name)
            if v:
                parts.append(f"{name}={v}")
        if self.ratio:
            parts.append(f"ratio={self.ratio}")
        return "; ".join(parts) or "ok"


def validate_picture(p: ClosedPicture) -> PictureReport:
    rep = PictureReport()
    all_ports = {("mu", i, x) for i in range(p.n_mu) for x in MU_PORTS}
    all_ports |= {("theta", j, x) for j in range(p.n_theta) for x in THETA_PORTS}
    count = defaultdict(int)
    for a, b in p.edges:
        for x in (a, b):
            if x not in all_ports:
                rep.unknown_ports.append(x)
            count[x] += 1
        # contraction needs one lower index (a mu input) and one upper index
        lower = [x for x in (a, b) if x[2] in INPUTS]
        if len(lower) != 1:
            rep.orientation.append((a, b))
    rep.open_ports = sorted(x for x in all_ports if count[x] == 0)
    rep.reused_ports = sorted(x for x, c in count.items() if c > 1)
    rep.unknown_ports = sorted(set(rep.unknown_ports))
    if p.n_mu != 2 * p.n_theta:
        rep.ratio = f"{p.n_mu} mu-nodes vs {p.n_theta} theta-nodes (need twice as many mu)"
    return rep


def diagram_picture(d: ChordDiagram) -> ClosedPicture:
    N = d.points
    feed = {}
    for p in range(N):
        feed[("mu", (p + 1) % N, "in2")] = ("mu", p, "out")
    for j, (a, b) in enumerate(d.pairs):
        feed[("mu", a - 1, "in1")] = ("theta", j, "p1")
        feed[("mu", b - 1, "in1")] = ("theta", j, "p2")
    return ClosedPicture.from_feed(N, d.m, feed)


def evaluate_picture(p: ClosedPicture, sc: StructureConstants, kd: KillingData | None = None, exact: bool = True):
    """Contract the picture directly with the generic dense contractor."""
    rep = validate_picture(p)
    if not rep.empty:
        raise MalformedInput(f"invalid picture: {rep.summary()}")
    if kd is None:
        kd = casimir_theta(sc)
    return contract_network(p.to_network(sc.n), algebra_tensors(sc, kd), exact=exact)


# --- graph views ---------------------------------------------------------------

def _targets(feed: dict) -> dict:
    return {src: dst for dst, src in feed.items()}


def mu_subgraph(p: ClosedPicture | dict, nodes=None) -> nx.DiGraph:
    """The picture with theta-nodes deleted.

    Vertices are mu-node indices plus one univalent vertex ``("leg", t, port)``
    per theta port; edges follow the direction of evaluation (source -> node).
    """
    feed = p.feed() if isinstance(p, ClosedPicture) else p
    Q = nx.DiGraph()
    for (kind, i, port), src in feed.items():
        if nodes is not None and i not in nodes:
            continue
        Q.add_node(i)
        if src[0] == "mu":
            Q.add_edge(src[1], i)
        else:
            Q.add_edge(("leg", src[1], src[2]), i)
    return Q


def _mu_components(feed: dict) -> dict:
    """mu-node -> component id, for the mu-only graph."""
    G = nx.Graph()
    for dst, src in feed.items():
        G.add_node(dst[1])
        if src[0] == "mu":
            G.add_edge(src[1], dst[1])
    comp = {}
    for cid, c in enumerate(sorted(nx.connected_components(G), key=min)):
        for v in c:
            comp[v] = cid
    return comp


def picture_components(p: ClosedPicture) -> list[set]:
    """Connected components of the whole picture, as sets of mu-node indices."""
    feed = p.feed()
    G = nx.Graph()
    G.add_nodes_from(range(p.n_mu))
    legs = defaultdict(list)
    for dst, src in feed.items():
        if src[0] == "mu":
            G.add_edge(src[1], dst[1])
        else:
            legs[src[1]].append(dst[1])
    for t, ends in legs.items():
        G.add_edge(*ends)
    return sorted((set(c) for c in nx.connected_components(G)), key=min)


def find_unique_cycle(Q: nx.DiGraph) -> list:
    """The unique directed cycle of a connected mu-subgraph, in edge order.

    Starts at the smallest vertex on the cycle. Raises InvariantViolated if Q
    is not connected or does not have exactly one (directed) cycle.
    """
    if Q.number_of_nodes() == 0 or not nx.is_weakly_connected(Q):
        raise InvariantViolated("mu-subgraph is empty or disconnected")
    if Q.number_of_edges() != Q.number_of_nodes():
        raise InvariantViolated(
            f"mu-subgraph has {Q.number_of_nodes()} vertices and {Q.number_of_edges()} edges; expected equal counts"
        )
    cycles = list(islice(nx.simple_cycles(Q), 2))
    if len(cycles) != 1:
        raise InvariantViolated(f"expected exactly one directed cycle, found {'none' if not cycles else 'several'}")
    cyc = cycles[0]
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


# --- rewrites -----------------------------------------------------------------

def swap_inputs(feed: dict, node: int) -> dict:
    """Exchange the sources of ``in1`` and ``in2``; the value changes sign."""
    f = dict(feed)
    a, b = ("mu", node, "in1"), ("mu", node, "in2")
    f[a], f[b] = feed[b], feed[a]
    return f


def theta_slide(feed: dict, leg) -> dict:
    """Move a theta leg across the mu-node it feeds (value unchanged).

    With the leg L feeding input pi of node u, far leg L' feeding port Y,
    the other input of u fed by Z and u's output feeding O, the result feeds
    Z into pi, L into the other input, u's output into Y and L' into O.
    """
    tgt = _targets(feed)
    t, pl = leg[1], leg[2]
    far = ("theta", t, "p2" if pl == "p1" else "p1")
    u_port = tgt[leg]
    u = u_port[1]
    other = ("mu", u, "in2" if u_port[2] == "in1" else "in1")
    Y = tgt[far]
    out_u = ("mu", u, "out")
    O = tgt[out_u]
    Z = feed[other]
    f = dict(feed)
    if Y == other:
        # both legs of the theta feed u: z and y are the same index
        f[u_port] = out_u
        f[other] = leg
        f[O] = far
    elif O == other:
        # u feeds its own other input: z and o are the same index
        f[u_port] = far
        f[other] = leg
        f[Y] = out_u
    else:
        f[u_port] = Z
        f[other] = leg
        f[Y] = out_u
        f[O] = far
    return f


def jacobi_split(feed: dict, c: int) -> list[tuple[int, dict]]:
    """Rewrite mu(mu(x, y), z) at node c (in1 fed by node s) as two terms.

    ``[[x, y], z] = [x, [y, z]] - [y, [x, z]]``; node s becomes the inner
    bracket, node c the outer one, so the output of c is untouched.
    """
    src = feed[("mu", c, "in1")]
    if src[0] != "mu":
        raise InvariantViolated(f"node {c} first input is not fed by a mu-node")
    s = src[1]
    x, y = feed[("mu", s, "in1")], feed[("mu", s, "in2")]
    z = feed[("mu", c, "in2")]
    out = []
    for coeff, first, inner in ((1, x, y), (-1, y, x)):
        f = dict(feed)
        f[("mu", s, "in1")] = inner
        f[("mu", s, "in2")] = z
        f[("mu", c, "in1")] = first
        f[("mu", c, "in2")] = ("mu", s, "out")
        out.append((coeff, f))
    return out


def jacobi_triple(p: ClosedPicture, node: int) -> list[ClosedPicture]:
    """The three cyclic bracketings [[x,y],z], [[y,z],x], [[z,x],y] at ``node``.

    ``node``'s first input must be fed by a mu-node; the three pictures differ
    only in which of x, y, z goes where, and their values sum to zero.
    """
    feed = p.feed()
    src = feed[("mu", node, "in1")]
    if src[0] != "mu":
        raise MalformedInput(f"node {node} first input is not fed by a mu-node")
    s = src[1]
    if s == node:
        raise MalformedInput(f"node {node} feeds its own first input")
    slots = [("mu", s, "in1"), ("mu", s, "in2"), ("mu", node, "in2")]
    vals = [feed[x] for x in slots]
    out = []
    for r in range(3):
        f = dict(feed)
        for slot, v in zip(slots, vals[r:] + vals[:r]):
            f[slot] = v
        out.append(ClosedPicture.from_feed(p.n_mu, p.n_theta, f))
    return out


def connect_components(p: ClosedPicture, stats: dict | None = None) -> ClosedPicture:
    """Equal-valued picture whose mu-subgraph components match the picture's.

    While some theta joins two mu-components, slide one of its legs toward
    the cycle of its component; the slide that crosses a cycle edge merges
    the two components.
    """
    feed = p.feed()
    merges = slides = 0
    while True:
        comp = _mu_components(feed)
        tgt = _targets(feed)
        leg = None
        for t in range(p.n_theta):
            a, b = tgt[("theta", t, "p1")], tgt[("theta", t, "p2")]
            if comp[a[1]] != comp[b[1]]:
                leg = ("theta", t, "p1")
                break
        if leg is None:
            break
        before = len(set(comp.values()))
        for _ in range(p.n_mu + 1):
            feed = theta_slide(feed, leg)
            slides += 1
            if len(set(_mu_components(feed).values())) < before:
                break
            # keep walking with the leg that moved to u's old successor
            leg = ("theta", leg[1], "p2" if leg[2] == "p1" else "p1")
        else:
            raise InvariantViolated("theta slide walk did not reach a cycle")
        merges += 1
    if stats is not None:
        stats["corollary_steps"] = stats.get("corollary_steps", 0) + merges
        stats["slides"] = stats.get("slides", 0) + slides
    return ClosedPicture.from_feed(p.n_mu, p.n_theta, feed)


# --- reduction -------------------------------------------------------------------

@dataclass
class DiagramCombination:
    """Rational combination of products of chord diagrams.

    Keys are sorted tuples of rotation-canonical diagrams (the empty tuple is
    the empty product, value 1).
    """

    terms: dict = field(default_factory=dict)

    def add(self, key, coeff) -> None:
        key = tuple(sorted(key))
        v = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __mul__(self, other: "DiagramCombination") -> "DiagramCombination":
        out = DiagramCombination()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out.add(k1 + k2, c1 * c2)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagramCombination) and self.terms == other.terms

    def items(self):
        return sorted(self.terms.items())

    def evaluate(self, sc: StructureConstants, kd: KillingData | None = None) -> Fraction:
        if kd is None:
            kd = casimir_theta(sc)
        cache = {}
        total = Fraction(0)
        for key, c in self.items():
            v = Fraction(c)
            for d in key:
                if d not in cache:
                    cache[d] = evaluate_diagram(d, sc, kd)
                v *= cache[d]
            total += v
        return total

    def __str__(self) -> str:
        lines = []
        for key, c in self.items():
            prod_s = " * ".join(format_diagram(d) for d in key) or "1"
            lines.append(f"{format_rational(c)}\t{prod_s}")
        return "\n".join(lines) if lines else "0"

    def to_json(self) -> list:
        return [[format_rational(c), [format_diagram(d) for d in key]] for key, c in self.items()]

    @classmethod
    def from_json(cls, rows) -> "DiagramCombination":
        out = cls()
        for c, ds in rows:
            out.add(tuple(parse_diagram(s) for s in ds), parse_rational(c))
        return out


def _chord_diagram_of(feed: dict, cycle: list) -> ChordDiagram:
    pos = {v: i + 1 for i, v in enumerate(cycle)}
    ends = defaultdict(list)
    for (kind, i, port), src in feed.items():
        if i not in pos:
            continue
        if port == "in1":
            if src[0] != "theta":
                raise InvariantViolated(f"node {i} still has a mu-node on its first input")
            ends[src[1]].append(pos[i])
    pairs = list(ends.values())
    if any(len(e) != 2 for e in pairs) or 2 * len(pairs) != len(cycle):
        raise InvariantViolated("normal form is not a chord diagram")
    return canonicalize(ChordDiagram.from_pairs(pairs))


def _reduce_connected(feed: dict, nodes: set, stats: dict) -> DiagramCombination:
    result = DiagramCombination()
    work = [(Fraction(1), feed)]
    while work:
        coeff, f = work.pop()
        Q = mu_subgraph(f, nodes)
        cycle = find_unique_cycle(Q)
        # every mu on the cycle takes the cycle edge at its second input
        for k, v in enumerate(cycle):
            pred = cycle[k - 1]
            if f[("mu", v, "in1")] == ("mu", pred, "out") and f[("mu", v, "in2")] != ("mu", pred, "out"):
                f = swap_inputs(f, v)
                coeff = -coeff
                stats["antisymmetry_steps"] = stats.get("antisymmetry_steps", 0) + 1
        target = next((v for v in cycle if f[("mu", v, "in1")][0] == "mu"), None)
        if target is None:
            result.add((_chord_diagram_of(f, cycle),), coeff)
            continue
        stats["jacobi_steps"] = stats.get("jacobi_steps", 0) + 1
        for c, g in reversed(jacobi_split(f, target)):
            work.append((coeff * c, g))
    return result


def reduce_picture(p: ClosedPicture, stats: dict | None = None) -> DiagramCombination:
    """Rewrite a closed picture as a combination of products of chord diagrams.

    Each connected component with k theta-nodes contributes factors with
    exactly k chords. ``stats`` (if given) receives step counters.
    """
    stats = {} if stats is None else stats
    p = connect_components(p, stats)
    feed = p.feed()
    total = DiagramCombination({(): Fraction(1)})
    for nodes in picture_components(p):
        sub = {k: v for k, v in feed.items() if k[1] in nodes}
        total = total * _reduce_connected(sub, nodes, stats)
    return total


def off_cycle_count(p: ClosedPicture) -> int:
    """Number of mu-nodes off the cycle, summed over connected components."""
    feed = p.feed()
    total = 0
    for nodes in picture_components(p):
        Q = mu_subgraph(feed, nodes)
        total += len(nodes) - len(find_unique_cycle(Q))
    return total


# --- generators ------------------------------------------------------------------

def random_picture(k: int, seed: int) -> ClosedPicture:
    """Uniformly random valid picture with k theta-nodes and 2k mu-nodes."""
    rng = random.Random(seed)
    N = 2 * k
    sinks = [("mu", i, x) for i in range(N) for x in INPUTS]
    sources = [("mu", i, "out") for i in range(N)] + [("theta", t, x) for t in range(k) for x in THETA_PORTS]
    rng.shuffle(sources)
    return ClosedPicture.from_feed(N, k, dict(zip(sinks, sources)))


def random_connected_picture(k: int, seed: int) -> ClosedPicture:
    """Random picture whose mu-subgraph is connected: a circle with trees hung on it.

    The cycle edge enters either input at random, so normalization is exercised.
    """
    rng = random.Random(seed)
    N = 2 * k
    L = rng.randint(1, N)
    feed = {}
    free = []
    for v in range(L):
        cyc_in = rng.choice(INPUTS)
        feed[("mu", v, cyc_in)] = ("mu", (v - 1) % L, "out")
        free.append(("mu", v, "in2" if cyc_in == "in1" else "in1"))
    for v in range(L, N):
        slot = free.pop(rng.randrange(len(free)))
        feed[slot] = ("mu", v, "out")
        free += [("mu", v, "in1"), ("mu", v, "in2")]
    legs = [("theta", t, x) for t in range(k) for x in THETA_PORTS]
    rng.shuffle(legs)
    for slot, leg in zip(free, legs):
        feed[slot] = leg
    return ClosedPicture.from_feed(N, k, feed)
