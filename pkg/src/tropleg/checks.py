"""Tropical curve graphs and the plane-position checks they must pass.

Chart convention, used everywhere in this module and its callers: a
tropical point is the triple (X, Y, Z) of coordinate valuations taken in
the affine chart w = 1, i.e. (val x - val w, val y - val w, val z - val w).
The distinguished plane is X + Y = Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .contact import ParametrizedCurve
from .errors import UnbalancedGraphError
from .fields import QQ
from .poly import SeriesPoly
from .series import NEG_INF, TruncatedSeries
from .tropical import TropicalPolynomial

Vec = Tuple[int, int, int]


def _primitive(d: Sequence[int]) -> Tuple[Vec, int]:
    """Primitive integer direction and the content that was divided out."""
    d = tuple(int(x) for x in d)
    if all(x == 0 for x in d):
        raise ValueError("zero direction vector")
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    prim = tuple(x // g for x in d)
    return prim, g


def _parallel(a: Sequence[int], b: Sequence[int]) -> bool:
    pa, _ = _primitive(a)
    pb, _ = _primitive(b)
    return pa == pb or pa == tuple(-x for x in pb)


@dataclass
class Ray:
    """Unbounded leg leaving vertex ``origin`` in direction ``direction``."""

    origin: int
    direction: Vec
    weight: int = 1


@dataclass
class Edge:
    """Bounded segment between vertices ``a`` and ``b``."""

    a: int
    b: int
    weight: int = 1


class TropicalCurveGraph:
    """Vertices, bounded edges and unbounded rays of a tropical curve.

    Vertex coordinates are exact rationals; directions are integer
    vectors; weights are positive integers.  Balancing is *not* forced at
    construction (reconstruction produces honest fragments); call
    :meth:`validate_balancing` or any checker to enforce it.
    """

    def __init__(self, vertices, edges=(), rays=()):
        self.vertices: List[Tuple[Fraction, Fraction, Fraction]] = [
            tuple(Fraction(c) for c in v) for v in vertices]
        self.edges: List[Edge] = []
        for e in edges:
            if isinstance(e, Edge):
                self.edges.append(e)
            else:
                self.edges.append(Edge(*e))
        self.rays: List[Ray] = []
        for r in rays:
            if isinstance(r, Ray):
                self.rays.append(r)
            else:
                self.rays.append(Ray(r[0], tuple(int(c) for c in r[1]),
                                     r[2] if len(r) > 2 else 1))
        for e in self.edges:
            if not (0 <= e.a < len(self.vertices) and 0 <= e.b < len(self.vertices)):
                raise ValueError(f"edge {e} references a missing vertex")
            if e.a == e.b:
                raise ValueError("loop edges are not allowed")
            if e.weight < 1:
                raise ValueError("edge weights are positive integers")
        for r in self.rays:
            if not 0 <= r.origin < len(self.vertices):
                raise ValueError(f"ray {r} references a missing vertex")
            if r.weight < 1:
                raise ValueError("ray weights are positive integers")

    # -- structure ------------------------------------------------------

    def edge_vector(self, e: Edge) -> Tuple[Fraction, Fraction, Fraction]:
        va, vb = self.vertices[e.a], self.vertices[e.b]
        return tuple(b - a for a, b in zip(va, vb))

    def edge_direction(self, e: Edge) -> Tuple[Vec, int]:
        """Primitive direction a -> b and the lattice length multiplier."""
        vec = self.edge_vector(e)
        denom = 1
        for c in vec:
            denom = denom * Fraction(c).denominator // gcd(denom, Fraction(c).denominator)
        ints = [int(c * denom) for c in vec]
        prim, g = _primitive(ints)
        return prim, g

    def incident(self, v: int):
        """(direction-away, weight) for every edge and ray meeting vertex v."""
        out = []
        for e in self.edges:
            if e.a == v:
                out.append((self.edge_direction(e)[0], e.weight))
            elif e.b == v:
                prim, _ = self.edge_direction(e)
                out.append((tuple(-c for c in prim), e.weight))
        for r in self.rays:
            if r.origin == v:
                prim, g = _primitive(r.direction)
                out.append((prim, r.weight * g))
        return out

    def validate_balancing(self) -> None:
        bad = []
        for v in range(len(self.vertices)):
            around = self.incident(v)
            if not around:
                continue
            total = [0, 0, 0]
            for prim, w in around:
                for k in range(3):
                    total[k] += w * prim[k]
            if any(total):
                bad.append((v, tuple(total)))
        if bad:
            detail = "; ".join(f"vertex {v} has net direction {t}" for v, t in bad)
            raise UnbalancedGraphError(f"graph is not balanced: {detail}")

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        def num(q):
            q = Fraction(q)
            return int(q) if q.denominator == 1 else [q.numerator, q.denominator]
        return {
            "vertices": [[num(c) for c in v] for v in self.vertices],
            "edges": [{"a": e.a, "b": e.b, "weight": e.weight} for e in self.edges],
            "rays": [{"from": r.origin, "dir": list(r.direction),
                      "weight": r.weight} for r in self.rays],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TropicalCurveGraph":
        def num(v):
            return Fraction(v[0], v[1]) if isinstance(v, list) else Fraction(v)
        vertices = [tuple(num(c) for c in v) for v in data["vertices"]]
        edges = [Edge(e["a"], e["b"], e.get("weight", 1))
                 for e in data.get("edges", [])]
        rays = [Ray(r["from"], tuple(r["dir"]), r.get("weight", 1))
                for r in data.get("rays", [])]
        return cls(vertices, edges, rays)

    def __eq__(self, other):
        if not isinstance(other, TropicalCurveGraph):
            return NotImplemented
        return self.to_dict() == other.to_dict()


# ----------------------------------------------------------------------
# position of edges relative to the plane X + Y = Z
# ----------------------------------------------------------------------

ABOVE = "X+Y>Z"
BELOW = "X+Y<Z"
CROSSING = "crossing"
INSIDE = "inside-plane"


def _plane_value(p) -> Fraction:
    return Fraction(p[0]) + Fraction(p[1]) - Fraction(p[2])


@dataclass
class EdgeVerdict:
    """Outcome of one tangency test.

    ``item`` is ("edge", index) or ("ray", index); ``region`` is one of
    the module constants; ``ok`` tells whether the direction satisfies
    the rule quoted in ``rule``.
    """

    item: Tuple[str, int]
    region: str
    direction: Vec
    ok: bool
    rule: str


def classify_edge(graph: TropicalCurveGraph, item: Tuple[str, int]) -> str:
    """Side of the plane X + Y = Z an edge or ray lives on."""
    kind, idx = item
    if kind == "edge":
        e = graph.edges[idx]
        sa = _plane_value(graph.vertices[e.a])
        sb = _plane_value(graph.vertices[e.b])
    elif kind == "ray":
        r = graph.rays[idx]
        sa = _plane_value(graph.vertices[r.origin])
        drift = r.direction[0] + r.direction[1] - r.direction[2]
        if drift == 0:
            sb = sa
        else:
            sb = Fraction(1, 1) if drift > 0 else Fraction(-1, 1)
            sb = sa + sb * 10 ** 9  # far along the ray; only the sign matters
    else:
        raise ValueError(f"unknown item kind {kind!r}")
    if sa == 0 and sb == 0:
        return INSIDE
    if (sa > 0 > sb) or (sa < 0 < sb):
        return CROSSING
    if sa > 0 or sb > 0:
        return ABOVE
    return BELOW


def _direction_of(graph, item):
    kind, idx = item
    if kind == "edge":
        return graph.edge_direction(graph.edges[idx])[0]
    return _primitive(graph.rays[idx].direction)[0]


def check_tangency(graph: TropicalCurveGraph) -> List[EdgeVerdict]:
    """Direction rules every edge must satisfy relative to X + Y = Z.

    Above the plane the direction must have equal X and Y components;
    below it the Z component must vanish; an edge crossing the plane must
    be parallel to (1, 1, 0).  Edges inside the plane are unconstrained.
    The graph must be balanced before the test means anything.
    """
    graph.validate_balancing()
    verdicts = []
    items = [("edge", i) for i in range(len(graph.edges))]
    items += [("ray", i) for i in range(len(graph.rays))]
    for item in items:
        region = classify_edge(graph, item)
        d = _direction_of(graph, item)
        if region == ABOVE:
            ok = d[0] == d[1]
            rule = "direction must satisfy dX = dY on the X+Y>Z side"
        elif region == BELOW:
            ok = d[2] == 0
            rule = "direction must satisfy dZ = 0 on the X+Y<Z side"
        elif region == CROSSING:
            ok = _parallel(d, (1, 1, 0))
            rule = "an edge crossing X+Y=Z must be parallel to (1,1,0)"
        else:
            ok = True
            rule = "edges inside the plane are unconstrained"
        verdicts.append(EdgeVerdict(item, region, d, ok, rule))
    return verdicts


# ----------------------------------------------------------------------
# line-like edges and the divisibility (midpoint) condition
# ----------------------------------------------------------------------

@dataclass
class LineLikeReport:
    """Whether an edge matches the two-vertex line pattern."""

    is_line_like: bool
    reasons: List[str]
    below_vertex: Optional[int] = None
    above_vertex: Optional[int] = None


def detect_line_like(graph: TropicalCurveGraph, edge_index: int) -> LineLikeReport:
    """Edge parallel to (1,1,0) joining a trivalent vertex below the plane
    (other legs parallel to (1,0,0) and (0,1,0)) to a trivalent vertex
    above it (other legs parallel to (0,0,1) and (1,1,1))."""
    e = graph.edges[edge_index]
    reasons = []
    prim, _ = graph.edge_direction(e)
    if not _parallel(prim, (1, 1, 0)):
        reasons.append(f"edge direction {prim} is not parallel to (1,1,0)")
        return LineLikeReport(False, reasons)
    sa = _plane_value(graph.vertices[e.a])
    sb = _plane_value(graph.vertices[e.b])
    if sa < 0 < sb:
        below, above = e.a, e.b
    elif sb < 0 < sa:
        below, above = e.b, e.a
    else:
        reasons.append("edge does not join the X+Y<Z side to the X+Y>Z side")
        return LineLikeReport(False, reasons)

    def legs(v):
        out = []
        for i, ee in enumerate(graph.edges):
            if i != edge_index and v in (ee.a, ee.b):
                out.append(graph.edge_direction(ee)[0])
        for r in graph.rays:
            if r.origin == v:
                out.append(_primitive(r.direction)[0])
        return out

    ok = True
    below_legs = legs(below)
    if len(below_legs) != 2:
        reasons.append(f"vertex {below} is not trivalent")
        ok = False
    else:
        want = [(1, 0, 0), (0, 1, 0)]
        for w in want:
            if not any(_parallel(l, w) for l in below_legs):
                reasons.append(f"vertex {below} lacks a leg parallel to {w}")
                ok = False
    above_legs = legs(above)
    if len(above_legs) != 2:
        reasons.append(f"vertex {above} is not trivalent")
        ok = False
    else:
        for w in [(0, 0, 1), (1, 1, 1)]:
            if not any(_parallel(l, w) for l in above_legs):
                reasons.append(f"vertex {above} lacks a leg parallel to {w}")
                ok = False
    return LineLikeReport(ok, reasons, below, above)


@dataclass
class DivisibilityReport:
    """Weighted-midpoint test for an edge crossing the plane.

    The tested point is ((k-l) P + p Q) / (k-l+p) where the crossing edge
    has direction (k, k, 0), the P-side legs are (l, k, 0) and (k-l, 0, 0)
    and the Q-side leg into the plane is (0, 0, p) with p = k + l; for a
    plain line-like edge this is the midpoint (P + Q) / 2.  ``residual``
    is the exact value of X + Y - Z there; the test passes when it is 0.
    """

    edge: int
    pattern: str
    k: int
    l: int
    p: int
    point: Tuple[Fraction, Fraction, Fraction]
    residual: Fraction
    ok: bool
    ambiguous: bool = False
    notes: List[str] = field(default_factory=list)


def check_divisibility(graph: TropicalCurveGraph, edge_index: int) -> DivisibilityReport:
    """Exact plane test at the weighted point carried by a crossing edge."""
    e = graph.edges[edge_index]
    prim, mult = graph.edge_direction(e)
    if not _parallel(prim, (1, 1, 0)):
        raise ValueError(
            f"edge {edge_index} has direction {prim}; the divisibility test "
            f"applies to edges parallel to (1,1,0)")
    sa = _plane_value(graph.vertices[e.a])
    sb = _plane_value(graph.vertices[e.b])
    if sa < 0 < sb:
        p_vertex, q_vertex = e.a, e.b
    elif sb < 0 < sa:
        p_vertex, q_vertex = e.b, e.a
    else:
        raise ValueError("edge does not cross the plane X+Y=Z")
    P = graph.vertices[p_vertex]
    Q = graph.vertices[q_vertex]
    k = mult * e.weight  # direction (k, k, 0) with k = lattice length x weight

    def weighted_legs(v):
        out = []
        for i, ee in enumerate(graph.edges):
            if i != edge_index and v in (ee.a, ee.b):
                away = graph.edge_direction(ee)[0]
                if ee.b == v:
                    away = tuple(-c for c in away)
                out.append(tuple(c * graph.edge_direction(ee)[1] * ee.weight
                                 for c in away))
        for r in graph.rays:
            if r.origin == v:
                prim_r, g = _primitive(r.direction)
                out.append(tuple(c * g * r.weight for c in prim_r))
        return out

    # candidate l values come from P-side legs of shape (-l, -k, 0);
    # the Q-side leg of shape (0, 0, +-(k+l)) settles ties when it can
    notes: List[str] = []
    candidates = sorted({-vec[0] for vec in weighted_legs(p_vertex)
                         if vec[2] == 0 and vec[1] == -k and 0 <= -vec[0] < k})
    if not candidates:
        candidates = [0]
        if k > 1:
            notes.append("no P-side leg of shape (l, k, 0) found; "
                         "fell back to the plain midpoint")
    q_vecs = weighted_legs(q_vertex)
    confirmed = [cand for cand in candidates
                 if any(v[0] == 0 and v[1] == 0 and abs(v[2]) == k + cand
                        for v in q_vecs)]
    ambiguous = len(candidates) > 1
    if len(confirmed) == 1:
        if ambiguous:
            notes.append(f"l = {confirmed[0]} selected by the matching "
                         f"Q-side leg (0, 0, {k + confirmed[0]})")
        ambiguous = False
        candidates = confirmed
    elif ambiguous:
        notes.append(f"several leg patterns fit: l could be any of "
                     f"{candidates}; reporting the smallest")
    l = min(candidates)
    p = k + l
    wp, wq = k - l, p
    total = wp + wq
    point = tuple((wp * Fraction(a) + wq * Fraction(b)) / total
                  for a, b in zip(P, Q))
    residual = _plane_value(point)
    pattern = "balanced-midpoint" if (k == 1 and l == 0) else "weighted"
    return DivisibilityReport(edge_index, pattern, k, l, p, point,
                              residual, residual == 0, ambiguous, notes)


# ----------------------------------------------------------------------
# explicit legendrian lines
# ----------------------------------------------------------------------

def build_legendrian_line(family: int, a: int, b: int, x: int
                          ) -> Tuple[TropicalCurveGraph, ParametrizedCurve]:
    """Two-vertex tropical line of the given family together with an
    exact line in space whose tropicalization it is.

    ``a`` and ``b`` translate the picture; ``x >= 0`` is the edge length.
    At x = 0 the two vertices merge into one four-valent vertex.  The
    returned lift satisfies the standard contact condition exactly.
    """
    if x < 0:
        raise ValueError("the edge length x must be nonnegative")
    mono = lambda e, c=1: TruncatedSeries.monomial(QQ, e, c)
    s = SeriesPoly.variable_s(QQ)
    if family == 1:
        pv = (a, b, a + b + x)
        qv = (a + x, b + x, a + b + x)
        p_dirs = [(-1, 0, 0), (0, -1, 0)]
        q_dirs = [(0, 0, -1), (1, 1, 1)]
        comps = (mono(a) + mono(a) * s,
                 mono(b, 2) + mono(b) * s,
                 mono(a + b + x) - mono(a + b) * s,
                 SeriesPoly.from_series(TruncatedSeries.one(QQ)))
    elif family == 2:
        pv = (a, b, a + b)
        qv = (a + x, b, a + b + x)
        p_dirs = [(-1, 0, 0), (0, 0, -1)]
        q_dirs = [(0, -1, 0), (1, 1, 1)]
        zslope = mono(a + b) - mono(a + b - x) if x else TruncatedSeries.zero(QQ)
        comps = (mono(a) + mono(a) * s,
                 mono(b) + mono(b - x) * s,
                 mono(a + b) - zslope * s,
                 SeriesPoly.from_series(TruncatedSeries.one(QQ)))
    elif family == 3:
        pv = (a, b, a + b)
        qv = (a, b + x, a + b + x)
        p_dirs = [(0, -1, 0), (0, 0, -1)]
        q_dirs = [(-1, 0, 0), (1, 1, 1)]
        zslope = mono(a + b) - mono(a + b - x) if x else TruncatedSeries.zero(QQ)
        comps = (mono(a) + mono(a - x) * s,
                 mono(b) + mono(b) * s,
                 mono(a + b) + zslope * s,
                 SeriesPoly.from_series(TruncatedSeries.one(QQ)))
    else:
        raise ValueError("family must be 1, 2 or 3")
    lift = ParametrizedCurve.from_components(comps)
    if x == 0:
        graph = TropicalCurveGraph(
            [pv], rays=[(0, d) for d in p_dirs + q_dirs])
    else:
        graph = TropicalCurveGraph(
            [pv, qv],
            edges=[Edge(0, 1)],
            rays=[(0, d) for d in p_dirs] + [(1, d) for d in q_dirs])
    return graph, lift


# ----------------------------------------------------------------------
# dominant exponents of univariate tropical polynomials
# ----------------------------------------------------------------------

def dominant_exponent(f: TropicalPolynomial, s_value) -> Tuple[int, bool]:
    """Exponent achieving max(c_k + k*S) and whether it wins strictly.

    For a series with generic coefficients of these valuations evaluated
    at a parameter of valuation S, the winner k predicts the valuation of
    the value; k >= 1 winning strictly is equivalent to
    val(f'(s)) = val(f(s)) - S, while a strict k = 0 forces val(f'(s))
    strictly below val(f(s)) - S.  Ties report the largest tied exponent
    with ``strict`` False.
    """
    if len(f.vars) != 1:
        raise ValueError("dominant_exponent expects a univariate polynomial")
    best = NEG_INF
    winners: List[int] = []
    for (k,), coeff in f.terms:
        if coeff == NEG_INF:
            continue
        v = coeff + k * s_value
        if v > best:
            best = v
            winners = [k]
        elif v == best:
            winners.append(k)
    if not winners:
        raise ValueError("polynomial has no finite terms")
    return max(winners), len(winners) == 1


def balance_defect(rows: Sequence[Sequence[object]]) -> object:
    """Diagnostic for the naive tropical transcription of the line
    balance identity.

    ``rows`` is the 4x4 table of valuations of the line's coordinates at
    the four coordinate roots (row order X, Y, Z, W).  Returns
    (Y(X) - Z(X)) - (W(Z) - X(Z)), which the classical identity would
    suggest is zero; on tropical data it usually is not, which is why the
    honest checks above work with directions instead.
    """
    yx, zx = rows[0][1], rows[0][2]
    wz, xz = rows[2][3], rows[2][0]
    if NEG_INF in (yx, zx, wz, xz):
        return NEG_INF
    return (yx - zx) - (wz - xz)
