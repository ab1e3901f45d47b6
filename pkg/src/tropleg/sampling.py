"""Newton refinement of curve-parameter roots and tropical sampling.

A sampled point lives in the w = 1 chart: its coordinates are the top
degrees of x, y, z at the parameter value, each minus the top degree
of w.  Roots of a coordinate are refined with exact Newton steps whose
corrections are single monomials in t, mirroring hand computation: the
residual's top term is cancelled against the derivative's top term.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .checks import TropicalCurveGraph
from .contact import ParametrizedCurve, cubic_pencil_curve, reference_frame_map
from .errors import DegeneracyError, ExtensionRequiredError, StagnationError
from .fields import QQ
from .poly import SeriesPoly
from .series import NEG_INF, TruncatedSeries

AXES = ("x", "y", "z", "w")

#: consecutive Newton steps allowed without strict residual-degree descent
STALL_LIMIT = 3


@dataclass(frozen=True)
class NewtonSeed:
    """Starting series and the number of correction steps to run."""

    s0: TruncatedSeries
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("the Newton step count k must be a positive integer")


@dataclass(frozen=True)
class SampledPoint:
    """A parameter value together with the tropical point it lands on.

    ``point`` is (X, Y, Z) in the w = 1 chart; entries are integers, or
    -inf where a coordinate vanishes identically.  ``axis`` names the
    coordinate whose root ``s_value`` approximates, when known.
    """

    s_value: TruncatedSeries
    point: Tuple[object, object, object]
    axis: Optional[str] = None


def newton_root_with_trace(f: SeriesPoly, seed: NewtonSeed):
    """Run ``seed.k`` monomial Newton steps on f(s) = 0 from ``seed.s0``.

    Each step recentres the original f at the current approximation,
    reads off the residual (the s^0 coefficient) and the derivative value
    (the s^1 coefficient), and subtracts the monomial
    t^(d1-d2) * lead(residual) / lead(derivative).

    Returns (root, trace) where trace lists one
    (iteration, residual_degree, derivative_degree, step_exponent)
    entry per step.  Raises :class:`StagnationError` after
    ``STALL_LIMIT`` consecutive steps without a strictly smaller residual
    degree, and :class:`ExtensionRequiredError` when the derivative
    vanishes so no correction exists over the ground field.
    """
    if f.uses_m():
        raise ValueError("substitute the family parameter m before root refinement")
    if f.is_zero():
        raise ValueError("cannot refine a root of the zero polynomial")
    field = f.field
    s1 = seed.s0
    trace: List[Tuple] = []
    prev_degree = None
    stall = 0
    for it in range(1, seed.k + 1):
        f1 = f.shift_s(s1)
        residual = f1.coefficient(0)
        if residual.is_zero():
            trace.append((it, NEG_INF, None, None))
            break
        derivative = f1.coefficient(1)
        if derivative.is_zero():
            raise ExtensionRequiredError(
                f"the derivative vanishes at step {it}; the root is not "
                f"simple over {field.name} and needs an extension")
        d1 = residual.degree()
        d2 = derivative.degree()
        step = d1 - d2
        coeff = field.neg(field.div(residual.leading_coefficient(),
                                    derivative.leading_coefficient()))
        trace.append((it, d1, d2, step))
        if prev_degree is not None and d1 >= prev_degree:
            stall += 1
            if stall >= STALL_LIMIT:
                raise StagnationError(
                    f"residual degree stuck at {d1} for {STALL_LIMIT} "
                    f"consecutive steps (started from degree "
                    f"{trace[0][1]})", trace)
        else:
            stall = 0
        prev_degree = d1
        s1 = s1 + TruncatedSeries.monomial(field, step, coeff)
    return s1, trace


def newton_root(f: SeriesPoly, seed: NewtonSeed) -> TruncatedSeries:
    """The refined root only; see :func:`newton_root_with_trace`."""
    return newton_root_with_trace(f, seed)[0]


def residual_degree(f: SeriesPoly, s1: TruncatedSeries):
    """Top degree of f(s1), or -inf when it vanishes exactly."""
    value = f.shift_s(s1).coefficient(0)
    return NEG_INF if value.is_zero() else value.degree()


def _as_series(field, value) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(field, value)


def sample_point(s1, m0, curve: ParametrizedCurve,
                 axis: Optional[str] = None) -> SampledPoint:
    """Tropical point of the curve at parameter s1, family parameter m0."""
    if axis is not None and axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    field = curve.field
    fixed = curve.subs_m(_as_series(field, m0))
    values = fixed.evaluate(_as_series(field, s1))
    w = values[3]
    if w.is_zero():
        raise DegeneracyError(
            "the w-coordinate vanishes at this parameter; the point has "
            "no finite chart coordinates")
    ll = w.degree()
    point = tuple(
        (v.degree() - ll) if not v.is_zero() else NEG_INF
        for v in values[:3])
    return SampledPoint(_as_series(field, s1), point, axis)


def sweep(curve: ParametrizedCurve, m0, exponents: Sequence[int],
          coeff=1) -> List[SampledPoint]:
    """Sample the curve at the monomial parameters coeff * t^e."""
    field = curve.field
    out = []
    for e in exponents:
        s1 = TruncatedSeries.monomial(field, e, field.coerce(coeff))
        out.append(sample_point(s1, m0, curve))
    return out


@dataclass(frozen=True)
class SeedReport:
    """Outcome of trying one monomial seed in a scan."""

    coeff: object
    exponent: int
    residual_degree: object
    note: str = ""


def scan_seeds(f: SeriesPoly, coeffs: Sequence, exponents: Sequence[int],
               k: int = 3) -> List[SeedReport]:
    """Try Newton from every seed c * t^v on a grid and rank the outcomes.

    Reports are sorted by how deep the residual degree got (deepest
    first); seeds that stagnate or hit a vanishing derivative come last
    with a note instead of being raised.
    """
    field = f.field
    reports = []
    for c in coeffs:
        for v in exponents:
            s0 = TruncatedSeries.monomial(field, v, field.coerce(c))
            try:
                root, _ = newton_root_with_trace(f, NewtonSeed(s0, k))
            except StagnationError as err:
                reports.append(SeedReport(c, v, err.trace[-1][1], "stagnated"))
                continue
            except ExtensionRequiredError:
                reports.append(SeedReport(c, v, None, "derivative vanished"))
                continue
            reports.append(SeedReport(c, v, residual_degree(f, root)))
    def key(r):
        return (r.note != "", r.residual_degree if r.residual_degree is not None
                else float("inf"))
    return sorted(reports, key=key)


def transformed_family(p1, p2, p3, field=QQ) -> ParametrizedCurve:
    """The standard cubic pencil pushed through the frame map that carries
    the reference triple to the three given series points."""
    frame = reference_frame_map(p1, p2, p3, field)
    return cubic_pencil_curve(field).apply(frame)


# ----------------------------------------------------------------------
# vertex reconstruction from root samples
# ----------------------------------------------------------------------

@dataclass
class VertexReconstruction:
    """Candidate graph fragment assembled from converged root samples."""

    graph: TropicalCurveGraph
    vertices: List[Tuple[object, object, object]]
    ambiguities: List[str]
    tables: Dict[str, List[Tuple]]


def _leg_rows(samples: Sequence[SampledPoint]) -> Dict[str, List[Tuple]]:
    tables: Dict[str, List[Tuple]] = {a: [] for a in AXES}
    for sp in samples:
        if sp.axis is None:
            raise ValueError(
                "vertex reconstruction needs samples tagged with the axis "
                "whose root they approximate")
        X, Y, Z = sp.point
        if sp.axis == "x":
            tables["x"].append((Y, Z))
        elif sp.axis == "y":
            tables["y"].append((X, Z))
        elif sp.axis == "z":
            tables["z"].append((X, Y))
        else:
            # w sinks to -inf, so chart values drift; differences are stable
            tables["w"].append((X - Y, 0, Z - Y))
    return tables


def reconstruct_vertices(samples: Sequence[SampledPoint]) -> VertexReconstruction:
    """Pair root samples into trivalent-vertex candidates.

    x-roots anchor legs towards X = -inf and carry (Y, Z); y-roots carry
    (X, Z).  An x-row and a y-row sharing Z form the vertex (X, Y, Z);
    an unpaired row is completed using the plane X + Y = Z.  z-rows give
    vertices (X, Y, X + Y) with a leg towards Z = -inf, and w-rows give
    basepoints of (1, 1, 1) legs.  Everything unresolved lands in
    ``ambiguities`` rather than being silently guessed.
    """
    if not samples:
        raise ValueError("insufficient samples: nothing to reconstruct from")
    tables = _leg_rows(samples)
    ambiguities: List[str] = []
    vertices: List[Tuple] = []
    rays: List[Tuple[int, Tuple[int, int, int]]] = []

    def add_vertex(v, direction) -> None:
        if v in vertices:
            idx = vertices.index(v)
        else:
            vertices.append(v)
            idx = len(vertices) - 1
        if (idx, direction) in rays:
            ambiguities.append(
                f"leg {direction} at {v} was produced twice: either one leg "
                f"sampled twice or a leg of higher weight")
        else:
            rays.append((idx, direction))

    y_rows = list(tables["y"])
    y_used = [False] * len(y_rows)
    for (Y, Z) in tables["x"]:
        matches = [i for i, (X2, Z2) in enumerate(y_rows)
                   if not y_used[i] and Z2 == Z]
        if len(matches) > 1:
            ambiguities.append(
                f"x-root row (Y={Y}, Z={Z}) matches several y-rows "
                f"{[y_rows[i] for i in matches]}; pairing with the first")
        if matches:
            i = matches[0]
            y_used[i] = True
            X = y_rows[i][0]
            v = (X, Y, Z)
            add_vertex(v, (-1, 0, 0))
            add_vertex(v, (0, -1, 0))
        else:
            v = (Z - Y, Y, Z)
            ambiguities.append(
                f"x-root row (Y={Y}, Z={Z}) has no matching y-row; "
                f"completed on the plane as {v}")
            add_vertex(v, (-1, 0, 0))
    for i, (X, Z) in enumerate(y_rows):
        if y_used[i]:
            continue
        v = (X, Z - X, Z)
        ambiguities.append(
            f"y-root row (X={X}, Z={Z}) has no matching x-row; "
            f"completed on the plane as {v}")
        add_vertex(v, (0, -1, 0))
    for (X, Y) in tables["z"]:
        add_vertex((X, Y, X + Y), (0, 0, -1))
    for base in tables["w"]:
        add_vertex(base, (1, 1, 1))

    graph = TropicalCurveGraph(vertices, rays=rays)
    return VertexReconstruction(graph, vertices, ambiguities, tables)
