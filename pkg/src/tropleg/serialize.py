"""JSON persistence and the small expression language for series input.

Every artifact writes to a plain dict first (``*_to_json``) and parses
back with the matching ``*_from_json``; round-tripping is the identity.
Rationals are emitted exactly — fraction strings for tropical
coefficients, numerator/denominator pairs for series terms — so no
precision is lost in transit.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .checks import TropicalCurveGraph
from .fields import QQ, PrimeField
from .quadric import NormalForm, QuadricClassification
from .series import TruncatedSeries
from .tropical import TropicalPolynomial


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1,
                      separators=(",", ": ")) + "\n"


# ----------------------------------------------------------------------
# fields and series
# ----------------------------------------------------------------------

def field_to_json(field) -> Dict:
    if isinstance(field, PrimeField):
        return {"field": "Fp", "p": field.p}
    return {"field": "Q"}


def field_from_json(data: Dict):
    if data.get("field") == "Fp":
        return PrimeField(data["p"])
    if data.get("field") == "Q":
        return QQ
    raise ValueError(f"unknown field tag {data.get('field')!r}")


def series_to_json(f: TruncatedSeries) -> Dict:
    out = field_to_json(f.field)
    if isinstance(f.field, PrimeField):
        out["terms"] = [[e, int(c)] for e, c in f.items()]
    else:
        out["terms"] = [[e, Fraction(c).numerator, Fraction(c).denominator]
                        for e, c in f.items()]
    if f.lo is not None or f.hi is not None:
        out["window"] = [f.lo, f.hi]
    return out


def series_from_json(data: Dict) -> TruncatedSeries:
    field = field_from_json(data)
    pairs = []
    for term in data["terms"]:
        if isinstance(field, PrimeField):
            e, res = term
            pairs.append((e, res))
        else:
            e, num, den = term
            pairs.append((e, Fraction(num, den)))
    lo, hi = data.get("window", (None, None))
    return TruncatedSeries.from_terms(field, pairs, lo, hi)


def matrix_to_json(matrix) -> Dict:
    rows = [[series_to_json(e) for e in row] for row in matrix]
    return {"matrix": rows}


def series_poly_to_json(p) -> Dict:
    """Polynomial in (s, m) with series coefficients, term by term."""
    return {"terms": [{"s": j, "m": k, "series": series_to_json(c)}
                      for (j, k), c in sorted(p.coeffs.items())]}


def curve_to_json(curve) -> Dict:
    return {"components": [series_poly_to_json(c) for c in curve.components]}


def matrix_from_json(data: Dict):
    return [[series_from_json(e) for e in row] for row in data["matrix"]]


# ----------------------------------------------------------------------
# tropical artifacts
# ----------------------------------------------------------------------

def _frac_str(value) -> str:
    return str(Fraction(value))


def tropical_poly_to_json(f: TropicalPolynomial) -> Dict:
    return {"vars": list(f.vars),
            "terms": [{"exp": list(exp), "coeff": _frac_str(c)}
                      for exp, c in f.terms]}


def tropical_poly_from_json(data: Dict) -> TropicalPolynomial:
    return TropicalPolynomial(
        data["vars"],
        [(tuple(t["exp"]), _parse_rat(t["coeff"])) for t in data["terms"]])


def _parse_rat(text: str):
    q = Fraction(text)
    return int(q) if q.denominator == 1 else q


def graph_to_json(graph: TropicalCurveGraph) -> Dict:
    return graph.to_dict()


def graph_from_json(data: Dict) -> TropicalCurveGraph:
    return TropicalCurveGraph.from_dict(data)


def classification_to_json(cls: QuadricClassification) -> Dict:
    def normal(nf: NormalForm) -> Dict:
        def val(v):
            return None if v is None else _frac_str(v)
        return {"tag": nf.tag, "rate": val(nf.rate), "shift": val(nf.shift),
                "stretch": val(nf.stretch), "disc": val(nf.disc),
                "extension_required": nf.extension_required}
    return {
        "form_index": cls.form_index,
        "form_name": cls.form_name,
        "equation": cls.equation,
        "d1": cls.d1,
        "d2": cls.d2,
        "algebraic": cls.algebraic,
        "mu_normal": normal(cls.mu_normal),
        "nu_normal": normal(cls.nu_normal),
        "extension_required": cls.extension_required,
        "notes": list(cls.notes),
    }


# ----------------------------------------------------------------------
# the series expression language
# ----------------------------------------------------------------------

_TERM = re.compile(
    r"""^
    (?P<num>\d+(?:/\d+)?)?          # optional coefficient, possibly p/q
    (?:\*)?                         # optional explicit product
    (?:
        (?P<div>/)?                 # 1/t^4 style reciprocal
        t (?:\^(?P<exp>-?\d+))?    # the t part with optional exponent
    )?
    $""",
    re.VERBOSE,
)


def parse_series(text: str, field=QQ) -> TruncatedSeries:
    """Parse sums of monomials like ``2t^13``, ``-1+132t^-5``, ``5/t^8``.

    Coefficients may be integers or fractions (``3/2t^4``); a bare ``t``
    means t^1, a ``/t^k`` divides (t^-k), and terms combine with + or -.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty series expression")
    # hide exponent minus signs from the term splitter
    guarded = compact.replace("^-", "^~")
    tokens = re.findall(r"[+-]?[^+-]+", guarded)
    if "".join(tokens) != guarded:
        raise ValueError(f"cannot parse series expression {text!r}")
    pairs: List[Tuple[int, object]] = []
    for raw in tokens:
        sign = 1
        if raw[0] in "+-":
            sign = -1 if raw[0] == "-" else 1
            raw = raw[1:]
        token = raw.replace("^~", "^-")
        m = _TERM.match(token)
        if not m or not token:
            raise ValueError(f"cannot parse series term {token!r} in {text!r}")
        has_t = "t" in token
        if m.group("div") and m.group("num") is None:
            raise ValueError(f"cannot parse series term {token!r} in {text!r}")
        if not has_t and m.group("num") is None:
            raise ValueError(f"cannot parse series term {token!r} in {text!r}")
        num = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        exp = int(m.group("exp")) if m.group("exp") else (1 if has_t else 0)
        if m.group("div"):
            exp = -exp
        pairs.append((exp, field.coerce(sign * num)))
    return TruncatedSeries.from_terms(field, pairs)


def parse_point(text: str, field=QQ) -> Tuple[TruncatedSeries, ...]:
    """Comma-separated coordinates; three of them get w = 1 appended."""
    coords = [parse_series(part, field) for part in text.split(",")]
    if len(coords) == 3:
        coords.append(TruncatedSeries.one(field))
    if len(coords) != 4:
        raise ValueError(f"a point needs 3 or 4 coordinates, got {len(coords)}")
    return tuple(coords)


def parse_points(text: str, field=QQ) -> List[Tuple[TruncatedSeries, ...]]:
    """Semicolon-separated list of points."""
    return [parse_point(part, field) for part in text.split(";")]


def format_float(value) -> str:
    """Decimal rendering with 12 significant digits (emission only)."""
    return f"{float(value):.12g}"
