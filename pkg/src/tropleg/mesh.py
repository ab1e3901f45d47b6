"""Turn exact corner-locus cells into viewer-ready artifacts.

Everything upstream works over exact rationals; this module is the one
place where coordinates become decimal floats (12 significant digits),
at the moment they are written.  Each export produces three files that
describe the same scene: a Wavefront OBJ for generic 3D viewers, a JSON
mirror for programmatic use, and a rendered PNG overview.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .serialize import dumps, format_float
from .tropical import TropicalCell

Triple = Tuple[Fraction, Fraction, Fraction]


def _require_box(bbox) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Validate a ((x0,x1),(y0,y1),(z0,z1)) box; reject unbounded requests."""
    if len(bbox) != 3:
        raise ValueError("bounding box needs three coordinate intervals")
    out = []
    for lo, hi in bbox:
        if lo is None or hi is None:
            raise ValueError("unbounded export box")
        flo, fhi = float(lo), float(hi)
        if math.isinf(flo) or math.isinf(fhi) or math.isnan(flo) or math.isnan(fhi):
            raise ValueError("unbounded export box")
        if not flo < fhi:
            raise ValueError("empty box interval")
        out.append((Fraction(lo), Fraction(hi)))
    return tuple(out)


def _clip_space(poly, normal, offset):
    # keep the part of a convex planar polygon with normal . v <= offset
    if not poly:
        return poly
    vals = [sum(n * c for n, c in zip(normal, p)) - offset for p in poly]
    out = []
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        if vals[i] <= 0:
            out.append(poly[i])
        if (vals[i] < 0 < vals[j]) or (vals[j] < 0 < vals[i]):
            t = vals[i] / (vals[i] - vals[j])
            out.append(tuple(a + t * (b - a) for a, b in zip(poly[i], poly[j])))
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def clip_to_box(polygon: Sequence[Triple], box) -> List[Triple]:
    """Clip a convex planar polygon to an exact axis-aligned box."""
    box = _require_box(box)
    poly = [tuple(Fraction(c) for c in p) for p in polygon]
    for axis in range(3):
        lo, hi = box[axis]
        e = tuple(1 if k == axis else 0 for k in range(3))
        ne = tuple(-1 if k == axis else 0 for k in range(3))
        poly = _clip_space(poly, e, hi)
        poly = _clip_space(poly, ne, -lo)
    return poly


def cell_contains(cell: TropicalCell, point) -> bool:
    """Exact membership test against the cell's tie plane and dominance."""
    p = tuple(Fraction(c) for c in point)
    normal, const = cell.equality
    if sum(n * c for n, c in zip(normal, p)) + const != 0:
        return False
    for vec, cst in cell.inequalities:
        if sum(v * c for v, c in zip(vec, p)) + cst < 0:
            return False
    return True


@dataclass
class MeshExport:
    """A triangulated scene: shared vertex pool plus faces and markers.

    Vertices stay exact rationals until written.  ``polygons`` keeps one
    index loop per surviving cell (before triangulation) and ``sources``
    the position of the producing cell in the input list.
    """

    vertices: List[Triple] = field(default_factory=list)
    faces: List[Tuple[int, int, int]] = field(default_factory=list)
    polygons: List[List[int]] = field(default_factory=list)
    sources: List[int] = field(default_factory=list)
    points: List[Triple] = field(default_factory=list)
    polyline: List[Triple] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (self.faces or self.points or self.polyline)


def build_mesh(cells: Sequence[TropicalCell], bbox, points=(), polyline=()) -> MeshExport:
    """Clip and triangulate cells; pass marked points and polyline through."""
    box = _require_box(bbox)
    mesh = MeshExport()
    index = {}

    def vid(p: Triple) -> int:
        if p not in index:
            index[p] = len(mesh.vertices)
            mesh.vertices.append(p)
        return index[p]

    for pos, cell in enumerate(cells):
        if cell.dim < 2 or len(cell.vertices) < 3:
            continue
        poly = clip_to_box(cell.vertices, box)
        if len(poly) < 3:
            continue
        loop = [vid(p) for p in poly]
        mesh.polygons.append(loop)
        mesh.sources.append(pos)
        for k in range(1, len(loop) - 1):
            mesh.faces.append((loop[0], loop[k], loop[k + 1]))
    mesh.points = [tuple(Fraction(c) for c in p) for p in points]
    mesh.polyline = [tuple(Fraction(c) for c in p) for p in polyline]
    return mesh


def _fmt3(p) -> List[float]:
    return [float(format_float(c)) for c in p]


def mesh_to_json(mesh: MeshExport, bbox) -> dict:
    box = _require_box(bbox)
    return {
        "bbox": [[float(format_float(lo)), float(format_float(hi))] for lo, hi in box],
        "vertices": [_fmt3(p) for p in mesh.vertices],
        "faces": [list(f) for f in mesh.faces],
        "polygons": [list(loop) for loop in mesh.polygons],
        "points": [_fmt3(p) for p in mesh.points],
        "polyline": [_fmt3(p) for p in mesh.polyline],
    }


def write_obj(mesh: MeshExport, path) -> None:
    lines = ["# corner-locus mesh"]
    for p in mesh.vertices:
        lines.append("v " + " ".join(format_float(c) for c in p))
    for p in mesh.points:
        lines.append("v " + " ".join(format_float(c) for c in p))
    for p in mesh.polyline:
        lines.append("v " + " ".join(format_float(c) for c in p))
    for a, b, c in mesh.faces:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    base = len(mesh.vertices)
    for i in range(len(mesh.points)):
        lines.append(f"p {base + i + 1}")
    if mesh.polyline:
        start = base + len(mesh.points)
        lines.append("l " + " ".join(str(start + i + 1) for i in range(len(mesh.polyline))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_png(mesh: MeshExport, bbox, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from mpl_toolkits.mplot3d.art3d import Poly3DCollection

    box = _require_box(bbox)
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    if mesh.polygons:
        tris = [[_fmt3(mesh.vertices[i]) for i in loop] for loop in mesh.polygons]
        ax.add_collection3d(
            Poly3DCollection(tris, alpha=0.45, facecolor="tab:orange", edgecolor="gray", linewidths=0.3)
        )
    if mesh.points:
        xs, ys, zs = zip(*(_fmt3(p) for p in mesh.points))
        ax.scatter(xs, ys, zs, color="tab:green", s=40, depthshade=False)
    if mesh.polyline:
        xs, ys, zs = zip(*(_fmt3(p) for p in mesh.polyline))
        ax.plot(xs, ys, zs, color="tab:blue", linewidth=1.5)
    ax.set_xlim(float(box[0][0]), float(box[0][1]))
    ax.set_ylim(float(box[1][0]), float(box[1][1]))
    ax.set_zlim(float(box[2][0]), float(box[2][1]))
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    ax.set_zlabel("Z")
    fig.savefig(path, dpi=110, metadata={"Software": "tropleg"})
    plt.close(fig)


def export_mesh(
    cells: Sequence[TropicalCell],
    bbox,
    points: Sequence = (),
    polyline: Sequence = (),
    out: str = "mesh",
) -> MeshExport:
    """Write <out>.obj, <out>.json and <out>.png for the clipped cells.

    Returns the in-memory :class:`MeshExport`; re-running with the same
    inputs reproduces the OBJ and JSON files byte for byte.
    """
    mesh = build_mesh(cells, bbox, points=points, polyline=polyline)
    out = str(out)
    write_obj(mesh, out + ".obj")
    with open(out + ".json", "w") as fh:
        fh.write(dumps(mesh_to_json(mesh, bbox)))
    write_png(mesh, bbox, out + ".png")
    return mesh
