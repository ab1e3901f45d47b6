"""tropleg: exact arithmetic for legendrian curves in P^3 and their
max-plus tropicalizations.

The package is organised bottom-up: fields and truncated Laurent series,
polynomials in the curve parameters over those series, the contact
geometry (forms, the cubic pencil, normalising symplectic maps), curves
on the invariant quadric, max-plus polynomials with their corner-locus
cells, Newton sampling of curves, plane-position checks on tropical
curve graphs, and finally JSON / mesh emission plus a CLI on top.
"""

from .errors import (DegeneracyError, ExtensionRequiredError,
                     FieldMismatchError, NonPrimeModulusError,
                     StagnationError, TroplegError, UnbalancedGraphError,
                     WindowError)
from .fields import QQ, DEFAULT_PRIME, PrimeField, RationalField, is_prime
from .series import NEG_INF, TruncatedSeries
from .poly import MultiPoly, SeriesPoly
from .contact import (ContactForm, ParametrizedCurve, contact_eval,
                      cubic_pencil_curve, cubic_surface_eval,
                      cubics_through_line, general_contact_eval,
                      legendrian_cubic_curve, reference_frame_map,
                      standard_points, transformation)
from .quadric import (QuadraticODEPair, QuadricClassification,
                      classify_quadric_curve, normalize_quadratic,
                      ode_pair_solution, ode_series_solution, power_curve,
                      power_curve_form, quadric_lift, restrict_to_quadric)
from .tropical import (TropicalCell, TropicalNumber, TropicalPolynomial,
                       corner_locus_cells, trop_eval, tropical_surface_pipeline,
                       tropicalize_poly)
from .sampling import (NewtonSeed, SampledPoint, newton_root,
                       newton_root_with_trace, reconstruct_vertices,
                       residual_degree, sample_point, scan_seeds, sweep,
                       transformed_family)
from .checks import (Edge, Ray, TropicalCurveGraph, build_legendrian_line,
                     check_divisibility, check_tangency, classify_edge,
                     detect_line_like, dominant_exponent)
from .mesh import MeshExport, build_mesh, cell_contains, export_mesh
from .serialize import (dumps, graph_from_json, graph_to_json, parse_point,
                        parse_points, parse_series, series_from_json,
                        series_to_json, tropical_poly_from_json,
                        tropical_poly_to_json)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
