"""Certified tangencies between plane torus curves and subtori, with explicit height bounds."""

from .algebraic import AlgebraicPoint, is_root_of_unity, solve_system, torsion_point_test
from .bounds import (BoundInputs, audit_point, bezout_degree_bound, bound_report,
                     habegger_height_bound, lemma31_rhs, theorem_slope_bound_log, upI_bound,
                     verify_lemma31)
from .corpus import CorpusEntry, ingest_corpus
from .errors import (AuditFailure, CertificationError, DegreeError, InfiniteIntersection,
                     NotSingular, ParseError, PrecisionExhausted, SingularPointOfCurve,
                     TangentSlopesError, TranslateOfSubtorus)
from .heights import HeightValue, compare, mahler_height, point_height, poly_height
from .poly import SparsePoly, UniPoly, parse_poly, resultant, squarefree_check
from .report import ExclusionReport, dehn_exclusion_report, recertify_report
from .roots import isolate_roots
from .tangency import (AnyTranslate, Slope, TorsionUpTo, Unit, branch_tangents,
                       curve_singular_points, sigma_C, singular_intersections, slope_scan,
                       tangency_locus, tangency_poly)
from .verify import run_verification_suite

__version__ = "0.1.0"
