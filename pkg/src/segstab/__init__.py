"""Stabbing plane-graph edges with radius-r disks.

Exact and approximate solvers, the proximity-graph family they run on,
and tools for checking the hardness reduction numerically.
"""

from .candidates import CandidateSet, candidate_centers, restrict_candidates
from .cesd import CoverSolution, GuardExceeded, HexCover, cesd_approx, cesd_exact, hex_cover_bound
from .geometry import (Point, Segment, Stadium, Tolerance, dist, dist_point_segment,
                       intersect_boundaries, smallest_stabbing_disk, stabs)
from .graphs import (DegenerateInputError, InvalidGraphError, PlaneGraph, Triangulation, build_graph,
                     delaunay, edge_stats, emst, gabriel, nng, rng)
from .hardness import (Lemma1Report, ReductionInstance, ReductionReport, reduce_cdc, verify_lemma1,
                       verify_reduction)
from .io import Instance, SolutionFile, generate
from .pipeline import BenchConfig, bench, solve, verify_solution
from .predicates import in_circle, orientation
from .render import render_svg
from .setcover import BudgetExceeded, min_set_cover
from .solvers import StabbingSolution, exact_min_stab, grid_cover, ipgd_approx
from .verify import VerifyResult, verify_cover, verify_stabbing

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "candidate_centers",
    "restrict_candidates",
    "CoverSolution",
    "GuardExceeded",
    "HexCover",
    "cesd_approx",
    "cesd_exact",
    "hex_cover_bound",
    "Point",
    "Segment",
    "Stadium",
    "Tolerance",
    "dist",
    "dist_point_segment",
    "intersect_boundaries",
    "smallest_stabbing_disk",
    "stabs",
    "DegenerateInputError",
    "InvalidGraphError",
    "PlaneGraph",
    "Triangulation",
    "build_graph",
    "delaunay",
    "edge_stats",
    "emst",
    "gabriel",
    "nng",
    "rng",
    "Lemma1Report",
    "ReductionInstance",
    "ReductionReport",
    "reduce_cdc",
    "verify_lemma1",
    "verify_reduction",
    "Instance",
    "SolutionFile",
    "generate",
    "BenchConfig",
    "bench",
    "solve",
    "verify_solution",
    "in_circle",
    "orientation",
    "render_svg",
    "BudgetExceeded",
    "min_set_cover",
    "StabbingSolution",
    "exact_min_stab",
    "grid_cover",
    "ipgd_approx",
    "VerifyResult",
    "verify_cover",
    "verify_stabbing",
]
