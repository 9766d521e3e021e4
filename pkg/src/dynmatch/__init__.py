"""Approximate maximum matching: two-pass streaming matcher, fully dynamic
size estimator, exact blossom oracle and an exact-arithmetic verifier."""

from .dynamic import MaximalState
from .estimator import EstimatorConfig, query, run_fully_dynamic
from .events import UpdateEvent, UpdateStream, parse_stream, read_stream
from .exact import brute_force_matching, maximum_matching
from .generators import GenSpec, generate, parse_genspec
from .graph import BMatching, FractionalMatching, Graph, Matching
from .oracle import GMMOracle, global_gmm
from .streaming import StreamParams, two_pass
from .verify import check_blossom, check_claims, streaming_report

__version__ = "0.1.0"

__all__ = [
    "BMatching",
    "EstimatorConfig",
    "FractionalMatching",
    "GMMOracle",
    "GenSpec",
    "Graph",
    "Matching",
    "MaximalState",
    "StreamParams",
    "UpdateEvent",
    "UpdateStream",
    "brute_force_matching",
    "check_blossom",
    "check_claims",
    "generate",
    "global_gmm",
    "maximum_matching",
    "parse_genspec",
    "parse_stream",
    "query",
    "read_stream",
    "run_fully_dynamic",
    "streaming_report",
    "two_pass",
]
