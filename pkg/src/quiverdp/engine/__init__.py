"""DP evaluation, admissible quintuples and generators"""

from quiverdp.engine.dp import dp_eval, dp_multilinear
from quiverdp.engine.admissible import MultiDegree, enumerate_quintuples, solve_admissible
from quiverdp.engine.generator import build_generator, generators_for_degree

__all__ = [
    "dp_eval",
    "dp_multilinear",
    "MultiDegree",
    "enumerate_quintuples",
    "solve_admissible",
    "build_generator",
    "generators_for_degree",
]
