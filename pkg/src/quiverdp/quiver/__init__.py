"""Mixed quivers, their group action and the reduction to zigzag form"""

from quiverdp.quiver.model import MixedQuiver, ZigzagQuiver, classify_zigzag
from quiverdp.quiver.io import dump_quiver, load_quiver
from quiverdp.quiver.reduction import ReductionMap, reduce
from quiverdp.quiver.samples import SAMPLES

__all__ = [
    "MixedQuiver",
    "ZigzagQuiver",
    "classify_zigzag",
    "dump_quiver",
    "load_quiver",
    "ReductionMap",
    "reduce",
    "SAMPLES",
]
