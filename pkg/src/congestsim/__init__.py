"""Bounded-bandwidth synchronous network simulation and distributed
subgraph detection, with sequential brute-force oracles for validation."""

from .errors import CongestError
from .graph import Graph
from .patterns import HPattern, RootedPattern
from .simulator import ACCEPT, REJECT, BandwidthBudget, RunReport, run

__version__ = "0.1.0"

__all__ = [
    "ACCEPT",
    "BandwidthBudget",
    "CongestError",
    "Graph",
    "HPattern",
    "REJECT",
    "RootedPattern",
    "RunReport",
    "run",
    "__version__",
]
