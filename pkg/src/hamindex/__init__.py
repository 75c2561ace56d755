"""Treewidth dynamic programs for Eulerian subgraph problems and the Hamiltonian index."""

from .graph import BudgetExceeded, Graph, GraphError
from .partitions import Partition, PartitionError
from .repset import PartitionSet
from .treedec import DecompositionError, NiceTreeDecomposition, TreeDecomposition

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DecompositionError",
    "Graph",
    "GraphError",
    "NiceTreeDecomposition",
    "Partition",
    "PartitionError",
    "PartitionSet",
    "TreeDecomposition",
]
