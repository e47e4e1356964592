from permatch.graphs.base import (  # noqa: F401
    BipartiteGraph,
    Digraph,
    PerfectMatching,
    UndirectedGraph,
    new_digraph,
    new_graph,
)
from permatch.graphs.constructions import (  # noqa: F401
    blowup,
    complete_bipartite_graph,
    complete_graph,
    construct,
    directed_cycle,
    thm2_h,
)
from permatch.graphs.io import parse_graph, read_graph, serialize_graph, write_graph  # noqa: F401
from permatch.graphs.models import (  # noqa: F401
    bipartitions_over_matching,
    derangement_model,
    permutation_model,
)
