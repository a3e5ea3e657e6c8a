from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import maximum_bipartite_matching

from latinbox.matching.BipartiteGraph import BipartiteGraph
from latinbox.matching.Matching import Matching

def max_matching(G: BipartiteGraph) -> Matching:
    """Maximum cardinality matching (Hopcroft-Karp, O(E sqrt(V)))."""
    if G.n == 0 or G.edgeCount == 0:
        return Matching(G.n)

    # perm_type="column" gives the matched column of every row
    pairing = maximum_bipartite_matching(G.toCsr(), perm_type="column")
    return Matching(G.n, np.asarray(pairing, dtype=np.int64))
