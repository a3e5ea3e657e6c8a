"""Random greedy packing of edge-disjoint triangles."""
from __future__ import annotations
import math

import numpy as np

from latinbox.packing.TripartiteHypergraph import TripartiteHypergraph
from latinbox.packing.TriangleSET import TriangleSET
from latinbox.packing.Trajectory import Trajectory, TrajectorySample
from latinbox.packing.prediction import predicted
from latinbox.utils import ParameterError, Seed, make_rng

FULL_RECORDING_LIMIT = 30

def greedy_pack(H: TripartiteHypergraph, seed: Seed = None) -> TriangleSET:
    """Adds uniformly random triangles of H edge-disjoint from the packing until
    none is left. Scanning a uniform order of all triangles and keeping the
    compatible ones is the same process, since the first compatible triangle of
    the rest of a uniform order is uniform among the compatible ones."""
    rng = make_rng(seed)
    triangles = H.triangles()
    packing = TriangleSET(H.n)

    for a, b, c in triangles[rng.permutation(len(triangles))].tolist():
        packing.tryAdd(a, b, c)
    return packing

def is_maximal(H: TripartiteHypergraph, packing: TriangleSET) -> bool:
    """No triangle of H can still be added."""
    return not any(packing.isEdgeDisjoint(a, b, c) for a, b, c in H.triangles().tolist())

def _sample(packing: TriangleSET, unseen: np.ndarray, step: int) -> TrajectorySample:
    n = packing.n
    permissible = (unseen & ~packing.covered_ab[:, :, None] & ~packing.covered_ac[:, None, :]
                   & ~packing.covered_bc[None, :, :])

    codegrees = np.concatenate([
        permissible.sum(axis=2)[~packing.covered_ab],
        permissible.sum(axis=1)[~packing.covered_ac],
        permissible.sum(axis=0)[~packing.covered_bc]
    ])
    codeg_mean = float(codegrees.mean()) if len(codegrees) else math.nan

    y, z = predicted(step / (n * n))
    return TrajectorySample(step, int(packing.deg.min()), float(packing.deg.mean()), int(packing.deg.max()), codeg_mean, y, z)

def process_pack(n: int, m_max: int | None = None, record_every: int | None = None, seed: Seed = None,
                 check: bool = False, packing_out: list | None = None) -> Trajectory:
    """Streams the n^3 triangles of the complete tripartite hypergraph in uniform
    order for m_max steps, inserting every triangle that is edge-disjoint from
    the packing. Samples are taken at step 0, every record_every steps and at
    m_max. check verifies the packing invariants after every step. The final
    packing is appended to packing_out when given."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    m_max = n * n if m_max is None else int(m_max)
    if not 0 <= m_max <= n ** 3:
        raise ParameterError(f"horizon must lie in [0, n^3], got {m_max}")
    record_every = record_every or max(1, math.ceil(n * n / 50))
    if record_every < 1:
        raise ParameterError(f"record_every must be positive, got {record_every}")
    if record_every == 1 and n > FULL_RECORDING_LIMIT:
        raise ParameterError(f"per-step recording is limited to n <= {FULL_RECORDING_LIMIT}")

    rng = make_rng(seed)
    order = rng.permutation(n ** 3)[:m_max]
    steps = zip(*(axis.tolist() for axis in np.unravel_index(order, (n, n, n))))

    packing = TriangleSET(n)
    unseen = np.ones((n, n, n), dtype=bool)
    trajectory = Trajectory(n, [_sample(packing, unseen, 0)])

    for step, (a, b, c) in enumerate(steps, start=1):
        unseen[a, b, c] = False
        packing.tryAdd(a, b, c)

        if check and not packing.checkInvariants():
            raise RuntimeError(f"packing invariants broken at step {step}")

        if step % record_every == 0 or step == m_max:
            trajectory.append(_sample(packing, unseen, step))

    if packing_out is not None:
        packing_out.append(packing)
    return trajectory
