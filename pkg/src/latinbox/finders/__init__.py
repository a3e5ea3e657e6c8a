from latinbox.finders.FinderOutcome import FinderOutcome, FinderStatus
from latinbox.finders.StagedParams import StagedParams
from latinbox.finders.exact import find_exact
from latinbox.finders.block import block_order, find_block_recursive
from latinbox.finders.plane import PlaneLogger, find_plane_matching
from latinbox.finders.staged import StagedFailure, StagedLogger, StagedSets, staged_sets, build_B2, merge_packing, find_staged
