from latinbox.packing.TripartiteHypergraph import TripartiteHypergraph, from_array
from latinbox.packing.TriangleSET import TriangleSET
from latinbox.packing.Trajectory import COLUMNS, Trajectory, TrajectorySample
from latinbox.packing.prediction import DeviationReport, predicted, ode_residual, deviation_report
from latinbox.packing.greedy import greedy_pack, is_maximal, process_pack
