from latinbox.matching.BipartiteGraph import BipartiteGraph, NotRegularError
from latinbox.matching.Matching import Matching
from latinbox.matching.matchings import max_matching
from latinbox.matching.permanent import DEFAULT_PERMANENT_CAP, PermanentCapExceeded, permanent, permanent_naive, pm_count_lower_bound
from latinbox.matching.sampling import NoPerfectMatching, UniformMatchingSampler, random_subgraph, sample_uniform_pm, sample_fast_pm
from latinbox.matching.factors import l_factor, has_L_factor, hall_condition, default_delta
from latinbox.matching.audit import AuditReport, pseudorandom_audit
