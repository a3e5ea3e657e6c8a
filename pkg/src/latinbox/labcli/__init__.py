from latinbox.labcli.Config import ExperimentConfig, FIELD_NAMES, FINDERS, KINDS, load_config, read_config_file
from latinbox.labcli.TrialRecord import TrialRecord
from latinbox.labcli.TrialPool import TrialPool, trial_jobs
from latinbox.labcli.ResultWriter import ResultWriter
from latinbox.labcli.stats import (LogisticFit, wilson_interval, binomial_sigma, z_score, logistic_fit, monotone_violations,
                                   chernoff_tail, chernoff_alpha)
from latinbox.labcli.acceptance import AcceptanceEntry, load_acceptance
from latinbox.labcli.plots import SchemaError, emit_plot, infer_side
from latinbox.labcli.experiments import (ExperimentFailure, run_experiment, run_threshold_sweep, run_hitting_time,
                                         run_q_validation, run_packing_campaign, tau_box_search, tau_box_linear,
                                         containment_successes, replay_trial)
