# @package      gwtree
# @file         __init__.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
__version__ = '0.1.0'

from .offspring import Pmf, OffspringSchedule, JointWX, pmf_from_weights, poisson_pmf
from .offspring import joint_wx, law_w_given_x0, law_wx_given_xge1, multinomial_event_prob
from .tree import Tree, LEAF, parse, serialize, height, reaches_level, enumerate_trees, log_prob
from .tree import sample_unconditioned
from .survival import SurvivalTable, build_survival_table, sample_q, sample_r, sample_p
from .survival import log_q, log_r, log_p_tilde, check_equivalence
from .multitype import TypeSystem, TypeProbTable, build_type_table, sample_type, log_q_type
from .multitype import classify, counting_vector, multinomial_coeff, check_equivalence_multitype, get_system
from .multitype import binary_subtree_system, grandchildren_system, height_band_system, survival_system
from .search import CostTable, SearchOutcome, build_cost_table, simulate_search, monte_carlo_cost
from .poisson import poisson_survival, poisson_cost, optimize_mu, infinite_survival, infinite_survival_lambert
from .poisson import infinite_cost, lambert_w_minus1, mu_opt_limit, cost_curve
from .run import RunConfig
from .experiment import Experiment, set_experiment, get_experiment
