"""
Verification of a strategy's self-testing conclusions:  condition norms, the swap isometry and
extraction distances, certified bounds, and the self-test report.
"""
from .exceptions import VerificationError, JunkExtractionError
from .conditions import (ConditionNorms, SideProducts, measure_epsilons,
                         measure_general_conditions)
from .isometry import (JUNK_POLICIES, ideal_state, pauli_target, swap_isometry_apply,
                       DistanceEvaluator, extraction_distance)
from .certify import (SelfTestReport, certified_epsilons, certify, scaling_ratios,
                      distance_pairs)
from .report import report_to_dict, dump_report
