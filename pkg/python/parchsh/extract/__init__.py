"""
Extraction of the self-testing operators X'_k, Z'_k from a strategy, the value-preserving
relabelings, and the question searches that select the distinguished questions.
"""
from .exceptions import ExtractionError
from .operators import (ExtractedOperators, build_xz, pair_bounds, rigidity_pair_norms,
                        certified_pair_delta)
from .relabel import (RelabelStep, relabel_alice_bit, relabel_bob_bit, relabel,
                      apply_transcript, relabel_by)
from .search import (DEF_TIE_TOL, DEF_GUARANTEE_TOL, QuestionSearchResult, find_best_qb,
                     find_best_qa, canonicalize, find_pair_question, log_question_set,
                     search_questions, few_question_delta)
