"""Defeasible logics as data: run them, check proofs, and analyse their
inference rules (strong negation, P-discipline, stratification)."""

from .builtins import CATALOG, get_logic
from .conditions import canonical, is_neg_only, is_p_disciplined, is_pos_only, negate, sneg
from .engine import (
    ConclusionSet, Proof, ProofCheck, check_proof, compute_closure, derive_proof,
    evaluate_condition, query,
)
from .errors import (
    CyclicClosureDependency, DLError, LogicError, NotAConsequence, NotWellDisciplined,
    TheoryError, TheorySyntaxError, UnboundVariableError,
)
from .logic import (
    ClosureDecl, DisciplineReport, InferenceRule, LogicDef, check_logic, parse_logic,
    print_logic, stratify,
)
from .tags import Conclusion, Tag, parse_conclusion
from .theory import (
    DefeasibleTheory, HeadSubset, Literal, Rule, RuleKind, complement, format_theory,
    literal_universe, parse_theory, rules_with_head,
)

__version__ = "0.1.0"
