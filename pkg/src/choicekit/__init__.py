"""choicekit: a generic engine for choice logics.

Formulas mix classical connectives with pluggable binary choice connectives
(ordered disjunction, ordered conjunction, lexicographic choice, ...).  The
package evaluates optionality and satisfaction degrees, finds preferred
models, decides degree/full/strong equivalence, synthesizes formulas from
degree tables, and encodes lexicographic optimization problems.
"""

from .connectives import (
    BUILTIN_LOGICS,
    BoundViolationError,
    ConnectiveSpec,
    LogicRegistry,
    UnknownConnectiveError,
    UnknownLogicError,
    builtin_registry,
    check_opt_ignoring,
    connective_degree,
    connective_optionality,
)
from .equivalence import (
    EquivVerdict,
    check_associative,
    degree_equivalent,
    fully_equivalent,
    inequivalence_context,
    strongly_equivalent,
)
from .kernel import (
    BOTTOM,
    INF,
    TOP,
    And,
    Atom,
    Choice,
    Formula,
    InvalidPathError,
    Neg,
    Or,
    interpretation,
    size_of,
    substitute,
    vars_of,
)
from .models import (
    EnumerationLimitError,
    degree_profile,
    min_degree,
    min_degree_binary_search,
    model_check,
    pref_model_check,
    pref_model_sat,
    preferred_models,
    sat_at_most,
)
from .reductions import (
    LexInstance,
    LogBoundError,
    encode_lexmaxsat_lcl,
    encode_loglex,
    lex_formula_lcl,
    lex_oracle,
    solve_via_encoding,
)
from .semantics import compile_formula, degree, optionality
from .synthesis import (
    DegreeAssignment,
    UnobtainableDegreeError,
    characteristic_formula,
    degree_witnesses,
    ground_to_degree,
    reachable_degrees,
    synthesize,
)
from .syntax import FormulaSyntaxError, NonAssociativeChainWarning, parse, render

__version__ = "0.1.0"
