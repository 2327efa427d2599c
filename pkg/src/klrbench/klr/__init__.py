from .algebra import (
    DiagramBasisElement,
    KLRAlgebra,
    KLRElement,
    RewriteLimitExceeded,
    algebra_for,
    canonical_word,
    degree,
    graded_dim_hom,
    multiply,
)
from .cyclotomic import CyclotomicQuotient, cyclotomic_quotient
from .expr import ExprSyntaxError, evaluate_expression, parse_expression
from .relations import RelationReport, check_relations, check_relations_matrices
