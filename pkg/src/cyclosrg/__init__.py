"""Strongly regular Cayley graphs on finite fields from unions of cyclotomic classes."""

from .cyclotomy import (
    CompositeCyclotomic,
    ConnectionSet,
    CosetDecomposition,
    CyclotomicInteger,
    GaussPeriodSet,
    GaussSumDecomposition,
    build_connection_set,
    coset_decomposition,
    decompose_gauss_sum,
    gauss_periods,
    gauss_sum_exact,
    period_products,
)
from .ffield import ExtensionField, FieldElement, build_field, enumerate_classes
from .index_theory import (
    IndexParameters,
    SrgPrediction,
    Verdict,
    check_hypotheses,
    find_difference_set_cosets,
    index_parameters,
    multiplicative_order,
    predict,
)
from .verifier import adjacency_oracle, cross_check, profile_spectrum, srg_decision

__version__ = "0.1.0"
