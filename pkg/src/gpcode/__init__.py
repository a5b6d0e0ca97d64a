"""Exact computations around irreducible cyclic codes and generalized
Paley graphs: weight distributions, spectra, Gaussian periods, and
Artin-Schreier point counts, with brute-force oracles for everything."""

from .field import (
    FieldSpec,
    build_field,
    is_prime,
    is_primitive_divisor,
    psi,
    trace,
)
from .periods import GaussPeriodSet, check_relations, coset, gaussian_periods
from .graph import (
    DecompositionWitness,
    GraphSpec,
    Spectrum,
    brute_spectrum_oracle,
    check_complete_product,
    find_decomposition,
    graph_spec,
    is_hamming,
    is_semiprimitive_pair,
    spectrum,
)
from .codes import (
    CodeParams,
    WeightDistribution,
    brute_weight_distribution,
    code_params,
    codeword,
    eigenvalues_from_weights,
    weights_from_spectrum,
)
from .closed_forms import (
    CompositionTerm,
    DiophantineSolution,
    compose,
    cubic_base,
    cubic_tower,
    one_weight_tower,
    quartic_base,
    quartic_tower,
    reduce_periods,
    reduce_periods_semiprimitive,
    semiprimitive_base,
    semiprimitive_tower,
    simplex_distribution,
    solve_cubic_diophantine,
    solve_quartic_diophantine,
)
from .curves import (
    CurveCount,
    CurveReduction,
    count_congruences,
    count_points_brute,
    count_points_from_eigenvalue,
    count_points_naive,
    counts_all_beta,
    curve_count,
    curve_reduction,
)

__version__ = "0.1.0"
