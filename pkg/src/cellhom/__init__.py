"""Exact cellular homology: Smith normal form, chain complexes, CW and
filtered complexes, nerves of covers, and Poincare-polynomial bookkeeping."""

from .chain import (
    ChainCheck, ChainComplex, ChainConditionError, HomologyGroup, ValidationError, betti,
    betti_numbers, euler_characteristic, homology, homology_with_coefficients,
    morse_inequalities, poincare_polynomial, rank_table, validate_complex,
)
from .cw import (
    Cell, CWComplex, CWError, IncidenceError, build_chain_complex, degree_from_attaching_word,
    product_complex, standard_complex,
)
from .linalg import (
    IntMatrix, determinant, gcd_euclid, gcd_via_totient, is_unimodular, rank_mod_p,
    rank_over_rationals,
)
from .morse import (
    CriticalRecord, FilteredComplex, analyze_index_sequence, analyze_nullity_sequence,
    filtered_complex_from_critical_data, interval_invariants, perturb, sublevel_homology,
)
from .nerve import Cover, SimplicialComplex, nerve_complex, simplicial_chain_complex
from .poly import GradedPolynomial
from .smith import SNFResult, determinant_divisor, elementary_divisors, smith_normal_form, verify_snf
from .spaces import (
    HolonomyFactor, berger_lookup, classify_growth, decompose_holonomy, kunneth_poincare,
    rational_space_poincare,
)

__version__ = "0.1.0"
