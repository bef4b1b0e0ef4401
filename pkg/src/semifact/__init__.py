"""Exact-arithmetic factorization toolkit for information semialgebras and
their upper triangular matrix monoids."""

from .errors import DomainError, Inconclusive, NotMember, Unsupported
from .rationals import Rat, format_rat, parse_rat
from .semialgebras import (
    Bounds,
    ChainReport,
    EnumerationResult,
    ExpSum,
    Factorization,
    Semialgebra,
    accp_probe,
    add_atoms,
    add_divisors,
    add_factorizations,
    add_length_set,
    canonical_digits,
    contains,
    format_element,
    is_add_atom,
    is_mult_atom,
    is_mult_unit,
    mem_M,
    mult_atoms,
    mult_divisors,
    mult_factorizations,
    mult_length_set,
    parse_element,
    parse_semialgebra,
)
from .matrix_monoids import (
    RigidEnumeration,
    RigidFactorization,
    UTMatrix,
    almost_prime_like_probe,
    atom_candidates,
    det,
    divides_up_to_permutation,
    embed_additive,
    embed_multiplicative,
    format_matrix,
    hfm_counterexample,
    identity,
    is_matrix_atom,
    is_regular,
    left_divide,
    make_matrix,
    mat_mul,
    parse_matrix,
    rigid_factorizations,
    rigid_length_set,
    sigma,
    weight,
)
from .verifier import CheckReport, brute_force_matrix_atom, run_all

__version__ = "0.1.0"
