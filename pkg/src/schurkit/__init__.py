"""Exact central extensions, second cohomology and Schur multipliers of finite groups."""
from .abelian import AbelianStructure
from .clifford import (CliffordElement, clifford_E, clifford_extension, clifford_F, cover_extension,
                       double_cover_nontriviality, extraspecial_profile, sign_factor, clifford_structure_checks)
from .cohomology import (Cocycle2, aut_splitting_report, coboundary, cohomologous, ext1, h2_order,
                         is_coboundary, lambda2, random_coboundary, schur_multiplier, second_cohomology,
                         zero_cocycle)
from .errors import CapacityError, ContractViolation, PreconditionError, SchurkitError, SnfOverflowError
from .extensions import (CentralExtension, build_extension, commutator_pairing, equivalence_map,
                         extract_cocycle, is_split)
from .fields import FieldFq, field
from .groups import (FiniteGroup, Homomorphism, Subgroup, abelian_group, abelianization, alternating,
                     center, closure, conjugacy_classes, cyclic, derived_subgroup, dihedral, elementary,
                     is_abelian, is_perfect, quaternion, quotient, symmetric)
from .groupspec import parse_group_spec
from .ktheory import k2_finite_field, steinberg_symbol, symbol_identities_check
from .matrixgroups import MatrixGroupSpec, classical_group, dual_sequence_check, heisenberg
from .presentations import Presentation, Word, parse_presentation, realize, todd_coxeter
from .zlinalg import Gf2Matrix, quotient_structure, smith_normal_form, solve_mod

__version__ = "0.1.0"
