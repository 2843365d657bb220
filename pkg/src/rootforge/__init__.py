"""Exact lattice, root-system and structure-constant computations for del Pezzo degenerations."""

from __future__ import annotations

__version__ = "0.1.0"

from .exact_linalg import IntMatrix, SmithForm, determinant, rank_over, smith_normal_form
from .fields import ZZ, BinaryField, PrimeField, parse_field
from .lattice import PicardLattice, build_blowup_lattice, build_quadric_lattice, neg1_classes, neg2_classes, pairing
from .root_system import (
    DynkinType,
    RootSystem,
    cartan_matrix,
    coroot,
    detect_simple_roots,
    from_cartan_type,
    group_dimensions,
    highest_root,
    reflect,
    very_good_primes,
)
from .chains import divisor_sequence, fundamental_cycle, root_sequence
from .structure_constants import EpsilonTable, build_epsilon_table, build_nilpotent_algebra
from .cup_matrices import bad_prime_report, build_cup_matrix, verify_characteristic
from .d4_char2 import D4Module, build_d4_module, d4_cubic_configuration, verify_decomposition, verify_pi_maps
from .subsystem import Embedding, classify, count_embeddings_up_to_weyl, psi_root_system
