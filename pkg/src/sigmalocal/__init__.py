"""Partitions of the primes, classes of finite groups defined through them, and
corpus-level checks of closure under subgroups with pairwise coprime indices.

Groups are permutation groups; every structural question is answered from the
full subgroup lattice, so the practical limit is order about 1000.
"""

from .perm import Permutation, PermGroup, parse_cycles, format_cycles
from .sigma import (Block, BlockSet, SigmaPartition, sigma1, sigma_1pi, from_blocks,
                    parse_sigma, format_sigma, sigma_of, are_sigma_coprime, part_of,
                    blockset)
from .builders import (cyclic, dihedral, symmetric, alternating, elementary_abelian,
                       quaternion, direct_product, regular_wreath, from_name)
from .structure import all_subgroups, normal_subgroups, quotient, chief_series
from .sigma_classes import (is_sigma_primary, is_sigma_soluble, is_sigma_nilpotent,
                            is_meta_sigma_nilpotent, hall_subgroup, is_pi_closed, O_Pi,
                            O_PiPrime_Pi, F_Pi, F_sigma, is_pi_special)
from .formations import (GroupClass, FormationSigmaFunction, builtin, class_product,
                         gaschuetz_product, residual, lf_sigma_member, parse_class)
from .closure import (ClosureReport, find_witness_tuple, check_sigma_t_closed,
                      verify_theorem, non_sigma_local_witness, SUITES)
from .corpus import Corpus, GroupFileRecord, build_corpus, load_group_file, save_group_file

__version__ = "0.1.0"
