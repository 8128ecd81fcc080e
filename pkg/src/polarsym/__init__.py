"""Exact symmetry analysis of polar-code split channels over symmetric B-DMCs."""

from .channel import (
    AlphabetPartition,
    ChannelError,
    SymmetricChannel,
    apply_mask,
    distinct_d_check,
    is_degenerate,
    load_channel,
    make_bec,
    make_bsc,
    multiset_channel,
    parse_channel,
    validate,
)
from .counting import (
    CountInstance,
    CountResult,
    OccurrenceVector,
    bsc_class_count,
    class_count,
    count_self,
    count_symm,
    count_yprime,
    reduce_instance,
    star,
    upper_bound_i0,
    yprime,
    z_map,
)
from .equivalence import (
    ClassReport,
    EquivalenceClass,
    bsc_canonicalize,
    enumerate_classes,
    prob_equivalent,
    symmetry_orbit,
    verify_blocklength_invariance,
    verify_doubling,
    verify_permutation_theorem,
)
from .gf2 import BitMatrix, kron_power, row_space, rowspace_equal, solve_tail, tail_rows
from .limits import CapExceeded
from .splitprob import split_prob, split_prob_general, w_combined, w_n_vector

__version__ = "0.1.0"
