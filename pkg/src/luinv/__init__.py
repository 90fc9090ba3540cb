"""Local-unitary invariants of multi-qubit states via state-algebra cumulants."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    ShapeError,
    SingularError,
    apply_local,
    exp,
    inverse,
    log,
    permute_sites,
    product,
    tensor,
)
from .cumulants import (
    cumulant_poly,
    cumulant_table,
    dimension_counts,
    set_partitions,
    splits_partition,
    splitting_indices,
)
from .density import density_matrix, partial_trace
from .haar import TwirlEstimate, haar_su2, haar_su2_batch, moment_battery, twirl_estimate
from .invariants import (
    check_relations,
    cumulant_invariant,
    gamma_factor,
    invariant_family,
    invariant_jacobian,
    jacobian_rank,
    sudbery_j,
    total_invariant_count,
)
from .mixed import lifted_invariant_pair, mixed_invariant, zhou_cumulant, zhou_m
from .states import generate_state, load_state, parse_partition, save_state
from .transvectants import (
    covariant_norm,
    family_covariant,
    fundamental_form,
    g_covariant,
    h_covariant,
    hyperdeterminant,
    iota_chain,
    three_tangle,
    transvectant,
)

__all__ = [
    "AlgebraElement",
    "ShapeError",
    "SingularError",
    "TwirlEstimate",
    "apply_local",
    "check_relations",
    "covariant_norm",
    "cumulant_invariant",
    "cumulant_poly",
    "cumulant_table",
    "density_matrix",
    "dimension_counts",
    "exp",
    "family_covariant",
    "fundamental_form",
    "g_covariant",
    "gamma_factor",
    "generate_state",
    "h_covariant",
    "haar_su2",
    "haar_su2_batch",
    "hyperdeterminant",
    "invariant_family",
    "invariant_jacobian",
    "inverse",
    "iota_chain",
    "jacobian_rank",
    "lifted_invariant_pair",
    "load_state",
    "log",
    "mixed_invariant",
    "moment_battery",
    "parse_partition",
    "partial_trace",
    "permute_sites",
    "product",
    "save_state",
    "set_partitions",
    "splits_partition",
    "splitting_indices",
    "sudbery_j",
    "tensor",
    "three_tangle",
    "total_invariant_count",
    "transvectant",
    "twirl_estimate",
    "zhou_cumulant",
    "zhou_m",
    "__version__",
]
