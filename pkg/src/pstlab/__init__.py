"""Graph workbench for quotient-based perfect state transfer analysis."""

from pstlab.errors import GuardError, InputError, NumericError, PreconditionError
from pstlab.graphs import (
    Graph,
    build,
    cartesian_power,
    cartesian_product,
    christandl_path,
    circulant,
    complement,
    complete,
    cubelike,
    cycle,
    godsil_family,
    hypercube,
    join,
    path,
    scale,
    weighted_p4,
    weighted_p5,
)
from pstlab.partitions import (
    Partition,
    check_equitable,
    distance_minimal,
    is_equitable,
    partition_matrix,
    quotient,
    refine,
    seeded_partition,
    verify_partition_identities,
)
from pstlab.spectral import (
    P4Condition,
    Propagator,
    Spectrum,
    deleted_cospectral,
    eigendecompose,
    fidelity,
    p4_spectrum,
    p5_spectrum,
    propagator,
    pst_condition_p4,
)
from pstlab.walk import (
    FidelitySeries,
    fidelity_scan,
    is_periodic,
    verify_equivalence,
    verify_pst,
)
from pstlab.feder import (
    compose_quotients,
    feder_graph,
    occupation_vectors,
    orbit_partition,
    product_of_quotients,
    product_pst,
    symmetrizer_check,
    verify_boson_quotient_iso,
)
from pstlab.cubelike import (
    BinaryCode,
    CubelikeSpec,
    certify,
    code_of,
    is_self_orthogonal,
    omega,
    predict_pst,
    weight_gcd,
)
from pstlab.symmetry import (
    automorphisms,
    exists_swap,
    find_swap,
    is_isomorphic,
    triangle_census,
    triangle_total,
)

__version__ = "0.1.0"
