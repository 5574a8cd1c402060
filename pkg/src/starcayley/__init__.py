"""Spectra of Cayley graphs on S_n generated by the star transpositions (1 i).

Graph builders, explicit integer eigenvectors, exact rank/nullity
certificates and a floating-point spectrum oracle.
"""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    Permutation,
    apply_transposition,
    compose,
    parity,
    permutation_from_tuple,
    rank_tuple,
    unrank_tuple,
)
from .errors import (  # noqa: E402
    CapacityError,
    CertificationError,
    InvalidArgument,
    NotBipartiteError,
)
from .graphs import (  # noqa: E402
    LoopyGraph,
    VertexMap,
    bipartition,
    build_cayley_star,
    build_k2,
    build_partial_permutation,
    build_schreier,
    covering_projection,
    iso_partial_to_cayley,
    maximal_cliques_partial,
    schreier_projection,
    verify_cover,
)
from .exact import exact_matvec, exact_nullity, exact_rank, verify_eigenvector  # noqa: E402
from .eigenvectors import (  # noqa: E402
    IndexFamily,
    SignedVector,
    SupportPair,
    build_independent_family,
    build_schreier_eigenvectors,
    build_signed_family,
    build_zero_eigenbasis,
    lift_along_projection,
    negate_on_bipartition,
    signed_vector_phi,
    verify_independence,
)
from .numeric import dense_symmetric_eigenvalues, integrality_check  # noqa: E402
from .certify import CertificateReport, certify_spectrum_lower_bounds  # noqa: E402
