"""Exact closed-walk enumeration on graph products and restricted integer
lattices, with the matching spectral distributions and product densities.

The package splits into four layers:

- :mod:`latticewalks.graphs`: graphs on integer coordinate tuples, Kronecker
  and Cartesian products, lattice restrictions, balls, and checked
  coordinate-change isomorphisms.
- :mod:`latticewalks.walks`: exact big-integer closed-walk counts, the named
  lattice registry with closed-form counting formulas, and coincidence
  reports for pairs of rooted graphs.
- :mod:`latticewalks.spectral`: moment sequences, arcsine and semicircle
  laws, classical and Mellin convolutions, and finite path spectra.
- :mod:`latticewalks.elliptic`: complete elliptic integrals via the
  arithmetic-geometric mean, product density kernels on [-4, 4], and
  adaptive quadrature for their moments.
"""

from .elliptic import (
    DensityKernel,
    EllipticPair,
    adaptive_quadrature,
    arcsine_density,
    density,
    density_moment,
    density_samples_csv,
    elliptic_KE,
    mellin_density_convolve,
    semicircle_density,
)
from .errors import NumericalError, ResourceLimitError
from .graphs import (
    FiniteGraph,
    ImplicitGraph,
    IsoMap,
    IsoReport,
    LatticeDomain,
    ball,
    cartesian,
    chamber3,
    connected_components,
    degree_histogram,
    diamond,
    diamond_to_kron_map,
    domain_from_predicate,
    full_plane,
    half_line,
    half_plane,
    halfplane_to_kron_map,
    induced_subgraph,
    integer_line,
    kronecker,
    path_graph,
    plane_to_kron_map,
    quarter_plane,
    restrict_lattice,
    strip,
    strip_to_kron_map,
    to_edge_list,
    verify_isomorphism,
    wedge,
    wedge_to_kron_map,
)
from .spectral import (
    ArcSine,
    ClassicalConv,
    Discrete,
    MellinConv,
    MomentSequence,
    PathSpectrum,
    Semicircle,
    classical_convolve,
    mellin_convolve,
    moment,
    moments_csv,
    named_density,
    path_spectrum,
    weak_equality_by_moments,
)
from .walks import (
    CoincidenceReport,
    LatticeKind,
    WalkTable,
    build_lattice,
    cartesian_walk_convolution,
    catalan,
    central_binomial,
    closed_form_walks,
    kronecker_walk_product,
    lattice_kind,
    lattice_walk_kinds,
    moment_coincidence_report,
    path_closed_walks,
    verify_binomial_identity,
    walk_count,
    walk_table,
)

__version__ = "0.1.0"

__all__ = [
    "ArcSine",
    "ClassicalConv",
    "CoincidenceReport",
    "DensityKernel",
    "Discrete",
    "EllipticPair",
    "FiniteGraph",
    "ImplicitGraph",
    "IsoMap",
    "IsoReport",
    "LatticeDomain",
    "LatticeKind",
    "MellinConv",
    "MomentSequence",
    "NumericalError",
    "PathSpectrum",
    "ResourceLimitError",
    "Semicircle",
    "WalkTable",
    "adaptive_quadrature",
    "arcsine_density",
    "ball",
    "build_lattice",
    "cartesian",
    "cartesian_walk_convolution",
    "catalan",
    "central_binomial",
    "chamber3",
    "classical_convolve",
    "closed_form_walks",
    "connected_components",
    "degree_histogram",
    "density",
    "density_moment",
    "density_samples_csv",
    "diamond",
    "diamond_to_kron_map",
    "domain_from_predicate",
    "elliptic_KE",
    "full_plane",
    "half_line",
    "half_plane",
    "halfplane_to_kron_map",
    "induced_subgraph",
    "integer_line",
    "kronecker",
    "kronecker_walk_product",
    "lattice_kind",
    "lattice_walk_kinds",
    "mellin_convolve",
    "mellin_density_convolve",
    "moment",
    "moment_coincidence_report",
    "moments_csv",
    "named_density",
    "path_closed_walks",
    "path_graph",
    "path_spectrum",
    "plane_to_kron_map",
    "quarter_plane",
    "restrict_lattice",
    "semicircle_density",
    "strip",
    "strip_to_kron_map",
    "to_edge_list",
    "verify_binomial_identity",
    "verify_isomorphism",
    "walk_count",
    "walk_table",
    "wedge",
    "wedge_to_kron_map",
]
