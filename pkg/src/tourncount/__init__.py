"""Exact and asymptotic Hamilton cycle counts for tournaments."""

from .exact import (
    CapExceededError,
    PathCoverProfile,
    brute_force_cycles,
    brute_force_path_covers,
    count_hamilton_cycles,
    count_hamilton_paths,
    count_k_path_covers,
    find_hamilton_path,
    path_cover_profile,
)
from .formula import (
    hamilton_count_triangular,
    internal_free_count,
    joining_factor,
    lower_bound,
    ordered_bell,
    stirling2,
    transitive_triangular_count,
)
from .tournament import (
    InvalidTournamentError,
    Tournament,
    TriangularComposition,
    compose_c3,
    induced_subtournament,
    is_transitive,
    make_random,
    make_transitive,
    parse,
    serialize,
)

__version__ = "0.1.0"
