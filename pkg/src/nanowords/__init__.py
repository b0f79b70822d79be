"""Virtual strings as nanowords: moves, invariants, and census tabulation."""

from .words import (
    EMPTY,
    Nanoword,
    NanowordError,
    compare,
    count,
    format_nanoword,
    is_increasing,
    normalize_increasing,
    parse_nanoword,
    transform,
)
from .moves import (
    MoveError,
    MoveInstance,
    ThreeClass,
    TruncationError,
    applicable_moves,
    apply_move,
    is_reducible,
    reduce_to_irreducible,
    shift_rotate,
    three_class,
)
from .invariants import (
    BasedMatrix,
    CanonicalPBM,
    InvariantError,
    LetterStats,
    UPolynomial,
    based_matrix,
    canonical_form,
    canonical_order,
    covering,
    covering_raw,
    is_primitive,
    linking,
    m_profile,
    n_values,
    phi_string,
    reduce_based_matrix,
    string_phi,
    theta,
    u_polynomial,
)
from .census import (
    CensusTable,
    StringRecord,
    UnresolvedGroup,
    build_census,
    build_tables,
    candidates,
    distinguish,
    identify,
    increasing_gauss_words,
    symmetry_classify,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
