"""Stellar manifolds: complexes, stellar moves, stellar structures and their
Coxeter groups."""
from .complex import (
    Complex,
    boundary,
    canonical_form,
    connected_components,
    euler,
    is_closed,
    join,
    link,
    simplex,
    star_rest,
)
from .errors import (
    InvariantViolation,
    JoinError,
    MoveError,
    NotAPseudoManifold,
    NotUniformError,
    ParseError,
    StellarError,
    StructureError,
    WeldError,
)
from .moves import Move, apply_script, bounded_equivalence_search, relabel, subdivide, weld
from .recognition import classify_surface, is_stellar_manifold, recognize_ball, recognize_sphere
from .structure import (
    RegularEquivalence,
    StellarStructure,
    build_structure,
    induced_equivalence,
    quotient_counts,
    reglue,
    validate_regular,
    verify_euler_relation,
)
from .prism import cone, free_face_collapse, prism

__all__ = [name for name in dir() if not name.startswith("_")]
