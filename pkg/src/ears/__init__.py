"""Exact-arithmetic toolkit for extended affine root systems (EARS).

Builds EARS from finite root systems and semilattice data, realizes their
extended affine Weyl groups as exact rational matrix groups, computes orbits,
decides and certifies minimality, and checks Coxeter-presentation and
presentation-by-conjugation properties.
"""

from .linalg import (
    AmbientSpace,
    DimensionMismatch,
    IsotropicRoot,
    Matrix,
    Vector,
    coroot,
    preserves_form,
    reflect,
    reflection_matrix,
    vec,
)
from .semilattice import (
    Lattice,
    RankMismatch,
    Semilattice,
    verify_semilattice,
)
from .finite import (
    FiniteRootSystem,
    FiniteWeylGroup,
    InvalidRank,
    build_finite,
    finite_weyl,
    invariant_generating_subsets,
    length_classes,
)
from .core import (
    AxiomReport,
    CharacterizeReport,
    ConstraintViolation,
    EarsDescriptor,
    NotBCType,
    WrongArity,
    characterize,
    construct_ears,
    descriptor_from_config,
    descriptor_to_config,
    irc,
    irc_window,
    is_root,
    trim,
    verify_axioms,
)
from .weyl import (
    Generates,
    GroupElement,
    Inconclusive,
    Minimal,
    NotAnOrbit,
    NotGenerates,
    NotMinimal,
    NotOverFinitePart,
    OrbitDescriptor,
    Stuck,
    Unknown,
    anisotropic_orbits,
    extract_minimal,
    generation_check,
    minimality,
    orbit_bfs,
    orbit_closed_form,
    word_element,
)
from .presentation import (
    GeneratorWord,
    Infinite,
    No,
    NoneFound,
    NotARelation,
    Obstruction,
    ParityVector,
    Undetermined,
    UnknownRoot,
    Yes,
    conjugation_obstruction,
    conjugation_relation,
    conjugation_rewrite,
    coxeter_order,
    coxeter_presentation_decision,
    evaluate,
    line_relation,
    orbit_id,
    parity,
    square_relation,
    witness_word,
)

__version__ = "0.1.0"
