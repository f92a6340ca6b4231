"""Checkers for hereditary König-Egerváry set-systems and KE graphs."""

from .errors import (
    CapExceededError,
    DisagreementError,
    EmptyFamilyError,
    EmptySubfamilyError,
    HkeError,
    NonUniformError,
    OverlapError,
    ParseError,
    TheoremViolation,
)
from .graph import (
    Graph,
    Matching,
    OmegaFamily,
    independence,
    is_ke_graph,
    ke_subfamily_implies_hke,
    matching_number,
    omega_is_hke,
    saturating_matching,
    verify_characterization,
)
from .hke import (
    HkeVerdict,
    Witness,
    equivalence_audit,
    exercise_identities,
    generate_hke,
    hke_bruteforce,
    hke_pairs,
    hke_partition,
)
from .sets import (
    AtomProfile,
    ElementSet,
    GroundSet,
    SetSystem,
    atom_profile,
    duality_equality,
    family_intersection,
    family_union,
    ke_check,
    uniform_alpha,
)

__version__ = "0.1.0"
