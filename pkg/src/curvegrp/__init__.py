"""Fundamental groups of plane-curve complements from braid monodromy,
with finite-quotient tests for telling such groups apart."""
from .errors import (
    ComputationError,
    IncompleteConjugationTable,
    IntegerOverflow,
    SearchTooLarge,
    TableTooLarge,
)
from .finitegrp import ConcreteGroup, cyclic, dihedral, gk, group_from_name, parse_battery
from .freegroup import BraidWord, Word, artin_act, commutator
from .lattice import DivisorClass, intersect, lemma_preimD_report, node_count, pullback
from .presentation import (
    AbelianInvariants,
    Presentation,
    abelianization,
    add_relator,
    change_basis,
    kill_generator,
    rewrite_conjugations,
    tietze_simplify,
)
from .quotient import (
    dihedral_cover_test,
    distinguish,
    epimorphisms,
    fingerprint,
    gk_cover_test,
    homomorphisms,
    refute_consequence,
)
from .smith import snf
from .zvk import (
    Fiber,
    MonodromyInput,
    fibered_presentation,
    k_group,
    k_group_long,
    local_braid,
    nodal_cubic_pipeline,
    projective_quotient,
    z2_group,
)

__all__ = [
    "ComputationError",
    "IncompleteConjugationTable",
    "IntegerOverflow",
    "SearchTooLarge",
    "TableTooLarge",
    "ConcreteGroup",
    "cyclic",
    "dihedral",
    "gk",
    "group_from_name",
    "parse_battery",
    "BraidWord",
    "Word",
    "artin_act",
    "commutator",
    "DivisorClass",
    "intersect",
    "lemma_preimD_report",
    "node_count",
    "pullback",
    "AbelianInvariants",
    "Presentation",
    "abelianization",
    "add_relator",
    "change_basis",
    "kill_generator",
    "rewrite_conjugations",
    "tietze_simplify",
    "dihedral_cover_test",
    "distinguish",
    "epimorphisms",
    "fingerprint",
    "gk_cover_test",
    "homomorphisms",
    "refute_consequence",
    "snf",
    "Fiber",
    "MonodromyInput",
    "fibered_presentation",
    "k_group",
    "k_group_long",
    "local_braid",
    "nodal_cubic_pipeline",
    "projective_quotient",
    "z2_group",
]

__version__ = "0.1.0"
