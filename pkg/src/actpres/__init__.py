"""Presentations of monoid acts: rewriting, congruences, consequence search and constructions."""

from .monoid import (
    Exponent, FiniteMonoid, FreeMonoid, MonoidError, MonoidHandle, RewriteRule,
    RewritingMonoid, RewritingSystem, RuleSchema, check_local_confluence,
    check_termination, enumerate_elements, monoid_from_transformations, multiply,
    normal_form, word, word_equal,
)
from .acts import (
    ActCongruence, ActError, FiniteAct, FreeActElement, Subact, act_from_presentation,
    congruence_closure, el, free_action, induced_homomorphism, kernel_congruence,
    rees_quotient, subact_generated,
)
from .presentations import (
    ActPresentation, Disproved, Proved, RSequence, Relation, Unknown,
    canonical_presentation, is_consequence, satisfies, tietze_apply,
    trivial_act_presentation, verify_presentation,
)

__version__ = "0.1.0"
