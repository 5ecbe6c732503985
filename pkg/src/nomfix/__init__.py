"""Nominal terms with fixed-point and freshness constraints.

Decision procedures for three proof systems (freshness, fixed-point with two
variable rules, strong nu-quantified fixed-point), translations between them,
nominal-set models with a validity checker, and a validator for candidate
solutions of nominal (C-)unification problems.
"""

from .deriv_fresh import C, CORE, check_alpha, check_fresh
from .deriv_fix import (GROUP_GENERATED, SUBSET_DOM, Axiom, Theory,
                        VarRuleMode, check_eq_fix, check_fix,
                        commutativity_theory, core_theory, perm_proof,
                        tree_from_dict, tree_to_dict, verify_proof)
from .deriv_strong import (check_alpha_strong, check_fix_strong, flatten_strong,
                           fresh_judgement_to_strong, rename_nu,
                           strong_judgement_to_fresh, translate_fresh_to_fix,
                           translate_fix_to_fresh)
from .errors import (CarrierBoundExceeded, GroundnessError, NomfixError,
                     ParseError, ReproductionFailure, ShapeError,
                     UnboundVariable, UniverseBoundExceeded)
from .judgements import (AlphaGoal, AlphaJudgement, EqJudgement, FixGoal,
                         FixJudgement, FreshJudgement, NuJudgement,
                         StrongContext, context_dom, fix_extend, perms_for)
from .permgroups import GenSet, all_permutations, all_swaps, ds, fixes_pointwise, group_member
from .semantics import (GroundMod, GroundModAssoc, PFin, SigmaAlgebra,
                        Singleton, Valuation, Words, canon, context_valid,
                        fix_sem, get_model, interpret, is_strong_axiom,
                        judgement_valid, standard_axioms, strong_support_check,
                        supp_of, term_key, well_ordered)
from .syntax import (parse_fix_context, parse_fresh_context, parse_judgement,
                     parse_perm, parse_signature, parse_strong_input,
                     parse_term, print_judgement, print_perm,
                     print_strong_context, print_term)
from .terms import (ID, Abs, App, Atom, FreshSupply, Perm, Signature, Susp,
                    Term, Var, act, app, atoms_of, default_signature,
                    free_names, is_ground, perm_apply, perm_compose,
                    perm_conjugate, perm_inverse, subst_apply, subst_compose,
                    swap, validate_term, var, vars_of)
from .unify_validate import (Candidate, FixPair, FreshPair, FreshTriple,
                             Problem, ValidationReport, instantiate_and_check,
                             parse_candidate, parse_problem, validate)
from .verdicts import ProofTree, RuleMismatch, Verdict, subst_record

__version__ = "0.1.0"
