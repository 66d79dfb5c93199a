mod common;

use common::*;

#[test]
fn subfactor_closure_of_domains() {
    over_fleet(subfactor_closure).assert_clean("subfactor closure");
}

#[test]
fn baer_criterion_agrees_with_relative_tests() {
    over_fleet(baer_equivalence).assert_clean("Baer");
}

#[test]
fn poor_and_injective_are_exclusive() {
    over_fleet(poor_injective_exclusive).assert_clean("poor/injective");
}

#[test]
fn verdicts_pass_to_factor_rings() {
    over_fleet(factor_ring_heredity).assert_clean("factor rings");
}

#[test]
fn semisimple_summand_changes_nothing() {
    over_fleet(semisimple_summand).assert_clean("direct sum");
}

#[test]
fn composition_length_is_additive() {
    over_fleet(length_additivity).assert_clean("length");
}

#[test]
fn qf_iff_double_annihilator() {
    over_fleet(qf_double_annihilator).assert_clean("QF");
}

#[test]
fn tri_formulas_match_brute_force() {
    over_tri_fleet().assert_clean("tri formulas");
}
