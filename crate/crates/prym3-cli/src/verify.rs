//! The full verification battery over one monodromy file.

use prym3::corresp::{
    build_d, build_dprime, equivariance_check, quadratic_d_residual, quadratic_dprime_residual,
    int_is_zero, solve_kanev,
};
use prym3::covers::{
    classify_datum, closure_group_action, distinguished_subgroups, incidence_bijection_check,
    pair_curve_action, pair_group_action, ordered_pair_group_action, require_type_iii,
    CoverType, FactorDecomposition, MonodromyDatum,
};
use prym3::group::{actions_equivalent, GroupAction};
use prym3::moduli::genus_table;
use prym3::perm::Permutation;
use prym3::reptheory::{
    permutation_character, projector_descent_identity, CharacterTable, S3Irrep, TensorLabel,
};

use crate::report::VerificationReport;

/// Runs every check on the datum, recording one record per check; checks
/// that need the full order-36 monodromy are skipped once the type test
/// fails, and the report stays truthful about what ran.
pub fn run_checks(datum: &MonodromyDatum, report: &mut VerificationReport) {
    let validation = datum.validate();
    report.push(
        "monodromy_valid",
        validation.is_valid(),
        format!(
            "degree {}, {} branch points, group order {}",
            datum.degree(),
            datum.branch_labels().len(),
            validation.group_order
        ),
    );

    let cover_type = classify_datum(datum);
    match &cover_type {
        Ok(t) => report.push("cover_type", true, format!("type {t}")),
        Err(e) => report.push("cover_type", false, e.to_string()),
    }

    match pair_curve_action(datum) {
        Ok(grid) => {
            let transitive = grid.is_transitive().unwrap_or(false);
            report.push(
                "pair_curve_irreducible",
                transitive,
                format!("9-point action transitive: {transitive}"),
            );
        }
        Err(e) => report.push("pair_curve_irreducible", false, e.to_string()),
    }

    if !matches!(cover_type, Ok(CoverType::III)) {
        return;
    }
    let Ok(group) = require_type_iii(datum) else {
        return;
    };

    match genus_table(datum) {
        Ok(t) => report.push(
            "genus_table",
            true,
            format!(
                "g={} alpha={} beta={}: base {}, cover {}, pair {}, ordered {}, closure {}, \
                 trigonal ({}, {}), prym dim {}",
                t.genus,
                t.alpha,
                t.beta,
                t.base,
                t.triple_cover,
                t.pair_curve,
                t.ordered_pair_curve,
                t.closure,
                t.trigonal_one,
                t.trigonal_two,
                t.prym_dim
            ),
        ),
        Err(e) => report.push("genus_table", false, e.to_string()),
    }

    let d3 = build_d(3).expect("grid of size 3");
    let dp3 = build_dprime(3).expect("grid of size 3");
    report.push(
        "correspondence_identity",
        quadratic_d_residual(3).map(|r| int_is_zero(&r)).unwrap_or(false),
        "D^2 + D - 2I = 2J on the 9-point fiber",
    );
    report.push(
        "complement_identity",
        quadratic_dprime_residual(3).map(|r| int_is_zero(&r)).unwrap_or(false),
        "D'^2 + D' - 2I = 2J on the 9-point fiber",
    );
    match solve_kanev(&d3) {
        Some((e, c)) => report.push(
            "kanev_exponent",
            e == prym3::ratmat::q(3) && c == prym3::ratmat::q(2),
            format!("exponent {e}, remainder coefficient {c}"),
        ),
        None => report.push("kanev_exponent", false, "no solution"),
    }
    match pair_group_action(&group) {
        Ok(act) => {
            let d_comm = equivariance_check(&d3, &act).unwrap_or(false);
            let dp_comm = equivariance_check(&dp3, &act).unwrap_or(false);
            report.push(
                "correspondence_equivariance",
                d_comm && dp_comm,
                format!("D commutes: {d_comm}; D' commutes: {dp_comm}"),
            );
        }
        Err(e) => report.push("correspondence_equivariance", false, e.to_string()),
    }

    report_quotient_equivalences(&group, report);

    match incidence_bijection_check(datum) {
        Ok(r) => report.push(
            "incidence_bijection",
            r.holds(),
            format!(
                "fiber {} / incidence {}, bijective {}, equivariant {}",
                r.fiber_size, r.incidence_size, r.bijective, r.equivariant
            ),
        ),
        Err(e) => report.push("incidence_bijection", false, e.to_string()),
    }

    report_trigonal_characters(&group, report);

    match projector_descent_identity(datum) {
        Ok(r) => report.push(
            "projector_descent_identity",
            r.holds(),
            format!(
                "dictionary {}, constancy {}/{}, identity {}",
                r.dictionary_agrees,
                r.constant_on_left_translates,
                r.constant_on_right_translates,
                r.identity_holds
            ),
        ),
        Err(e) => report.push("projector_descent_identity", false, e.to_string()),
    }
}

fn report_quotient_equivalences(
    group: &prym3::PermGroup,
    report: &mut VerificationReport,
) {
    let run = || -> Result<(bool, bool), String> {
        let fd = FactorDecomposition::build(group).map_err(|e| e.to_string())?;
        let subs = distinguished_subgroups(&fd).map_err(|e| e.to_string())?;
        let natural6 = group.natural_action();
        let parity2 = GroupAction::new(group.clone(), 2, |g, e| {
            if g.elements()[e].apply(0) % 2 == 0 {
                Permutation::identity(2)
            } else {
                Permutation::from_images(vec![1, 0]).expect("swap")
            }
        })
        .map_err(|e| e.to_string())?;
        let grid9 = pair_group_action(group).map_err(|e| e.to_string())?;
        let ordered18 = ordered_pair_group_action(group).map_err(|e| e.to_string())?;
        let mut equiv = true;
        for (sub, constructed) in [
            (&subs.point_stabilizer, &natural6),
            (&subs.sheet_preserving, &parity2),
            (&subs.pair_stabilizer, &grid9),
            (&subs.ordered_pair_stabilizer, &ordered18),
        ] {
            let coset = group.coset_action(sub).map_err(|e| e.to_string())?;
            equiv &= actions_equivalent(&coset, constructed).is_some();
        }
        let closure36 = closure_group_action(group).map_err(|e| e.to_string())?;
        let regular = group.regular_action();
        let mut closure_ok = actions_equivalent(&closure36, &regular).is_some();
        closure_ok &= (0..36).all(|x| closure36.point_stabilizer(x).len() == 1);
        Ok((equiv, closure_ok))
    };
    match run() {
        Ok((equiv, closure_ok)) => {
            report.push(
                "quotient_equivalences",
                equiv,
                "coset actions match the 6/2/9/18-point actions",
            );
            report.push(
                "regular_closure",
                closure_ok,
                "36-point fiber action is regular with trivial stabilizers",
            );
        }
        Err(e) => {
            report.push("quotient_equivalences", false, e.clone());
            report.push("regular_closure", false, e);
        }
    }
}

fn report_trigonal_characters(group: &prym3::PermGroup, report: &mut VerificationReport) {
    let run = || -> Result<bool, String> {
        let fd = FactorDecomposition::build(group).map_err(|e| e.to_string())?;
        let table = CharacterTable::build(&fd).map_err(|e| e.to_string())?;
        let subs = distinguished_subgroups(&fd).map_err(|e| e.to_string())?;
        let mut ok = true;
        for (sub, label) in [
            (
                &subs.trigonal_one,
                TensorLabel(S3Irrep::Standard, S3Irrep::Trivial),
            ),
            (
                &subs.trigonal_two,
                TensorLabel(S3Irrep::Trivial, S3Irrep::Standard),
            ),
        ] {
            let act = group.coset_action(sub).map_err(|e| e.to_string())?;
            let chi = permutation_character(&act, &table.class_data);
            let dec = table.decompose(&chi).map_err(|e| e.to_string())?;
            ok &= dec.len() == 2
                && dec.get(&TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial)) == Some(&1)
                && dec.get(&label) == Some(&1);
        }
        Ok(ok)
    };
    match run() {
        Ok(ok) => report.push(
            "trigonal_coset_characters",
            ok,
            "each trigonal coset character is trivial + one standard factor",
        ),
        Err(e) => report.push("trigonal_coset_characters", false, e),
    }
}
