//! The verification suite: every headline claim of the toolkit as one
//! pass/fail criterion over built-in data. The CLI runs it as `paper-suite`;
//! the acceptance test target runs it with one printed line per criterion.

use std::collections::BTreeMap;

use crate::corresp::{
    self, build_d, equivariance_check, integer_eigen_structure, solve_kanev,
};
use crate::covers::{
    self, admissible_involutions, classify_generated_types, closure_group_action,
    distinguished_subgroups, g3_reference_datum, incidence_bijection_check, monodromy_equivalent,
    ordered_pair_group_action, pair_group_action, quotient_cover, require_type_iii,
    subgroup_census, FactorDecomposition,
};
use crate::group::{actions_equivalent, GroupAction, PermGroup};
use crate::moduli::{
    covering_type, dim_from_weil_trace, genus_table, merge, moduli_dimension, sample, split,
};
use crate::perm::Permutation;
use crate::ratmat::{q, qr, QMatrix};
use crate::reptheory::{
    averaged_invariant_form, convolve, coset_difference_rep, fixed_vectors,
    permutation_character, projector, projector_descent_identity, represent, BilinearForm,
    CharacterTable, S3Irrep, TensorLabel,
};

/// Census figures this build is compared against; the enumeration is the
/// oracle and disagreement is reported, never asserted away.
pub const STATED_TAU_INVARIANT_CLASSES: usize = 8;
pub const STATED_TAU_SWAPPED_PAIRS: usize = 14;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: usize, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionResult {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn fail(id: usize, name: &'static str, detail: String) -> CriterionResult {
    CriterionResult::new(id, name, false, detail)
}

/// Runs all criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        admissible_set(),
        generated_types(),
        correspondence_identities(),
        eigenstructure_matches_characters(),
        genus_suite(),
        quotient_identifications(),
        incidence_bijection(),
        representation_suite(),
        descent_identity(),
        split_merge_bijection(),
        census_consistency(),
    ]
}

fn p6(text: &str) -> Permutation {
    Permutation::parse_cycles(text, 6).expect("fixed cycle string")
}

/// 1: the admissible set is exactly the six matching involutions.
pub fn admissible_set() -> CriterionResult {
    const ID: usize = 1;
    const NAME: &str = "admissible involution set";
    let expected: Vec<Permutation> = [
        "(1 2)(3 4)(5 6)",
        "(1 4)(2 5)(3 6)",
        "(1 6)(2 3)(4 5)",
        "(1 2)(3 6)(4 5)",
        "(1 4)(2 3)(5 6)",
        "(1 6)(2 5)(3 4)",
    ]
    .iter()
    .map(|s| p6(s))
    .collect();
    let mut expected_sorted = expected;
    expected_sorted.sort();
    let got = admissible_involutions();
    let passed = got == expected_sorted;
    CriterionResult::new(
        ID,
        NAME,
        passed,
        format!("computed {} involutions, set equality {}", got.len(), passed),
    )
}

/// 2: subsets of the admissible involutions generate exactly three
/// conjugation types of transitive groups, of orders 6, 12 and 36.
pub fn generated_types() -> CriterionResult {
    const ID: usize = 2;
    const NAME: &str = "transitive generated types";
    match classify_generated_types() {
        Ok(classes) => {
            let orders: Vec<usize> = classes.iter().map(|c| c.order).collect();
            let passed = orders == vec![6, 12, 36];
            CriterionResult::new(ID, NAME, passed, format!("class orders {orders:?}"))
        }
        Err(e) => fail(ID, NAME, e.to_string()),
    }
}

/// 3: both quadratic correspondence identities hold entrywise for grid sizes
/// 2..=6 and the exponent criterion solves exactly at size 3 with (3, 2).
pub fn correspondence_identities() -> CriterionResult {
    const ID: usize = 3;
    const NAME: &str = "correspondence identities and exponent criterion";
    for n in 2..=6usize {
        match (
            corresp::quadratic_d_residual(n),
            corresp::quadratic_dprime_residual(n),
        ) {
            (Ok(rd), Ok(rdp)) => {
                if !corresp::int_is_zero(&rd) || !corresp::int_is_zero(&rdp) {
                    return fail(ID, NAME, format!("nonzero residual at n={n}"));
                }
            }
            _ => return fail(ID, NAME, format!("matrix construction failed at n={n}")),
        }
        let d = match build_d(n) {
            Ok(d) => d,
            Err(e) => return fail(ID, NAME, e.to_string()),
        };
        match (n, solve_kanev(&d)) {
            (3, Some((e, c))) => {
                if e != q(3) || c != q(2) {
                    return fail(ID, NAME, format!("wrong solution ({e}, {c}) at n=3"));
                }
            }
            (3, None) => return fail(ID, NAME, "no solution at n=3".into()),
            (_, Some(_)) => return fail(ID, NAME, format!("spurious solution at n={n}")),
            (_, None) => {}
        }
    }
    CriterionResult::new(
        ID,
        NAME,
        true,
        "identities exact for n=2..6; solution (3, 2) exactly at n=3".into(),
    )
}

/// 4: the integer eigenstructure of the size-3 correspondence matches the
/// isotypic dimensions of the 9-point permutation character.
pub fn eigenstructure_matches_characters() -> CriterionResult {
    const ID: usize = 4;
    const NAME: &str = "eigenstructure matches isotypic dimensions";
    let run = || -> Result<String, String> {
        let d = build_d(3).map_err(|e| e.to_string())?;
        let eig = integer_eigen_structure(d.entries()).map_err(|e| e.to_string())?;
        if eig != vec![(-2, 4), (1, 4), (4, 1)] {
            return Err(format!("unexpected spectrum {eig:?}"));
        }
        let group = covers::canonical_group();
        let fd = FactorDecomposition::build(&group).map_err(|e| e.to_string())?;
        let table = CharacterTable::build(&fd).map_err(|e| e.to_string())?;
        let act = pair_group_action(&group).map_err(|e| e.to_string())?;
        let chi = permutation_character(&act, &table.class_data);
        let dec = table.decompose(&chi).map_err(|e| e.to_string())?;
        let expected: BTreeMap<TensorLabel, usize> = [
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Standard, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Standard), 1),
            (TensorLabel(S3Irrep::Standard, S3Irrep::Standard), 1),
        ]
        .into_iter()
        .collect();
        if dec != expected {
            return Err(format!("unexpected decomposition {dec:?}"));
        }
        // eigenvalue 4 <-> trivial block, 1 <-> the two 2-dim blocks,
        // -2 <-> the 4-dim block
        let dim_of = |l: TensorLabel| l.dim() * dec[&l];
        let trivial = dim_of(TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial));
        let middle = dim_of(TensorLabel(S3Irrep::Standard, S3Irrep::Trivial))
            + dim_of(TensorLabel(S3Irrep::Trivial, S3Irrep::Standard));
        let big = dim_of(TensorLabel(S3Irrep::Standard, S3Irrep::Standard));
        if (trivial, middle, big) != (1, 4, 4) {
            return Err(format!("isotypic dims ({trivial}, {middle}, {big})"));
        }
        // the correspondence also commutes with the whole grid action
        if !equivariance_check(&d, &act).map_err(|e| e.to_string())? {
            return Err("correspondence does not commute with the grid action".into());
        }
        Ok("spectrum {4:1, 1:4, -2:4} = isotypic dims (1, 2+2, 4)".into())
    };
    match run() {
        Ok(detail) => CriterionResult::new(ID, NAME, true, detail),
        Err(detail) => fail(ID, NAME, detail),
    }
}

/// 5: Riemann-Hurwitz genera of all constructed actions equal the closed
/// formulas on the reference datum and on sampled data, and the trigonal
/// genera sum to the trace-argument dimension.
pub fn genus_suite() -> CriterionResult {
    const ID: usize = 5;
    const NAME: &str = "genus suite";
    let run = || -> Result<String, String> {
        let reference = g3_reference_datum();
        let table = genus_table(&reference).map_err(|e| e.to_string())?;
        if (table.base, table.triple_cover, table.pair_curve) != (3, 7, 4)
            || (table.ordered_pair_curve, table.closure) != (19, 37)
            || table.prym_dim != 0
        {
            return Err(format!("reference genera off: {table:?}"));
        }
        let mut tested = 0usize;
        for &(alpha, beta) in &[(4usize, 4usize), (4, 6), (6, 6), (6, 8)] {
            for seed in 0..10u64 {
                let d = sample(alpha, beta, seed).map_err(|e| e.to_string())?;
                let t = genus_table(&d).map_err(|e| {
                    format!("alpha={alpha} beta={beta} seed={seed}: {e}")
                })?;
                let g = t.genus;
                if t.trigonal_one + t.trigonal_two != g - 3
                    || dim_from_weil_trace(g) != g - 3
                {
                    return Err(format!(
                        "dimension bookkeeping off at alpha={alpha} beta={beta} seed={seed}"
                    ));
                }
                tested += 1;
            }
        }
        Ok(format!(
            "reference datum plus {tested} sampled data agree with the closed formulas"
        ))
    };
    match run() {
        Ok(detail) => CriterionResult::new(ID, NAME, true, detail),
        Err(detail) => fail(ID, NAME, detail),
    }
}

/// 6: the coset actions of the distinguished subgroups are equivalent to the
/// constructed 6/2/9/18-point actions; the closure fiber action is regular
/// with trivial stabilizers; the grid-point stabilizer is Klein.
pub fn quotient_identifications() -> CriterionResult {
    const ID: usize = 6;
    const NAME: &str = "quotient identifications";
    let run = || -> Result<String, String> {
        let d = g3_reference_datum();
        let group = require_type_iii(&d).map_err(|e| e.to_string())?;
        let fd = FactorDecomposition::build(&group).map_err(|e| e.to_string())?;
        let subs = distinguished_subgroups(&fd).map_err(|e| e.to_string())?;

        let natural6 = group.natural_action();
        let parity2 = GroupAction::new(group.clone(), 2, |g, e| {
            // swap the two sheets unless the element preserves them
            let preserves = g.elements()[e].apply(0) % 2 == 0;
            if preserves {
                Permutation::identity(2)
            } else {
                Permutation::from_images(vec![1, 0]).expect("swap")
            }
        })
        .map_err(|e| e.to_string())?;
        let grid9 = pair_group_action(&group).map_err(|e| e.to_string())?;
        let ordered18 = ordered_pair_group_action(&group).map_err(|e| e.to_string())?;
        let closure36 = closure_group_action(&group).map_err(|e| e.to_string())?;

        let pairs: [(&str, &PermGroup, &GroupAction); 4] = [
            ("point stabilizer / 6-point", &subs.point_stabilizer, &natural6),
            ("sheet preserving / 2-point", &subs.sheet_preserving, &parity2),
            ("pair stabilizer / 9-point", &subs.pair_stabilizer, &grid9),
            (
                "ordered pair stabilizer / 18-point",
                &subs.ordered_pair_stabilizer,
                &ordered18,
            ),
        ];
        for (label, sub, constructed) in pairs {
            let coset = group.coset_action(sub).map_err(|e| e.to_string())?;
            if actions_equivalent(&coset, constructed).is_none() {
                return Err(format!("no equivalence for {label}"));
            }
        }
        let regular = group.regular_action();
        if actions_equivalent(&closure36, &regular).is_none() {
            return Err("closure fiber action is not regular".into());
        }
        for x in 0..36 {
            if closure36.point_stabilizer(x).len() != 1 {
                return Err(format!("nontrivial stabilizer at closure point {x}"));
            }
        }
        let stab = subs.pair_stabilizer.clone();
        if stab.order() != 4
            || !stab
                .elements()
                .iter()
                .all(|e| e.is_identity() || e.order() == 2)
        {
            return Err("grid-point stabilizer is not Klein of order 4".into());
        }
        Ok("all four coset actions equivalent; closure regular; stabilizer Klein".into())
    };
    match run() {
        Ok(detail) => CriterionResult::new(ID, NAME, true, detail),
        Err(detail) => fail(ID, NAME, detail),
    }
}

/// 7: the closure fiber maps bijectively and equivariantly onto the
/// incidence set of the correspondence.
pub fn incidence_bijection() -> CriterionResult {
    const ID: usize = 7;
    const NAME: &str = "incidence bijection";
    match incidence_bijection_check(&g3_reference_datum()) {
        Ok(report) => CriterionResult::new(
            ID,
            NAME,
            report.holds(),
            format!(
                "fiber {} / incidence {}; bijective {}; equivariant {}",
                report.fiber_size, report.incidence_size, report.bijective, report.equivariant
            ),
        ),
        Err(e) => fail(ID, NAME, e.to_string()),
    }
}

/// 8: the representation suite: trigonal coset characters, invariant form,
/// fixed line, the pinned projector coefficient, idempotency and rank.
pub fn representation_suite() -> CriterionResult {
    const ID: usize = 8;
    const NAME: &str = "representation suite";
    let run = || -> Result<String, String> {
        let group = covers::canonical_group();
        let fd = FactorDecomposition::build(&group).map_err(|e| e.to_string())?;
        let table = CharacterTable::build(&fd).map_err(|e| e.to_string())?;
        let subs = distinguished_subgroups(&fd).map_err(|e| e.to_string())?;

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
            let expected: BTreeMap<TensorLabel, usize> = [
                (TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial), 1),
                (label, 1),
            ]
            .into_iter()
            .collect();
            if dec != expected {
                return Err(format!("coset character decomposes as {dec:?}"));
            }
        }

        let c246 = p6("(2 4 6)");
        let c135 = p6("(1 3 5)");
        let c153 = p6("(1 5 3)");
        let rep1 = coset_difference_rep(&group, &subs.trigonal_one, &c246, &c135)
            .map_err(|e| e.to_string())?;
        let rep2 = coset_difference_rep(&group, &subs.trigonal_two, &c135, &c153)
            .map_err(|e| e.to_string())?;
        let form1 = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]]))
            .map_err(|e| e.to_string())?;
        if !form1.is_invariant_for(&rep1) {
            return Err("Gram matrix [[2,-1],[-1,2]] is not invariant".into());
        }
        let form2 = averaged_invariant_form(&rep2).map_err(|e| e.to_string())?;

        let h = &subs.pair_stabilizer;
        let fixed1 = fixed_vectors(&rep1, h).map_err(|e| e.to_string())?;
        if fixed1 != vec![vec![q(2), q(1)]] {
            return Err(format!("fixed space of the first rep is {fixed1:?}"));
        }
        let fixed2 = fixed_vectors(&rep2, h).map_err(|e| e.to_string())?;
        if fixed2.len() != 1 {
            return Err("mirrored fixed space is not a line".into());
        }

        let p1 = projector(&fixed1[0], &rep1, &form1).map_err(|e| e.to_string())?;
        let p2 = projector(&fixed2[0], &rep2, &form2).map_err(|e| e.to_string())?;
        let target = group
            .element_index(&p6("(2 4)(3 5)"))
            .ok_or("missing element (2 4)(3 5)")?;
        if p1.coefficient(target) != qr(-1, 36) {
            return Err(format!(
                "coefficient of (2 4)(3 5) is {}",
                p1.coefficient(target)
            ));
        }
        let regular = group.regular_action();
        for p in [&p1, &p2] {
            if convolve(&group, p, p) != *p {
                return Err("projector is not idempotent".into());
            }
            let m = represent(&group, p, &regular).map_err(|e| e.to_string())?;
            if m.rank() != 2 {
                return Err(format!("regular-representation rank {}", m.rank()));
            }
        }
        Ok("characters, invariant form, fixed line, coefficient -1/36, idempotents of rank 2"
            .into())
    };
    match run() {
        Ok(detail) => CriterionResult::new(ID, NAME, true, detail),
        Err(detail) => fail(ID, NAME, detail),
    }
}

/// 9: the descended projector identity `36 descent = 3(I - D) + J` holds
/// entrywise, with two-sided coset constancy of the coefficient function.
pub fn descent_identity() -> CriterionResult {
    const ID: usize = 9;
    const NAME: &str = "projector descent identity";
    match projector_descent_identity(&g3_reference_datum()) {
        Ok(report) => CriterionResult::new(
            ID,
            NAME,
            report.holds(),
            format!(
                "dictionary {}; constancy left {} right {}; identity {}",
                report.dictionary_agrees,
                report.constant_on_left_translates,
                report.constant_on_right_translates,
                report.identity_holds
            ),
        ),
        Err(e) => fail(ID, NAME, e.to_string()),
    }
}

/// 10: split and merge are mutually inverse, the quotient covers by the
/// trigonal subgroups match the split factors up to relabeling, and the
/// moduli dimension formula holds.
pub fn split_merge_bijection() -> CriterionResult {
    const ID: usize = 10;
    const NAME: &str = "split/merge bijection";
    let run = || -> Result<String, String> {
        let mut checked = 0usize;
        for d in [
            g3_reference_datum(),
            sample(4, 6, 2).map_err(|e| e.to_string())?,
            sample(6, 6, 3).map_err(|e| e.to_string())?,
        ] {
            let pair = split(&d).map_err(|e| e.to_string())?;
            if merge(&pair, None).map_err(|e| e.to_string())? != d {
                return Err("split/merge round trip failed".into());
            }
            let group = require_type_iii(&d).map_err(|e| e.to_string())?;
            let fd = FactorDecomposition::build(&group).map_err(|e| e.to_string())?;
            let subs = distinguished_subgroups(&fd).map_err(|e| e.to_string())?;
            let q1 = quotient_cover(&d, &subs.trigonal_one).map_err(|e| e.to_string())?;
            let q2 = quotient_cover(&d, &subs.trigonal_two).map_err(|e| e.to_string())?;
            if monodromy_equivalent(&q1, &pair.first).is_none() {
                return Err("first quotient is not equivalent to the split factor".into());
            }
            if monodromy_equivalent(&q2, &pair.second).is_none() {
                return Err("second quotient is not equivalent to the split factor".into());
            }
            let (ct, _) = covering_type(&d).map_err(|e| e.to_string())?;
            let dim = moduli_dimension(ct.alpha, ct.beta).map_err(|e| e.to_string())?;
            if dim != 2 * ct.genus - 1 {
                return Err(format!("moduli dimension {dim} at genus {}", ct.genus));
            }
            checked += 1;
        }
        Ok(format!(
            "round trips, quotient equivalences and dimension formula on {checked} data"
        ))
    };
    match run() {
        Ok(detail) => CriterionResult::new(ID, NAME, true, detail),
        Err(detail) => fail(ID, NAME, detail),
    }
}

/// 11: the subgroup census terminates, the factor-swapping involution
/// permutes the subgroup conjugacy classes, and the computed counts are
/// reported against the stated figures without asserting them.
pub fn census_consistency() -> CriterionResult {
    const ID: usize = 11;
    const NAME: &str = "subgroup census";
    match subgroup_census() {
        Ok(census) => {
            let internal_ok = census.tau_permutes_classes
                && census.tau_invariant_classes + 2 * census.tau_swapped_pairs
                    == census.class_count;
            let invariant_agrees =
                census.tau_invariant_classes == STATED_TAU_INVARIANT_CLASSES;
            let pairs_agree = census.tau_swapped_pairs == STATED_TAU_SWAPPED_PAIRS;
            CriterionResult::new(
                ID,
                NAME,
                internal_ok,
                format!(
                    "{} subgroups in {} classes; computed {} invariant + {} pairs vs stated {} + {} \
                     (agreement: {}, {})",
                    census.subgroup_count,
                    census.class_count,
                    census.tau_invariant_classes,
                    census.tau_swapped_pairs,
                    STATED_TAU_INVARIANT_CLASSES,
                    STATED_TAU_SWAPPED_PAIRS,
                    invariant_agrees,
                    pairs_agree
                ),
            )
        }
        Err(e) => fail(ID, NAME, e.to_string()),
    }
}
