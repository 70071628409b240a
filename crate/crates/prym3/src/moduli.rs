//! The (alpha, beta) classification of etale triple covers of hyperelliptic
//! curves, the bijection with pairs of simply-ramified trigonal covers
//! (split/merge), seeded random sampling, and the genus and dimension
//! bookkeeping that ties the covers, quotients and the Prym dimension
//! together.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::covers::{
    self, distinguished_subgroups, galois_closure, quotient_cover, require_type_iii,
    riemann_hurwitz_genus, CoverError, FactorDecomposition, MonodromyDatum,
};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("branch count {0} in class {1} must be an even number at least 4")]
    BadBranchCount(usize, usize),
    #[error("entry {0} lies in neither involution class")]
    UnclassifiedEntry(usize),
    #[error("partial product over class {0} is not the identity")]
    PartialProductViolation(usize),
    #[error("trigonal factor entry {0} is not a transposition")]
    NotATransposition(usize),
    #[error("trigonal factor has monodromy group of order {0}, expected 6")]
    FactorNotFull(usize),
    #[error("branch label {0:?} appears in both factors")]
    LabelCollision(String),
    #[error("interleaving is not a permutation of the combined labels")]
    BadInterleaving,
    #[error("genus bookkeeping mismatch for {curve}: enumerated {computed}, formula {formula}")]
    GenusMismatch {
        curve: &'static str,
        computed: usize,
        formula: usize,
    },
}

/// Branch type of an etale triple cover over a hyperelliptic base:
/// alpha branch monodromies in the first involution class, beta in the
/// second, with `alpha + beta = 2 genus + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringType {
    pub alpha: usize,
    pub beta: usize,
    pub genus: usize,
}

/// Which involution class a monodromy entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSide {
    One,
    Two,
}

/// Classifies every entry of a type-III datum into the two involution
/// classes, checks the per-class partial products, and returns the branch
/// type.
pub fn covering_type(
    d: &MonodromyDatum,
) -> Result<(CoveringType, Vec<FactorSide>), ModuliError> {
    let group = require_type_iii(d)?;
    let fd = FactorDecomposition::build(&group)?;
    let mut sides = Vec::new();
    for (i, s) in d.monodromy().iter().enumerate() {
        if fd.class_one.contains(s) {
            sides.push(FactorSide::One);
        } else if fd.class_two.contains(s) {
            sides.push(FactorSide::Two);
        } else {
            return Err(ModuliError::UnclassifiedEntry(i));
        }
    }
    for (class_no, side) in [(1usize, FactorSide::One), (2, FactorSide::Two)] {
        let mut product = Permutation::identity(6);
        for (s, &sd) in d.monodromy().iter().zip(&sides) {
            if sd == side {
                product = product.compose(s).map_err(CoverError::from)?;
            }
        }
        if !product.is_identity() {
            return Err(ModuliError::PartialProductViolation(class_no));
        }
    }
    let alpha = sides.iter().filter(|&&s| s == FactorSide::One).count();
    let beta = sides.len() - alpha;
    for (count, class_no) in [(alpha, 1usize), (beta, 2)] {
        if count < 4 || count % 2 != 0 {
            return Err(ModuliError::BadBranchCount(count, class_no));
        }
    }
    let genus = (alpha + beta - 2) / 2;
    Ok((CoveringType { alpha, beta, genus }, sides))
}

/// A pair of degree-3 covers with simple ramification and disjoint branch
/// sets; everything a type-III datum splits into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalPair {
    pub first: MonodromyDatum,
    pub second: MonodromyDatum,
}

impl TrigonalPair {
    pub fn new(first: MonodromyDatum, second: MonodromyDatum) -> Result<Self, ModuliError> {
        let pair = TrigonalPair { first, second };
        pair.validate()?;
        Ok(pair)
    }

    fn validate(&self) -> Result<(), ModuliError> {
        for datum in [&self.first, &self.second] {
            datum.require_valid()?;
            for (i, s) in datum.monodromy().iter().enumerate() {
                if s.cycle_type() != vec![2, 1] {
                    return Err(ModuliError::NotATransposition(i));
                }
            }
            let order = datum.monodromy_group()?.order();
            if order != 6 {
                return Err(ModuliError::FactorNotFull(order));
            }
        }
        for label in self.first.branch_labels() {
            if self.second.branch_labels().contains(label) {
                return Err(ModuliError::LabelCollision(label.clone()));
            }
        }
        Ok(())
    }
}

/// Splits a type-III datum into its two trigonal factors through the fixed
/// factor isomorphisms, keeping branch labels and their order.
pub fn split(d: &MonodromyDatum) -> Result<TrigonalPair, ModuliError> {
    let group = require_type_iii(d)?;
    let fd = FactorDecomposition::build(&group)?;
    let (_, sides) = covering_type(d)?;
    let mut first_labels = Vec::new();
    let mut first_perms = Vec::new();
    let mut second_labels = Vec::new();
    let mut second_perms = Vec::new();
    for ((label, s), side) in d.branch_labels().iter().zip(d.monodromy()).zip(&sides) {
        match side {
            FactorSide::One => {
                first_labels.push(label.clone());
                first_perms.push(
                    fd.embedding_one
                        .from_factor(s)
                        .expect("class-one entry is in factor one")
                        .clone(),
                );
            }
            FactorSide::Two => {
                second_labels.push(label.clone());
                second_perms.push(
                    fd.embedding_two
                        .from_factor(s)
                        .expect("class-two entry is in factor two")
                        .clone(),
                );
            }
        }
    }
    let first = MonodromyDatum::new(3, first_labels, first_perms).map_err(ModuliError::Cover)?;
    let second =
        MonodromyDatum::new(3, second_labels, second_perms).map_err(ModuliError::Cover)?;
    TrigonalPair::new(first, second)
}

/// Merges a trigonal pair back into a degree-6 datum through the fixed factor
/// isomorphisms.
///
/// The default interleaving puts all first-factor branch points before the
/// second-factor ones; an explicit interleaving is any ordering of the
/// combined labels, and the merged datum is validated afterwards.
pub fn merge(
    pair: &TrigonalPair,
    interleaving: Option<&[String]>,
) -> Result<MonodromyDatum, ModuliError> {
    pair.validate()?;
    let group = covers::canonical_group();
    let fd = FactorDecomposition::build(&group)?;
    let embed = |side: FactorSide, s: &Permutation| -> Permutation {
        match side {
            FactorSide::One => fd
                .embedding_one
                .to_factor(s)
                .expect("transposition maps into factor one")
                .clone(),
            FactorSide::Two => fd
                .embedding_two
                .to_factor(s)
                .expect("transposition maps into factor two")
                .clone(),
        }
    };
    let mut labeled: Vec<(String, Permutation)> = Vec::new();
    for (label, s) in pair.first.branch_labels().iter().zip(pair.first.monodromy()) {
        labeled.push((label.clone(), embed(FactorSide::One, s)));
    }
    for (label, s) in pair
        .second
        .branch_labels()
        .iter()
        .zip(pair.second.monodromy())
    {
        labeled.push((label.clone(), embed(FactorSide::Two, s)));
    }
    let ordered: Vec<(String, Permutation)> = match interleaving {
        None => labeled,
        Some(order) => {
            if order.len() != labeled.len() {
                return Err(ModuliError::BadInterleaving);
            }
            let mut picked = Vec::new();
            for wanted in order {
                let pos = labeled
                    .iter()
                    .position(|(l, _)| l == wanted)
                    .ok_or(ModuliError::BadInterleaving)?;
                picked.push(labeled.remove(pos));
            }
            picked
        }
    };
    let (labels, perms): (Vec<String>, Vec<Permutation>) = ordered.into_iter().unzip();
    let merged = MonodromyDatum::new(6, labels, perms).map_err(ModuliError::Cover)?;
    merged.require_valid()?;
    require_type_iii(&merged)?;
    Ok(merged)
}

/// Deterministic-for-seed sample of a type-(alpha, beta) datum: each trigonal
/// factor is a uniform product-one transposition tuple with full image,
/// redrawn until the constraints hold, then merged.
pub fn sample(alpha: usize, beta: usize, seed: u64) -> Result<MonodromyDatum, ModuliError> {
    for (count, class_no) in [(alpha, 1usize), (beta, 2)] {
        if count < 4 || count % 2 != 0 {
            return Err(ModuliError::BadBranchCount(count, class_no));
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let transpositions: Vec<Permutation> = ["(1 2)", "(1 3)", "(2 3)"]
        .iter()
        .map(|s| Permutation::parse_cycles(s, 3).expect("parses"))
        .collect();
    let mut draw_factor = |count: usize| -> Vec<Permutation> {
        loop {
            let mut tuple: Vec<Permutation> = (0..count - 1)
                .map(|_| transpositions[rng.gen_range(0..3)].clone())
                .collect();
            let mut product = Permutation::identity(3);
            for t in &tuple {
                product = product.compose(t).expect("equal degrees");
            }
            // the last entry must close the product while staying simple
            if product.cycle_type() != vec![2, 1] {
                continue;
            }
            tuple.push(product.inverse());
            let distinct: std::collections::BTreeSet<&Permutation> = tuple.iter().collect();
            if distinct.len() >= 2 {
                return tuple;
            }
        }
    };
    let first_perms = draw_factor(alpha);
    let second_perms = draw_factor(beta);
    let first = MonodromyDatum::new(
        3,
        (1..=alpha).map(|k| format!("a{k}")).collect(),
        first_perms,
    )
    .map_err(ModuliError::Cover)?;
    let second = MonodromyDatum::new(
        3,
        (alpha + 1..=alpha + beta).map(|k| format!("a{k}")).collect(),
        second_perms,
    )
    .map_err(ModuliError::Cover)?;
    merge(&TrigonalPair::new(first, second)?, None)
}

/// Genera of every curve in the tower, each computed by Riemann-Hurwitz on
/// the constructed action and cross-checked against the closed formula in
/// the base genus; any mismatch is a hard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    pub genus: usize,
    pub alpha: usize,
    pub beta: usize,
    /// hyperelliptic base
    pub base: usize,
    /// the etale degree-3 cover of the base (the input datum)
    pub triple_cover: usize,
    /// the 9-point correspondence curve
    pub pair_curve: usize,
    /// the 18-point curve of ordered mixed pairs
    pub ordered_pair_curve: usize,
    /// the 36-point Galois closure
    pub closure: usize,
    pub trigonal_one: usize,
    pub trigonal_two: usize,
    pub prym_dim: usize,
}

pub fn genus_table(d: &MonodromyDatum) -> Result<GenusTable, ModuliError> {
    let (ct, _) = covering_type(d)?;
    let g = ct.genus;
    let group = require_type_iii(d)?;
    let fd = FactorDecomposition::build(&group)?;
    let subs = distinguished_subgroups(&fd)?;

    let check = |curve: &'static str, computed: usize, formula: usize| {
        if computed == formula {
            Ok(computed)
        } else {
            Err(ModuliError::GenusMismatch {
                curve,
                computed,
                formula,
            })
        }
    };

    let base = check(
        "hyperelliptic base",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.sheet_preserving)?)?,
        g,
    )?;
    let triple_cover = check("triple cover", riemann_hurwitz_genus(d)?, 3 * g - 2)?;
    check(
        "triple cover as quotient",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.point_stabilizer)?)?,
        3 * g - 2,
    )?;
    let pair_curve = check(
        "pair curve",
        riemann_hurwitz_genus(&covers::pair_curve_action(d)?)?,
        3 * g - 5,
    )?;
    check(
        "pair curve as quotient",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.pair_stabilizer)?)?,
        3 * g - 5,
    )?;
    let ordered_pair_curve = check(
        "ordered pair curve",
        riemann_hurwitz_genus(&covers::ordered_pair_action(d)?)?,
        9 * g - 8,
    )?;
    check(
        "ordered pair curve as quotient",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.ordered_pair_stabilizer)?)?,
        9 * g - 8,
    )?;
    let closure = check(
        "closure",
        riemann_hurwitz_genus(&covers::y_closure_action(d)?)?,
        18 * g - 17,
    )?;
    check(
        "closure as regular action",
        riemann_hurwitz_genus(&galois_closure(d)?)?,
        18 * g - 17,
    )?;
    let trigonal_one = check(
        "first trigonal factor",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.trigonal_one)?)?,
        ct.alpha / 2 - 2,
    )?;
    let trigonal_two = check(
        "second trigonal factor",
        riemann_hurwitz_genus(&quotient_cover(d, &subs.trigonal_two)?)?,
        ct.beta / 2 - 2,
    )?;
    let prym_dim = check(
        "prym dimension",
        trigonal_one + trigonal_two,
        dim_from_weil_trace(g),
    )?;
    Ok(GenusTable {
        genus: g,
        alpha: ct.alpha,
        beta: ct.beta,
        base,
        triple_cover,
        pair_curve,
        ordered_pair_curve,
        closure,
        trigonal_one,
        trigonal_two,
        prym_dim,
    })
}

/// Prym dimension from the fixed-point-free trace argument: the rational
/// trace of the correspondence endomorphism is 8, the norm endomorphism has
/// rational trace `2 g(pair curve) - 8`, and the dimension is a sixth of
/// that. Equals `g - 3`.
pub fn dim_from_weil_trace(g: usize) -> usize {
    assert!(g >= 3, "base genus must be at least 3");
    let pair_curve_genus = 3 * g - 5;
    let norm_trace = 2 * pair_curve_genus - 8;
    let dim = norm_trace / 6;
    debug_assert_eq!(norm_trace % 6, 0);
    debug_assert_eq!(dim, g - 3);
    // eigenvalue bookkeeping: multiplicities (2g-2) and (g-3) fill the genus
    debug_assert_eq!((2 * g - 2) + (g - 3), pair_curve_genus);
    dim
}

/// Dimension of the moduli space of type-(alpha, beta) covers:
/// `alpha + beta - 3 = 2 genus - 1`.
pub fn moduli_dimension(alpha: usize, beta: usize) -> Result<usize, ModuliError> {
    for (count, class_no) in [(alpha, 1usize), (beta, 2)] {
        if count < 4 || count % 2 != 0 {
            return Err(ModuliError::BadBranchCount(count, class_no));
        }
    }
    Ok(alpha + beta - 3)
}

/// One row per subgroup conjugacy class: the genus of the corresponding
/// quotient cover and whether it collides with the Prym dimension.
#[derive(Debug, Clone)]
pub struct SubgroupGenusRow {
    pub order: usize,
    pub index: usize,
    pub class_size: usize,
    pub quotient_genus: usize,
    pub equals_prym_dim: bool,
}

#[derive(Debug, Clone)]
pub struct SubgroupGenusReport {
    pub prym_dim: usize,
    pub rows: Vec<SubgroupGenusRow>,
}

/// Genus survey over one representative subgroup per conjugacy class.
pub fn subgroup_genus_report(d: &MonodromyDatum) -> Result<SubgroupGenusReport, ModuliError> {
    let (ct, _) = covering_type(d)?;
    let group = require_type_iii(d)?;
    let prym_dim = dim_from_weil_trace(ct.genus);
    let subgroups = group.all_subgroups().map_err(CoverError::from)?;
    let classes = group.subgroup_conjugacy_classes(&subgroups);
    let mut rows = Vec::new();
    for class in &classes {
        let rep = &subgroups[class[0]];
        let quotient = quotient_cover(d, rep)?;
        let quotient_genus = riemann_hurwitz_genus(&quotient)?;
        rows.push(SubgroupGenusRow {
            order: rep.order(),
            index: group.order() / rep.order(),
            class_size: class.len(),
            quotient_genus,
            equals_prym_dim: quotient_genus == prym_dim,
        });
    }
    Ok(SubgroupGenusReport { prym_dim, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::g3_reference_datum;
    use proptest::prelude::*;

    #[test]
    fn reference_type_is_4_4() {
        let (ct, sides) = covering_type(&g3_reference_datum()).unwrap();
        assert_eq!((ct.alpha, ct.beta, ct.genus), (4, 4, 3));
        assert_eq!(
            sides,
            vec![
                FactorSide::One,
                FactorSide::One,
                FactorSide::One,
                FactorSide::One,
                FactorSide::Two,
                FactorSide::Two,
                FactorSide::Two,
                FactorSide::Two
            ]
        );
    }

    #[test]
    fn all_entries_in_one_class_is_no_type_iii_datum() {
        let a = Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6).unwrap();
        let b = Permutation::parse_cycles("(1 4)(2 5)(3 6)", 6).unwrap();
        let d = MonodromyDatum::new(
            6,
            (1..=4).map(|k| format!("a{k}")).collect(),
            vec![a.clone(), a, b.clone(), b],
        )
        .unwrap();
        assert!(covering_type(&d).is_err());
    }

    #[test]
    fn split_gives_genus_zero_factors_at_g3() {
        let pair = split(&g3_reference_datum()).unwrap();
        assert_eq!(pair.first.monodromy().len(), 4);
        assert_eq!(pair.second.monodromy().len(), 4);
        assert_eq!(riemann_hurwitz_genus(&pair.first).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(&pair.second).unwrap(), 0);
    }

    #[test]
    fn split_then_merge_is_the_identity() {
        let d = g3_reference_datum();
        let pair = split(&d).unwrap();
        assert_eq!(merge(&pair, None).unwrap(), d);
    }

    #[test]
    fn merge_then_split_is_the_identity() {
        let pair = split(&sample(4, 6, 11).unwrap()).unwrap();
        let merged = merge(&pair, None).unwrap();
        assert_eq!(split(&merged).unwrap(), pair);
    }

    #[test]
    fn merge_with_explicit_interleaving_restores_order() {
        let d = g3_reference_datum();
        let pair = split(&d).unwrap();
        let order: Vec<String> = d.branch_labels().to_vec();
        assert_eq!(merge(&pair, Some(&order)).unwrap(), d);
        // an interleaving that scrambles within-factor order breaks the
        // product-one relation here and must be rejected; a1 a3 a2 a4 gives
        // the square of an order-3 element on the first factor
        let mut scrambled = order.clone();
        scrambled.swap(1, 2);
        assert!(merge(&pair, Some(&scrambled)).is_err());
        assert!(merge(&pair, Some(&order[1..])).is_err());
    }

    #[test]
    fn merge_rejects_non_surjective_factor() {
        let t = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let constant = MonodromyDatum::new(
            3,
            (1..=4).map(|k| format!("b{k}")).collect(),
            vec![t; 4],
        )
        .unwrap();
        let other = split(&g3_reference_datum()).unwrap().second;
        assert!(matches!(
            TrigonalPair::new(constant, other),
            Err(ModuliError::FactorNotFull(2))
        ));
    }

    #[test]
    fn merge_rejects_label_collision() {
        let pair = split(&g3_reference_datum()).unwrap();
        let clashing = MonodromyDatum::new(
            3,
            pair.second.branch_labels().to_vec(),
            pair.first.monodromy().to_vec(),
        )
        .unwrap();
        assert!(matches!(
            TrigonalPair::new(clashing, pair.second),
            Err(ModuliError::LabelCollision(_))
        ));
    }

    #[test]
    fn sample_is_deterministic_and_typed() {
        let a = sample(4, 4, 123).unwrap();
        let b = sample(4, 4, 123).unwrap();
        assert_eq!(a, b);
        let (ct, _) = covering_type(&a).unwrap();
        assert_eq!((ct.alpha, ct.beta, ct.genus), (4, 4, 3));
    }

    #[test]
    fn sample_6_6_has_prym_dimension_two() {
        let d = sample(6, 6, 1).unwrap();
        let table = genus_table(&d).unwrap();
        assert_eq!(table.genus, 5);
        assert_eq!(table.trigonal_one, 1);
        assert_eq!(table.trigonal_two, 1);
        assert_eq!(table.prym_dim, 2);
    }

    #[test]
    fn reference_genus_table() {
        let table = genus_table(&g3_reference_datum()).unwrap();
        assert_eq!(table.base, 3);
        assert_eq!(table.triple_cover, 7);
        assert_eq!(table.pair_curve, 4);
        assert_eq!(table.ordered_pair_curve, 19);
        assert_eq!(table.closure, 37);
        assert_eq!(table.prym_dim, 0);
    }

    #[test]
    fn weil_trace_dimension() {
        assert_eq!(dim_from_weil_trace(3), 0);
        assert_eq!(dim_from_weil_trace(6), 3);
    }

    #[test]
    fn moduli_dimension_formula() {
        assert_eq!(moduli_dimension(4, 4).unwrap(), 5);
        assert_eq!(moduli_dimension(6, 6).unwrap(), 9);
        assert!(moduli_dimension(2, 6).is_err());
        assert!(moduli_dimension(5, 5).is_err());
    }

    #[test]
    fn genus_paths_agree_over_a_seed_sweep() {
        for &(alpha, beta) in &[(4usize, 4usize), (4, 6), (6, 6), (6, 8)] {
            for seed in 0..50 {
                let d = sample(alpha, beta, seed).unwrap();
                let table = genus_table(&d).unwrap();
                assert_eq!(table.alpha, alpha);
                assert_eq!(table.beta, beta);
                assert_eq!(
                    table.trigonal_one + table.trigonal_two,
                    table.genus - 3,
                    "alpha={alpha} beta={beta} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn subgroup_genus_survey_on_a_genus_5_base() {
        let d = sample(6, 6, 1).unwrap();
        let report = subgroup_genus_report(&d).unwrap();
        // quotient by the pair stabilizer (order 4) has the pair-curve genus
        let pair_row = report
            .rows
            .iter()
            .find(|r| r.order == 4 && r.quotient_genus == 10)
            .expect("pair-stabilizer class present");
        assert_eq!(pair_row.index, 9);
        // quotient by a point stabilizer (order 6) has the triple-cover genus
        assert!(report
            .rows
            .iter()
            .any(|r| r.order == 6 && r.quotient_genus == 13));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sampled_data_split_into_disjoint_full_factors(
            ai in 0usize..3, bi in 0usize..3, seed in any::<u64>()
        ) {
            let alpha = [4usize, 6, 8][ai];
            let beta = [4usize, 6, 8][bi];
            let d = sample(alpha, beta, seed).unwrap();
            let (ct, _) = covering_type(&d).unwrap();
            prop_assert_eq!((ct.alpha, ct.beta), (alpha, beta));
            let pair = split(&d).unwrap();
            prop_assert_eq!(merge(&pair, None).unwrap(), d);
            for factor in [&pair.first, &pair.second] {
                prop_assert!(factor.is_transitive().unwrap());
                prop_assert_eq!(factor.monodromy_group().unwrap().order(), 6);
            }
        }
    }
}
