//! Monodromy data for branched covers of the line: validation,
//! Riemann-Hurwitz genus, the matching-involution classification, the induced
//! 9-, 18- and 36-point actions, Galois closure, quotient covers, and the
//! direct-factor structure of the order-36 monodromy group.
//!
//! Sheet dictionary, fixed once for the whole crate: for a degree-6 cover the
//! odd 1-based symbols 1, 3, 5 are the x-sheet and the even symbols 2, 4, 6
//! the y-sheet; the grid point `P_ij` is the unordered pair {2i-1, 2j}.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corresp;
use crate::group::{GroupAction, GroupError, PermGroup, StabilizerTarget};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("branch label list has {labels} entries but there are {perms} monodromy permutations")]
    LengthMismatch { labels: usize, perms: usize },
    #[error("monodromy entry {0} has degree {1}, datum degree is {2}")]
    EntryDegreeMismatch(usize, usize, usize),
    #[error("datum is invalid: {0}")]
    InvalidDatum(String),
    #[error("datum is not transitive; use the per-orbit genus instead")]
    NotTransitive,
    #[error("ramification total is odd; the datum does not describe a curve")]
    ParityViolation,
    #[error("degree is {0}, expected {1}")]
    WrongDegree(usize, usize),
    #[error("monodromy entry {0} is not an odd-even matching involution")]
    NonAdmissibleEntry(usize),
    #[error("element does not map the two sheets coherently")]
    NotSheetCoherent,
    #[error("monodromy group has order {0}, expected the full order-36 group")]
    NotFullMonodromy(usize),
    #[error("group is not the order-36 two-factor group: {0}")]
    WrongGroup(String),
    #[error("JSON error: {0}")]
    Json(String),
    #[error("monodromy file declares convention {0:?}, only \"left-to-right\" is supported")]
    UnsupportedConvention(String),
}

/// The n x n fiber grid; label `P_ij` sits at row-major index `n(i-1)+(j-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberGrid {
    pub n: usize,
}

impl FiberGrid {
    pub fn new(n: usize) -> Self {
        FiberGrid { n }
    }

    pub fn size(&self) -> usize {
        self.n * self.n
    }

    /// 0-based (i, j) to label index.
    pub fn label(&self, i: usize, j: usize) -> usize {
        self.n * i + j
    }

    pub fn pair_of(&self, label: usize) -> (usize, usize) {
        (label / self.n, label % self.n)
    }

    pub fn label_name(&self, label: usize) -> String {
        let (i, j) = self.pair_of(label);
        format!("P{}{}", i + 1, j + 1)
    }
}

/// Monodromy of a branched cover of the line: one permutation per branch
/// point, with left-to-right product equal to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyDatum {
    degree: usize,
    branch_labels: Vec<String>,
    monodromy: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationViolation {
    ProductNotIdentity,
    IdentityEntry(usize),
    DuplicateLabel(String),
}

impl std::fmt::Display for ValidationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationViolation::ProductNotIdentity => {
                write!(f, "ordered product of the monodromy is not the identity")
            }
            ValidationViolation::IdentityEntry(i) => {
                write!(f, "monodromy entry {i} is the identity")
            }
            ValidationViolation::DuplicateLabel(l) => {
                write!(f, "branch label {l:?} appears twice")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<ValidationViolation>,
    pub group_order: usize,
    pub transitive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl MonodromyDatum {
    pub fn new(
        degree: usize,
        branch_labels: Vec<String>,
        monodromy: Vec<Permutation>,
    ) -> Result<Self, CoverError> {
        if branch_labels.len() != monodromy.len() {
            return Err(CoverError::LengthMismatch {
                labels: branch_labels.len(),
                perms: monodromy.len(),
            });
        }
        for (i, p) in monodromy.iter().enumerate() {
            if p.degree() != degree {
                return Err(CoverError::EntryDegreeMismatch(i, p.degree(), degree));
            }
        }
        Ok(MonodromyDatum {
            degree,
            branch_labels,
            monodromy,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branch_labels(&self) -> &[String] {
        &self.branch_labels
    }

    pub fn monodromy(&self) -> &[Permutation] {
        &self.monodromy
    }

    pub fn product(&self) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for s in &self.monodromy {
            p = p.compose(s).expect("equal degrees");
        }
        p
    }

    /// Checks the datum invariants one by one and reports the monodromy group
    /// order and transitivity alongside.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if !self.product().is_identity() {
            violations.push(ValidationViolation::ProductNotIdentity);
        }
        for (i, p) in self.monodromy.iter().enumerate() {
            if p.is_identity() {
                violations.push(ValidationViolation::IdentityEntry(i));
            }
        }
        let mut seen = BTreeSet::new();
        for l in &self.branch_labels {
            if !seen.insert(l.clone()) {
                violations.push(ValidationViolation::DuplicateLabel(l.clone()));
            }
        }
        let group = self.monodromy_group();
        let domain: Vec<usize> = (0..self.degree).collect();
        let (group_order, transitive) = match &group {
            Ok(g) => (
                g.order(),
                g.is_transitive(&domain).unwrap_or(false),
            ),
            Err(_) => (0, false),
        };
        ValidationReport {
            violations,
            group_order,
            transitive,
        }
    }

    pub fn require_valid(&self) -> Result<(), CoverError> {
        let report = self.validate();
        if !report.is_valid() {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(CoverError::InvalidDatum(msgs.join("; ")));
        }
        Ok(())
    }

    pub fn monodromy_group(&self) -> Result<PermGroup, CoverError> {
        if self.monodromy.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        Ok(PermGroup::generate(&self.monodromy)?)
    }

    pub fn is_transitive(&self) -> Result<bool, CoverError> {
        let domain: Vec<usize> = (0..self.degree).collect();
        Ok(self.monodromy_group()?.is_transitive(&domain)?)
    }

    /// Serializes to the canonical interchange JSON.
    pub fn to_json(&self) -> String {
        let record = MonodromyFileRecord {
            degree: self.degree,
            convention: "left-to-right".to_string(),
            branch_points: self.branch_labels.clone(),
            monodromy: self.monodromy.iter().map(|p| p.to_string()).collect(),
        };
        serde_json::to_string_pretty(&record).expect("serializable record")
    }

    /// Parses and validates the canonical interchange JSON.
    pub fn from_json(text: &str) -> Result<Self, CoverError> {
        let record: MonodromyFileRecord =
            serde_json::from_str(text).map_err(|e| CoverError::Json(e.to_string()))?;
        if record.convention != "left-to-right" {
            return Err(CoverError::UnsupportedConvention(record.convention));
        }
        let monodromy: Result<Vec<Permutation>, PermError> = record
            .monodromy
            .iter()
            .map(|s| Permutation::parse_cycles(s, record.degree))
            .collect();
        let datum = MonodromyDatum::new(record.degree, record.branch_points, monodromy?)?;
        datum.require_valid()?;
        Ok(datum)
    }
}

#[derive(Serialize, Deserialize)]
struct MonodromyFileRecord {
    degree: usize,
    convention: String,
    branch_points: Vec<String>,
    monodromy: Vec<String>,
}

/// Genus from the Riemann-Hurwitz formula
/// `2g - 2 = -2 deg + sum_i (deg - #cycles(sigma_i))`.
///
/// Requires a valid transitive datum; fails on parity violation or negative
/// genus, which signal corrupted input.
pub fn riemann_hurwitz_genus(d: &MonodromyDatum) -> Result<usize, CoverError> {
    d.require_valid()?;
    if !d.is_transitive()? {
        return Err(CoverError::NotTransitive);
    }
    let total: i64 = d
        .monodromy
        .iter()
        .map(|p| (d.degree - p.cycle_count()) as i64)
        .sum();
    let two_g_minus_2 = -2 * d.degree as i64 + total;
    if (two_g_minus_2 + 2) % 2 != 0 {
        return Err(CoverError::ParityViolation);
    }
    let g2 = two_g_minus_2 + 2;
    if g2 < 0 {
        return Err(CoverError::InvalidDatum(format!(
            "negative genus {}",
            g2 / 2
        )));
    }
    Ok((g2 / 2) as usize)
}

/// One genus per orbit of the monodromy group, for disconnected covers.
pub fn riemann_hurwitz_genus_per_orbit(
    d: &MonodromyDatum,
) -> Result<Vec<(Vec<usize>, usize)>, CoverError> {
    d.require_valid()?;
    let group = d.monodromy_group()?;
    let domain: Vec<usize> = (0..d.degree).collect();
    let mut out = Vec::new();
    for orbit in group.orbits(&domain)? {
        let position: std::collections::BTreeMap<usize, usize> = orbit
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k))
            .collect();
        let mut labels = Vec::new();
        let mut perms = Vec::new();
        for (label, p) in d.branch_labels.iter().zip(&d.monodromy) {
            let images: Vec<usize> = orbit.iter().map(|&x| position[&p.apply(x)]).collect();
            let restricted = Permutation::from_images(images).expect("orbit is invariant");
            if !restricted.is_identity() {
                labels.push(label.clone());
                perms.push(restricted);
            }
        }
        let restricted_datum = MonodromyDatum::new(orbit.len(), labels, perms)?;
        let genus = riemann_hurwitz_genus(&restricted_datum)?;
        out.push((orbit, genus));
    }
    Ok(out)
}

/// The six products of three disjoint transpositions matching each odd symbol
/// to an even one, sorted.
pub fn admissible_involutions() -> Vec<Permutation> {
    // 0-based: x-sheet {0, 2, 4}, y-sheet {1, 3, 5}
    let x = [0usize, 2, 4];
    let y = [1usize, 3, 5];
    let mut out = Vec::new();
    let perms3 = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for assignment in perms3 {
        let mut images: Vec<usize> = (0..6).collect();
        for (k, &xk) in x.iter().enumerate() {
            let yk = y[assignment[k]];
            images[xk] = yk;
            images[yk] = xk;
        }
        out.push(Permutation::from_images(images).expect("matching is a bijection"));
    }
    out.sort();
    out
}

pub fn is_admissible(p: &Permutation) -> bool {
    p.degree() == 6 && admissible_involutions().contains(p)
}

/// The order-36 group generated by all six matching involutions.
pub fn canonical_group() -> PermGroup {
    PermGroup::generate(&admissible_involutions()).expect("six involutions on six points")
}

/// Conjugation type of the transitive groups generated by matching
/// involutions; determined by the group order 6, 12 or 36.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoverType {
    I,
    II,
    III,
}

impl std::fmt::Display for CoverType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverType::I => write!(f, "I"),
            CoverType::II => write!(f, "II"),
            CoverType::III => write!(f, "III"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedTypeClass {
    pub cover_type: CoverType,
    pub order: usize,
    pub representative: PermGroup,
    /// Distinct subgroups in the class reachable from subsets of the six
    /// matching involutions.
    pub group_count: usize,
}

/// Enumerates all subgroups generated by nonempty subsets of the six matching
/// involutions, keeps the transitive ones, and verifies they fall into exactly
/// three conjugation classes in the ambient symmetric group.
pub fn classify_generated_types() -> Result<Vec<GeneratedTypeClass>, CoverError> {
    let adm = admissible_involutions();
    let mut groups: Vec<PermGroup> = Vec::new();
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    for mask in 1u32..(1 << adm.len()) {
        let gens: Vec<Permutation> = adm
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, p)| p.clone())
            .collect();
        let g = PermGroup::generate(&gens)?;
        let domain: Vec<usize> = (0..6).collect();
        if g.is_transitive(&domain)? && seen.insert(g.elements().to_vec()) {
            groups.push(g);
        }
    }
    let s6 = PermGroup::generate(&[
        Permutation::parse_cycles("(1 2)", 6)?,
        Permutation::parse_cycles("(1 2 3 4 5 6)", 6)?,
    ])?;
    let mut orders: Vec<usize> = groups.iter().map(|g| g.order()).collect();
    orders.sort_unstable();
    orders.dedup();
    let mut classes = Vec::new();
    for order in orders {
        let members: Vec<&PermGroup> = groups.iter().filter(|g| g.order() == order).collect();
        let rep = members[0];
        for other in &members[1..] {
            if !are_conjugate_in(&s6, rep, other) {
                return Err(CoverError::WrongGroup(format!(
                    "two order-{order} groups are not conjugate in S6"
                )));
            }
        }
        let cover_type = match order {
            6 => CoverType::I,
            12 => CoverType::II,
            36 => CoverType::III,
            _ => {
                return Err(CoverError::WrongGroup(format!(
                    "unexpected transitive order {order}"
                )))
            }
        };
        classes.push(GeneratedTypeClass {
            cover_type,
            order,
            representative: rep.clone(),
            group_count: members.len(),
        });
    }
    Ok(classes)
}

fn are_conjugate_in(ambient: &PermGroup, a: &PermGroup, b: &PermGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    ambient
        .elements()
        .iter()
        .any(|x| ambient.conjugate_subgroup(a, x).same_elements(b))
}

/// Classifies a datum whose entries are matching involutions.
pub fn classify_datum(d: &MonodromyDatum) -> Result<CoverType, CoverError> {
    d.require_valid()?;
    for (i, p) in d.monodromy.iter().enumerate() {
        if !is_admissible(p) {
            return Err(CoverError::NonAdmissibleEntry(i));
        }
    }
    match d.monodromy_group()?.order() {
        6 => Ok(CoverType::I),
        12 => Ok(CoverType::II),
        36 => Ok(CoverType::III),
        o => Err(CoverError::NotFullMonodromy(o)),
    }
}

pub fn require_type_iii(d: &MonodromyDatum) -> Result<PermGroup, CoverError> {
    match classify_datum(d)? {
        CoverType::III => d.monodromy_group(),
        _ => Err(CoverError::NotFullMonodromy(d.monodromy_group()?.order())),
    }
}

/// Image of the grid pair under a sheet-coherent permutation of the six
/// symbols: {x_i, y_j} maps to another mixed pair.
fn pair_image(g: &Permutation, i: usize, j: usize) -> Result<(usize, usize), CoverError> {
    let a = g.apply(2 * i);
    let b = g.apply(2 * j + 1);
    if a % 2 == 0 && b % 2 == 1 {
        Ok((a / 2, b / 2))
    } else if a % 2 == 1 && b % 2 == 0 {
        Ok((b / 2, a / 2))
    } else {
        Err(CoverError::NotSheetCoherent)
    }
}

fn grid_perm_of(g: &Permutation) -> Result<Permutation, CoverError> {
    let grid = FiberGrid::new(3);
    let mut images = vec![0usize; 9];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = pair_image(g, i, j)?;
            images[grid.label(i, j)] = grid.label(a, b);
        }
    }
    Ok(Permutation::from_images(images).expect("induced map is a bijection"))
}

/// The induced degree-9 monodromy on the fiber grid; this is the monodromy of
/// the correspondence curve sitting in the symmetric square.
pub fn pair_curve_action(d: &MonodromyDatum) -> Result<MonodromyDatum, CoverError> {
    d.require_valid()?;
    if d.degree != 6 {
        return Err(CoverError::WrongDegree(d.degree, 6));
    }
    let mut perms = Vec::new();
    for (i, p) in d.monodromy.iter().enumerate() {
        if !is_admissible(p) {
            return Err(CoverError::NonAdmissibleEntry(i));
        }
        perms.push(grid_perm_of(p)?);
    }
    MonodromyDatum::new(9, d.branch_labels.clone(), perms)
}

/// The 9-point grid action of a whole sheet-coherent group.
pub fn pair_group_action(group: &PermGroup) -> Result<GroupAction, CoverError> {
    let perms: Result<Vec<Permutation>, CoverError> =
        group.elements().iter().map(grid_perm_of).collect();
    let perms = perms?;
    Ok(GroupAction::new(group.clone(), 9, |_, e| perms[e].clone())?)
}

/// Ordered mixed pairs (a, b) with a, b on opposite sheets, in lexicographic
/// order. 18 of them.
pub fn ordered_pair_labels() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            if a % 2 != b % 2 {
                out.push((a, b));
            }
        }
    }
    out
}

fn ordered_pair_perm_of(g: &Permutation) -> Permutation {
    let labels = ordered_pair_labels();
    let index: std::collections::BTreeMap<(usize, usize), usize> = labels
        .iter()
        .enumerate()
        .map(|(k, &ab)| (ab, k))
        .collect();
    let images: Vec<usize> = labels
        .iter()
        .map(|&(a, b)| index[&(g.apply(a), g.apply(b))])
        .collect();
    Permutation::from_images(images).expect("componentwise map is a bijection")
}

/// The induced degree-18 monodromy on ordered mixed pairs; the monodromy of
/// the curve upstairs in the ordinary square.
pub fn ordered_pair_action(d: &MonodromyDatum) -> Result<MonodromyDatum, CoverError> {
    require_type_iii(d)?;
    let perms: Vec<Permutation> = d.monodromy.iter().map(ordered_pair_perm_of).collect();
    MonodromyDatum::new(18, d.branch_labels.clone(), perms)
}

pub fn ordered_pair_group_action(group: &PermGroup) -> Result<GroupAction, CoverError> {
    Ok(GroupAction::new(group.clone(), 18, |g, e| {
        ordered_pair_perm_of(&g.elements()[e])
    })?)
}

/// 36 fiber points of the closure: ordered pairs of ordered mixed pairs that
/// share the first symbol and differ in the second.
pub fn closure_fiber_labels() -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for a in 0..6usize {
        for b in 0..6usize {
            if a % 2 == b % 2 {
                continue;
            }
            for c in 0..6usize {
                if c % 2 == b % 2 && c != b {
                    out.push(((a, b), (a, c)));
                }
            }
        }
    }
    out
}

fn closure_perm_of(g: &Permutation) -> Permutation {
    let labels = closure_fiber_labels();
    let index: std::collections::BTreeMap<((usize, usize), (usize, usize)), usize> = labels
        .iter()
        .enumerate()
        .map(|(k, &y)| (y, k))
        .collect();
    let images: Vec<usize> = labels
        .iter()
        .map(|&((a, b), (a2, c))| index[&((g.apply(a), g.apply(b)), (g.apply(a2), g.apply(c)))])
        .collect();
    Permutation::from_images(images).expect("componentwise map is a bijection")
}

/// The degree-36 monodromy on the closure fiber; equivalent to the regular
/// action of the full monodromy group.
pub fn y_closure_action(d: &MonodromyDatum) -> Result<MonodromyDatum, CoverError> {
    require_type_iii(d)?;
    let perms: Vec<Permutation> = d.monodromy.iter().map(closure_perm_of).collect();
    MonodromyDatum::new(36, d.branch_labels.clone(), perms)
}

pub fn closure_group_action(group: &PermGroup) -> Result<GroupAction, CoverError> {
    Ok(GroupAction::new(group.clone(), 36, |g, e| {
        closure_perm_of(&g.elements()[e])
    })?)
}

/// Regular monodromy of the Galois closure: the monodromy group acting on
/// itself by right translation, elements in sorted order.
pub fn galois_closure(d: &MonodromyDatum) -> Result<MonodromyDatum, CoverError> {
    d.require_valid()?;
    if !d.is_transitive()? {
        return Err(CoverError::NotTransitive);
    }
    let group = d.monodromy_group()?;
    let order = group.order();
    let mut perms = Vec::new();
    for s in &d.monodromy {
        let si = group.element_index(s).expect("entry generates the group");
        let images: Vec<usize> = (0..order).map(|k| group.product_index(k, si)).collect();
        perms.push(Permutation::from_images(images).expect("translation is a bijection"));
    }
    MonodromyDatum::new(order, d.branch_labels.clone(), perms)
}

/// Monodromy of the intermediate cover attached to a subgroup of the
/// monodromy group: the action on cosets, with branch points where the action
/// becomes trivial dropped.
pub fn quotient_cover(d: &MonodromyDatum, sub: &PermGroup) -> Result<MonodromyDatum, CoverError> {
    d.require_valid()?;
    let group = d.monodromy_group()?;
    let act = group.coset_action(sub)?;
    let mut labels = Vec::new();
    let mut perms = Vec::new();
    for (label, s) in d.branch_labels.iter().zip(&d.monodromy) {
        let p = act
            .perm_of_element(s)
            .expect("monodromy entry is a group element")
            .clone();
        if !p.is_identity() {
            labels.push(label.clone());
            perms.push(p);
        }
    }
    MonodromyDatum::new(act.domain_size(), labels, perms)
}

/// Relabeling bijection between two monodromy data matching every entry
/// simultaneously, or `None`. Branch labels must agree positionally.
pub fn monodromy_equivalent(a: &MonodromyDatum, b: &MonodromyDatum) -> Option<Vec<usize>> {
    if a.degree != b.degree
        || a.monodromy.len() != b.monodromy.len()
        || a.branch_labels != b.branch_labels
    {
        return None;
    }
    // Reuse the action-equivalence search over the generated groups with the
    // entry tuples as distinguished generators: build one group from the
    // disjoint union of relations by pairing entries positionally.
    let ga = PermGroup::generate(&a.monodromy).ok()?;
    let gb = PermGroup::generate(&b.monodromy).ok()?;
    if ga.order() != gb.order() {
        return None;
    }
    simultaneous_conjugacy(&a.monodromy, &b.monodromy, a.degree)
}

/// Finds phi with `phi(s_i(x)) = t_i(phi(x))` for every i, by seed
/// propagation with backtracking over orbit images.
fn simultaneous_conjugacy(
    s: &[Permutation],
    t: &[Permutation],
    degree: usize,
) -> Option<Vec<usize>> {
    fn orbits_of(perms: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; degree];
        let mut out = Vec::new();
        for start in 0..degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for p in perms {
                    let y = p.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        s: &[Permutation],
        t: &[Permutation],
        s_orbits: &[Vec<usize>],
        t_orbits: &[Vec<usize>],
        k: usize,
        used: &mut Vec<bool>,
        phi: &mut Vec<usize>,
        hit: &mut Vec<bool>,
    ) -> bool {
        if k == s_orbits.len() {
            return true;
        }
        let seed = s_orbits[k][0];
        for (j, t_orbit) in t_orbits.iter().enumerate() {
            if used[j] || t_orbit.len() != s_orbits[k].len() {
                continue;
            }
            'image: for &image in t_orbit {
                if hit[image] {
                    continue;
                }
                let mut assigned = vec![seed];
                phi[seed] = image;
                hit[image] = true;
                let mut queue = vec![seed];
                let mut ok = true;
                while let Some(x) = queue.pop() {
                    for (si, ti) in s.iter().zip(t) {
                        let sx = si.apply(x);
                        let tx = ti.apply(phi[x]);
                        if phi[sx] == usize::MAX {
                            if hit[tx] {
                                ok = false;
                            } else {
                                phi[sx] = tx;
                                hit[tx] = true;
                                assigned.push(sx);
                                queue.push(sx);
                            }
                        } else if phi[sx] != tx {
                            ok = false;
                        }
                        if !ok {
                            for &y in &assigned {
                                hit[phi[y]] = false;
                                phi[y] = usize::MAX;
                            }
                            continue 'image;
                        }
                    }
                }
                used[j] = true;
                if assign(s, t, s_orbits, t_orbits, k + 1, used, phi, hit) {
                    return true;
                }
                used[j] = false;
                for &y in &assigned {
                    hit[phi[y]] = false;
                    phi[y] = usize::MAX;
                }
            }
        }
        false
    }

    let s_orbits = orbits_of(s, degree);
    let t_orbits = orbits_of(t, degree);
    if s_orbits.len() != t_orbits.len() {
        return None;
    }
    let mut phi = vec![usize::MAX; degree];
    let mut used = vec![false; t_orbits.len()];
    let mut hit = vec![false; degree];
    if assign(
        s, t, &s_orbits, &t_orbits, 0, &mut used, &mut phi, &mut hit,
    ) {
        Some(phi)
    } else {
        None
    }
}

/// Direct-factor structure of the order-36 group: the two size-3 involution
/// classes, the order-6 factors they generate, per-element coordinates, and
/// the factor-swapping outer involution.
#[derive(Clone)]
pub struct FactorDecomposition {
    pub group: PermGroup,
    pub class_one: Vec<Permutation>,
    pub class_two: Vec<Permutation>,
    pub factor_one: PermGroup,
    pub factor_two: PermGroup,
    /// `coords[e] = (a, b)` with `elements[e] = a * b`, `a` in factor one and
    /// `b` in factor two (indices into the factor element lists).
    coords: Vec<(usize, usize)>,
    tau_map: Vec<usize>,
    pub embedding_one: S3Embedding,
    pub embedding_two: S3Embedding,
}

/// A fixed isomorphism from the symmetric group on 3 symbols onto one of the
/// order-6 factors, stored as matched element pairs.
#[derive(Clone)]
pub struct S3Embedding {
    pairs: Vec<(Permutation, Permutation)>,
}

impl S3Embedding {
    /// Extends a generator assignment (images of the transpositions (1 2) and
    /// (1 3)) to the full isomorphism, verifying single-valuedness.
    fn from_generators(
        image_12: &Permutation,
        image_13: &Permutation,
    ) -> Result<Self, CoverError> {
        let t12 = Permutation::parse_cycles("(1 2)", 3)?;
        let t13 = Permutation::parse_cycles("(1 3)", 3)?;
        let degree = image_12.degree();
        let gens = [(t12, image_12.clone()), (t13, image_13.clone())];
        let mut pairs: Vec<(Permutation, Permutation)> =
            vec![(Permutation::identity(3), Permutation::identity(degree))];
        let mut queue = vec![0usize];
        while let Some(k) = queue.pop() {
            let (s, im) = pairs[k].clone();
            for (gs, gim) in &gens {
                let ns = s.compose(gs)?;
                let nim = im.compose(gim)?;
                match pairs.iter().find(|(a, _)| *a == ns) {
                    Some((_, existing)) => {
                        if *existing != nim {
                            return Err(CoverError::WrongGroup(
                                "generator assignment does not extend to a homomorphism".into(),
                            ));
                        }
                    }
                    None => {
                        pairs.push((ns, nim));
                        queue.push(pairs.len() - 1);
                    }
                }
            }
        }
        if pairs.len() != 6 {
            return Err(CoverError::WrongGroup(format!(
                "expected 6 matched pairs, found {}",
                pairs.len()
            )));
        }
        let images: BTreeSet<&Permutation> = pairs.iter().map(|(_, im)| im).collect();
        if images.len() != 6 {
            return Err(CoverError::WrongGroup(
                "generator assignment is not injective".into(),
            ));
        }
        pairs.sort_by(|(a, _), (b, _)| a.cmp(b));
        Ok(S3Embedding { pairs })
    }

    /// Image of an abstract degree-3 permutation in the factor.
    pub fn to_factor(&self, s: &Permutation) -> Option<&Permutation> {
        self.pairs.iter().find(|(a, _)| a == s).map(|(_, im)| im)
    }

    /// Abstract degree-3 permutation of a factor element.
    pub fn from_factor(&self, im: &Permutation) -> Option<&Permutation> {
        self.pairs.iter().find(|(_, b)| b == im).map(|(a, _)| a)
    }
}

impl FactorDecomposition {
    /// Builds the decomposition of the canonical order-36 group.
    pub fn build(group: &PermGroup) -> Result<Self, CoverError> {
        let canonical = canonical_group();
        if !group.same_elements(&canonical) {
            return Err(CoverError::WrongGroup(format!(
                "order {} group differs from the canonical order-36 group",
                group.order()
            )));
        }
        let adm: BTreeSet<Permutation> = admissible_involutions().into_iter().collect();
        let anchor_one = Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6)?;
        let anchor_two = Permutation::parse_cycles("(1 2)(3 6)(4 5)", 6)?;
        let mut class_one = Vec::new();
        let mut class_two = Vec::new();
        for class in group.conjugacy_classes() {
            let members: Vec<Permutation> =
                class.iter().map(|&i| group.elements()[i].clone()).collect();
            if members.len() == 3 && members.iter().all(|p| adm.contains(p)) {
                if members.contains(&anchor_one) {
                    class_one = members;
                } else if members.contains(&anchor_two) {
                    class_two = members;
                }
            }
        }
        if class_one.len() != 3 || class_two.len() != 3 {
            return Err(CoverError::WrongGroup(
                "could not locate the two size-3 matching-involution classes".into(),
            ));
        }
        let factor_one = PermGroup::generate(&class_one)?;
        let factor_two = PermGroup::generate(&class_two)?;
        if factor_one.order() != 6 || factor_two.order() != 6 {
            return Err(CoverError::WrongGroup("factors are not of order 6".into()));
        }
        // the two factors must commute elementwise and meet trivially
        for a in factor_one.elements() {
            for b in factor_two.elements() {
                if a.compose(b)? != b.compose(a)? {
                    return Err(CoverError::WrongGroup("factors do not commute".into()));
                }
            }
        }
        let mut coords = vec![(usize::MAX, usize::MAX); group.order()];
        for (ai, a) in factor_one.elements().iter().enumerate() {
            for (bi, b) in factor_two.elements().iter().enumerate() {
                let g = a.compose(b)?;
                let e = group
                    .element_index(&g)
                    .ok_or_else(|| CoverError::WrongGroup("factor product escapes".into()))?;
                if coords[e] != (usize::MAX, usize::MAX) {
                    return Err(CoverError::WrongGroup(
                        "factor decomposition is not unique".into(),
                    ));
                }
                coords[e] = (ai, bi);
            }
        }
        let embedding_one = S3Embedding::from_generators(
            &anchor_one,
            &Permutation::parse_cycles("(1 4)(2 5)(3 6)", 6)?,
        )?;
        let embedding_two = S3Embedding::from_generators(
            &anchor_two,
            &Permutation::parse_cycles("(1 4)(2 3)(5 6)", 6)?,
        )?;
        let mut tau_map = vec![0usize; group.order()];
        for e in 0..group.order() {
            let (ai, bi) = coords[e];
            let a = &factor_one.elements()[ai];
            let b = &factor_two.elements()[bi];
            let a_abstract = embedding_one
                .from_factor(a)
                .ok_or_else(|| CoverError::WrongGroup("factor-one lookup failed".into()))?;
            let b_abstract = embedding_two
                .from_factor(b)
                .ok_or_else(|| CoverError::WrongGroup("factor-two lookup failed".into()))?;
            let swapped = embedding_one
                .to_factor(b_abstract)
                .expect("abstract element maps in")
                .compose(
                    embedding_two
                        .to_factor(a_abstract)
                        .expect("abstract element maps in"),
                )?;
            tau_map[e] = group
                .element_index(&swapped)
                .ok_or_else(|| CoverError::WrongGroup("swap escapes the group".into()))?;
        }
        Ok(FactorDecomposition {
            group: group.clone(),
            class_one,
            class_two,
            factor_one,
            factor_two,
            coords,
            tau_map,
            embedding_one,
            embedding_two,
        })
    }

    /// Factor coordinates of a group element.
    pub fn coordinates(&self, g: &Permutation) -> Option<(&Permutation, &Permutation)> {
        let e = self.group.element_index(g)?;
        let (ai, bi) = self.coords[e];
        Some((
            &self.factor_one.elements()[ai],
            &self.factor_two.elements()[bi],
        ))
    }

    /// The factor-swapping involution through the fixed embeddings.
    pub fn tau(&self, g: &Permutation) -> Option<&Permutation> {
        let e = self.group.element_index(g)?;
        Some(&self.group.elements()[self.tau_map[e]])
    }

    pub fn tau_image_of_subgroup(&self, sub: &PermGroup) -> Result<PermGroup, CoverError> {
        let elements: Vec<Permutation> = sub
            .elements()
            .iter()
            .map(|g| self.tau(g).expect("subgroup of the decomposed group").clone())
            .collect();
        Ok(PermGroup::from_elements(6, elements)?)
    }
}

/// The distinguished subgroups of the order-36 group, named by the quotient
/// cover each one cuts out.
#[derive(Clone)]
pub struct DistinguishedSubgroups {
    /// Setwise stabilizer of {1, 2}: the 9-point fiber stabilizer, order 4.
    pub pair_stabilizer: PermGroup,
    /// Pointwise stabilizer of (1, 2): the 18-point fiber stabilizer, order 2.
    pub ordered_pair_stabilizer: PermGroup,
    /// Stabilizer of the symbol 1: the degree-6 cover itself, order 6.
    pub point_stabilizer: PermGroup,
    /// Sheet-preserving subgroup of index 2: the hyperelliptic base, order 18.
    pub sheet_preserving: PermGroup,
    /// Preimage of the transposition subgroup in factor one: first trigonal
    /// quotient, order 12.
    pub trigonal_one: PermGroup,
    /// Same on the other side: second trigonal quotient, order 12.
    pub trigonal_two: PermGroup,
}

pub fn distinguished_subgroups(
    fd: &FactorDecomposition,
) -> Result<DistinguishedSubgroups, CoverError> {
    let g = &fd.group;
    let pair_stabilizer = g.stabilizer(&StabilizerTarget::set([0, 1]))?;
    let ordered_pair_stabilizer = g.stabilizer(&StabilizerTarget::tuple([0, 1]))?;
    let point_stabilizer = g.stabilizer(&StabilizerTarget::point(0))?;
    let sheet_preserving = g.stabilizer(&StabilizerTarget::set([0, 2, 4]))?;
    let t12 = Permutation::parse_cycles("(1 2)", 3)?;
    let mut gens_one = vec![fd
        .embedding_one
        .to_factor(&t12)
        .expect("transposition maps in")
        .clone()];
    gens_one.extend(fd.class_two.iter().cloned());
    let trigonal_one = PermGroup::generate(&gens_one)?;
    let mut gens_two = vec![fd
        .embedding_two
        .to_factor(&t12)
        .expect("transposition maps in")
        .clone()];
    gens_two.extend(fd.class_one.iter().cloned());
    let trigonal_two = PermGroup::generate(&gens_two)?;
    Ok(DistinguishedSubgroups {
        pair_stabilizer,
        ordered_pair_stabilizer,
        point_stabilizer,
        sheet_preserving,
        trigonal_one,
        trigonal_two,
    })
}

/// Outcome of checking the closure-fiber/incidence-set bijection.
#[derive(Debug, Clone)]
pub struct IncidenceBijectionReport {
    pub fiber_size: usize,
    pub incidence_size: usize,
    pub bijective: bool,
    pub equivariant: bool,
}

impl IncidenceBijectionReport {
    pub fn holds(&self) -> bool {
        self.fiber_size == 36 && self.incidence_size == 36 && self.bijective && self.equivariant
    }
}

/// Maps each of the 36 closure-fiber points `((a,b),(a,c))` to the ordered
/// pair of grid labels `({a,b}, {a,c})`, and checks this is an equivariant
/// bijection onto the incidence set of the agree-in-one-coordinate
/// correspondence.
pub fn incidence_bijection_check(
    d: &MonodromyDatum,
) -> Result<IncidenceBijectionReport, CoverError> {
    require_type_iii(d)?;
    let grid = FiberGrid::new(3);
    let mixed_label = |a: usize, b: usize| -> usize {
        // unordered mixed pair to grid label
        let (x, y) = if a % 2 == 0 { (a, b) } else { (b, a) };
        grid.label(x / 2, y / 2)
    };
    let dmat = corresp::build_d(3).map_err(|e| CoverError::WrongGroup(e.to_string()))?;
    let mut incidence: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in 0..9 {
        for qq in 0..9 {
            if dmat.entries()[p][qq] == 1 {
                incidence.insert((p, qq));
            }
        }
    }
    let fiber = closure_fiber_labels();
    let mut image: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut injective = true;
    let mut mapped = Vec::new();
    for &((a, b), (_, c)) in &fiber {
        let target = (mixed_label(a, b), mixed_label(a, c));
        if !image.insert(target) {
            injective = false;
        }
        mapped.push(target);
    }
    let bijective = injective && image == incidence;
    // equivariance of the map against every monodromy entry
    let mut equivariant = true;
    for s in &d.monodromy {
        let s36 = closure_perm_of(s);
        let s9 = grid_perm_of(s)?;
        for (k, &((_, _), (_, _))) in fiber.iter().enumerate() {
            let (p, qq) = mapped[k];
            let after_action = mapped[s36.apply(k)];
            if after_action != (s9.apply(p), s9.apply(qq)) {
                equivariant = false;
            }
        }
    }
    Ok(IncidenceBijectionReport {
        fiber_size: fiber.len(),
        incidence_size: incidence.len(),
        bijective,
        equivariant,
    })
}

/// One row of the subgroup census, aggregated per conjugacy class.
#[derive(Debug, Clone)]
pub struct CensusClassRow {
    pub order: usize,
    pub class_size: usize,
    /// whether the factor-swapping involution carries this class to itself
    pub tau_invariant: bool,
}

/// Exhaustive subgroup census of the order-36 group together with the orbit
/// structure of its conjugacy classes under the factor-swapping involution.
#[derive(Debug, Clone)]
pub struct SubgroupCensus {
    pub subgroup_count: usize,
    pub class_count: usize,
    pub tau_invariant_classes: usize,
    pub tau_swapped_pairs: usize,
    /// the involution maps every conjugacy class onto a conjugacy class
    pub tau_permutes_classes: bool,
    pub rows: Vec<CensusClassRow>,
}

pub fn subgroup_census() -> Result<SubgroupCensus, CoverError> {
    let group = canonical_group();
    let fd = FactorDecomposition::build(&group)?;
    let subgroups = group.all_subgroups()?;
    let classes = group.subgroup_conjugacy_classes(&subgroups);
    let index_of: std::collections::BTreeMap<Vec<Permutation>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.elements().to_vec(), i))
        .collect();
    let mut class_of = vec![0usize; subgroups.len()];
    for (c, class) in classes.iter().enumerate() {
        for &i in class {
            class_of[i] = c;
        }
    }
    let mut tau_permutes_classes = true;
    let mut tau_class_image = vec![usize::MAX; classes.len()];
    for (c, class) in classes.iter().enumerate() {
        let mut targets = BTreeSet::new();
        for &i in class {
            let image = fd.tau_image_of_subgroup(&subgroups[i])?;
            let j = *index_of
                .get(image.elements())
                .expect("involution image of a subgroup is a subgroup");
            targets.insert(class_of[j]);
        }
        if targets.len() == 1 {
            tau_class_image[c] = *targets.iter().next().expect("nonempty");
        } else {
            tau_permutes_classes = false;
        }
    }
    let mut tau_invariant_classes = 0usize;
    let mut tau_swapped_pairs = 0usize;
    let mut rows = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        let invariant = tau_class_image[c] == c;
        if invariant {
            tau_invariant_classes += 1;
        } else if tau_class_image[c] > c {
            tau_swapped_pairs += 1;
        }
        rows.push(CensusClassRow {
            order: subgroups[class[0]].order(),
            class_size: class.len(),
            tau_invariant: invariant,
        });
    }
    // involutivity: applying the class map twice must return home
    for (c, &image) in tau_class_image.iter().enumerate() {
        if image == usize::MAX || tau_class_image[image] != c {
            tau_permutes_classes = false;
        }
    }
    Ok(SubgroupCensus {
        subgroup_count: subgroups.len(),
        class_count: classes.len(),
        tau_invariant_classes,
        tau_swapped_pairs,
        tau_permutes_classes,
        rows,
    })
}

/// The explicit genus-3 example: two branch points in each involution class
/// doubled, eight branch points in all.
pub fn g3_reference_datum() -> MonodromyDatum {
    let entries = [
        "(1 2)(3 4)(5 6)",
        "(1 2)(3 4)(5 6)",
        "(1 4)(2 5)(3 6)",
        "(1 4)(2 5)(3 6)",
        "(1 2)(3 6)(4 5)",
        "(1 2)(3 6)(4 5)",
        "(1 4)(2 3)(5 6)",
        "(1 4)(2 3)(5 6)",
    ];
    let monodromy: Vec<Permutation> = entries
        .iter()
        .map(|s| Permutation::parse_cycles(s, 6).expect("fixed entries parse"))
        .collect();
    let labels: Vec<String> = (1..=8).map(|k| format!("a{k}")).collect();
    MonodromyDatum::new(6, labels, monodromy).expect("shape is consistent")
}
