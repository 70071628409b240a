//! Exact rational character theory of the order-36 two-factor group, the
//! 2-dimensional coset-difference representations attached to the trigonal
//! subgroups, invariant scalar products, group-algebra projectors, their
//! descent to the 9-point fiber module, and the resulting correspondence
//! identity.
//!
//! Vectors are rows and representations act on the right, so
//! `matrix(g * h) = matrix(g) * matrix(h)` under the crate-wide left-to-right
//! composition.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::corresp;
use crate::covers::{
    self, distinguished_subgroups, pair_group_action, require_type_iii, FactorDecomposition,
    MonodromyDatum,
};
use crate::group::{GroupAction, PermGroup};
use crate::perm::Permutation;
use crate::ratmat::{normalize_vector, q, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("group mismatch between operands")]
    GroupMismatch,
    #[error("representation is not multiplicative at element pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("form is not invariant under the representation")]
    NotInvariant,
    #[error("form is not symmetric positive-definite")]
    NotPositiveDefinite,
    #[error("zero vector supplied where a nonzero vector is required")]
    ZeroVector,
    #[error("class function is not a character: multiplicity of {0} is {1}")]
    NotACharacter(String, String),
    #[error("subgroup does not have index 3")]
    WrongIndex,
    #[error("listed cosets do not partition the group")]
    BadCosetOrder,
    #[error("coefficient function does not descend: columns disagree at fiber label {0}")]
    NotDescendable(usize),
    #[error("subgroup is not the fiber stabilizer of the dictionary")]
    WrongStabilizer,
    #[error("cover error: {0}")]
    Cover(String),
}

impl From<covers::CoverError> for RepError {
    fn from(e: covers::CoverError) -> Self {
        RepError::Cover(e.to_string())
    }
}

/// Conjugacy-class bookkeeping for one enumerated group.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ClassData {
    pub fn build(group: &PermGroup) -> Self {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0usize; group.order()];
        for (c, class) in classes.iter().enumerate() {
            for &e in class {
                class_of[e] = c;
            }
        }
        ClassData { classes, class_of }
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// A rational class function given by one value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn inner_product(
        &self,
        other: &ClassFunction,
        data: &ClassData,
        group_order: usize,
    ) -> BigRational {
        let mut sum = BigRational::zero();
        for (c, class) in data.classes.iter().enumerate() {
            sum += q(class.len() as i64) * &self.values[c] * &other.values[c];
        }
        sum / q(group_order as i64)
    }

    pub fn value_on_element(&self, data: &ClassData, e: usize) -> &BigRational {
        &self.values[data.class_of[e]]
    }
}

/// The three rational irreducibles of the symmetric group on 3 symbols,
/// identified by their values on the order-1/2/3 classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum S3Irrep {
    Trivial,
    Sign,
    Standard,
}

impl S3Irrep {
    pub const ALL: [S3Irrep; 3] = [S3Irrep::Trivial, S3Irrep::Sign, S3Irrep::Standard];

    pub fn dim(self) -> usize {
        match self {
            S3Irrep::Standard => 2,
            _ => 1,
        }
    }

    /// Character value on an element of the given multiplicative order.
    fn value_on_order(self, order: usize) -> i64 {
        match (self, order) {
            (S3Irrep::Trivial, _) => 1,
            (S3Irrep::Sign, 1) => 1,
            (S3Irrep::Sign, 2) => -1,
            (S3Irrep::Sign, 3) => 1,
            (S3Irrep::Standard, 1) => 2,
            (S3Irrep::Standard, 2) => 0,
            (S3Irrep::Standard, 3) => -1,
            _ => unreachable!("orders in the symmetric group on 3 symbols are 1, 2, 3"),
        }
    }
}

impl std::fmt::Display for S3Irrep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            S3Irrep::Trivial => write!(f, "1"),
            S3Irrep::Sign => write!(f, "U"),
            S3Irrep::Standard => write!(f, "V"),
        }
    }
}

/// Tensor label of an irreducible of the two-factor group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorLabel(pub S3Irrep, pub S3Irrep);

impl TensorLabel {
    pub fn dim(self) -> usize {
        self.0.dim() * self.1.dim()
    }
}

impl std::fmt::Display for TensorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

/// The nine irreducible rational characters of the order-36 group, built from
/// the fixed standard table through the factor coordinates.
pub struct CharacterTable {
    pub class_data: ClassData,
    pub irreducibles: Vec<(TensorLabel, ClassFunction)>,
    group_order: usize,
}

impl CharacterTable {
    pub fn build(fd: &FactorDecomposition) -> Result<Self, RepError> {
        let group = &fd.group;
        let class_data = ClassData::build(group);
        let mut irreducibles = Vec::new();
        for a in S3Irrep::ALL {
            for b in S3Irrep::ALL {
                let values: Vec<BigRational> = class_data
                    .classes
                    .iter()
                    .map(|class| {
                        let e = class[0];
                        let (x, y) = fd
                            .coordinates(&group.elements()[e])
                            .expect("element of the decomposed group");
                        q(a.value_on_order(x.order()) * b.value_on_order(y.order()))
                    })
                    .collect();
                irreducibles.push((TensorLabel(a, b), ClassFunction { values }));
            }
        }
        Ok(CharacterTable {
            class_data,
            irreducibles,
            group_order: group.order(),
        })
    }

    /// Multiplicity map of a character; errors on non-integral or negative
    /// inner products, which signal a non-character input.
    pub fn decompose(
        &self,
        chi: &ClassFunction,
    ) -> Result<BTreeMap<TensorLabel, usize>, RepError> {
        let mut out = BTreeMap::new();
        for (label, irr) in &self.irreducibles {
            let m = chi.inner_product(irr, &self.class_data, self.group_order);
            if !m.is_integer() || m.is_negative() {
                return Err(RepError::NotACharacter(label.to_string(), m.to_string()));
            }
            let mult = m.to_integer();
            if !mult.is_zero() {
                use num::ToPrimitive;
                out.insert(*label, mult.to_usize().expect("small multiplicity"));
            }
        }
        Ok(out)
    }
}

/// Fixed-point character of a permutation action.
pub fn permutation_character(act: &GroupAction, data: &ClassData) -> ClassFunction {
    let values: Vec<BigRational> = data
        .classes
        .iter()
        .map(|class| {
            let p = act.perm_of(class[0]);
            let fixed = (0..act.domain_size()).filter(|&x| p.apply(x) == x).count();
            q(fixed as i64)
        })
        .collect();
    ClassFunction { values }
}

/// A matrix representation over the rationals, one matrix per group element,
/// acting on row vectors.
#[derive(Clone)]
pub struct MatrixRep {
    pub group: PermGroup,
    pub dim: usize,
    matrices: Vec<QMatrix>,
}

impl MatrixRep {
    pub fn new(group: PermGroup, dim: usize, matrices: Vec<QMatrix>) -> Result<Self, RepError> {
        let rep = MatrixRep {
            group,
            dim,
            matrices,
        };
        rep.verify_multiplicative()?;
        Ok(rep)
    }

    fn verify_multiplicative(&self) -> Result<(), RepError> {
        let n = self.group.order();
        let id = self
            .group
            .element_index(&Permutation::identity(self.group.degree()))
            .expect("identity is listed");
        if self.matrices[id] != QMatrix::identity(self.dim) {
            return Err(RepError::NotMultiplicative(id, id));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.product_index(a, b);
                if self.matrices[a].mul(&self.matrices[b]) != self.matrices[ab] {
                    return Err(RepError::NotMultiplicative(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self, e: usize) -> &QMatrix {
        &self.matrices[e]
    }

    pub fn matrix_of(&self, g: &Permutation) -> Option<&QMatrix> {
        self.group.element_index(g).map(|e| &self.matrices[e])
    }

    /// Trace character as a class function.
    pub fn character(&self, data: &ClassData) -> ClassFunction {
        let values: Vec<BigRational> = data
            .classes
            .iter()
            .map(|class| {
                let m = &self.matrices[class[0]];
                (0..self.dim).fold(BigRational::zero(), |acc, i| acc + m.at(i, i))
            })
            .collect();
        ClassFunction { values }
    }
}

/// Coordinates of the difference `v_a - v_b` of index-3 coset basis vectors
/// in the difference basis `e1 = v1 - v2`, `e2 = v2 - v3`.
fn difference_coords(a: usize, b: usize) -> (i64, i64) {
    // against v3: v1 = e1 + e2, v2 = e2, v3 = 0
    let of = |x: usize| -> (i64, i64) {
        match x {
            0 => (1, 1),
            1 => (0, 1),
            2 => (0, 0),
            _ => unreachable!(),
        }
    };
    let (ax, ay) = of(a);
    let (bx, by) = of(b);
    (ax - bx, ay - by)
}

/// The 2-dimensional representation on differences of the three cosets of an
/// index-3 subgroup, with coset order (subgroup, subgroup-coset of `second`,
/// subgroup-coset of `third`).
pub fn coset_difference_rep(
    group: &PermGroup,
    subgroup: &PermGroup,
    second: &Permutation,
    third: &Permutation,
) -> Result<MatrixRep, RepError> {
    if group.order() != 3 * subgroup.order() || !subgroup.is_subgroup_of(group) {
        return Err(RepError::WrongIndex);
    }
    let reps = [
        Permutation::identity(group.degree()),
        second.clone(),
        third.clone(),
    ];
    // g lies in the coset {s * r} iff g * r^{-1} is in the subgroup
    let coset_id = |g: &Permutation| -> Result<usize, RepError> {
        for (k, r) in reps.iter().enumerate() {
            let witness = g.compose(&r.inverse()).expect("equal degrees");
            if subgroup.contains(&witness) {
                return Ok(k);
            }
        }
        Err(RepError::BadCosetOrder)
    };
    if coset_id(second)? != 1 || coset_id(third)? != 2 {
        return Err(RepError::BadCosetOrder);
    }
    let mut matrices = Vec::with_capacity(group.order());
    for x in group.elements() {
        // the coset of r maps to the coset of r * x
        let mut pi = [0usize; 3];
        for (k, r) in reps.iter().enumerate() {
            pi[k] = coset_id(&r.compose(x).expect("equal degrees"))?;
        }
        let (r1x, r1y) = difference_coords(pi[0], pi[1]);
        let (r2x, r2y) = difference_coords(pi[1], pi[2]);
        matrices.push(QMatrix::from_int_rows(&[vec![r1x, r1y], vec![r2x, r2y]]));
    }
    MatrixRep::new(group.clone(), 2, matrices)
}

/// A symmetric positive-definite rational form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    pub gram: QMatrix,
}

impl BilinearForm {
    pub fn new(gram: QMatrix) -> Result<Self, RepError> {
        let n = gram.rows();
        if gram.cols() != n || gram != gram.transpose() {
            return Err(RepError::NotPositiveDefinite);
        }
        for k in 1..=n {
            let minor = QMatrix::from_fn(k, k, |r, c| gram.at(r, c).clone());
            if !determinant(&minor).is_positive() {
                return Err(RepError::NotPositiveDefinite);
            }
        }
        Ok(BilinearForm { gram })
    }

    pub fn pair(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let n = self.gram.rows();
        let mut sum = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                sum += &u[i] * self.gram.at(i, j) * &v[j];
            }
        }
        sum
    }

    /// Checks `M G M^T = G` for every generator matrix of the representation.
    pub fn is_invariant_for(&self, rep: &MatrixRep) -> bool {
        rep.group.generators().iter().all(|g| {
            let m = rep.matrix_of(g).expect("generator is listed");
            m.mul(&self.gram).mul(&m.transpose()) == self.gram
        })
    }
}

fn determinant(m: &QMatrix) -> BigRational {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a.at(r, col).is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            for c in 0..n {
                let tmp = a.at(col, c).clone();
                *a.at_mut(col, c) = a.at(pivot, c).clone();
                *a.at_mut(pivot, c) = tmp;
            }
            det = -det;
        }
        det *= a.at(col, col).clone();
        let inv = a.at(col, col).recip();
        for r in (col + 1)..n {
            if a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col) * &inv;
            for c in col..n {
                let sub = &factor * a.at(col, c);
                *a.at_mut(r, c) = a.at(r, c) - sub;
            }
        }
    }
    det
}

/// Averages the standard form over the whole group and rescales to a
/// primitive integral Gram matrix.
pub fn averaged_invariant_form(rep: &MatrixRep) -> Result<BilinearForm, RepError> {
    let mut gram = QMatrix::zeros(rep.dim, rep.dim);
    for e in 0..rep.group.order() {
        let m = rep.matrix(e);
        gram = gram.add(&m.mul(&m.transpose()));
    }
    let flat: Vec<BigRational> = (0..rep.dim * rep.dim)
        .map(|k| gram.at(k / rep.dim, k % rep.dim).clone())
        .collect();
    let normalized = normalize_vector(&flat);
    let gram = QMatrix::from_fn(rep.dim, rep.dim, |r, c| normalized[r * rep.dim + c].clone());
    let form = BilinearForm::new(gram)?;
    if !form.is_invariant_for(rep) {
        return Err(RepError::NotInvariant);
    }
    Ok(form)
}

/// Basis of the subspace of row vectors fixed by every element of the listed
/// subgroup, in primitive integer form.
pub fn fixed_vectors(
    rep: &MatrixRep,
    subgroup: &PermGroup,
) -> Result<Vec<Vec<BigRational>>, RepError> {
    if !subgroup.is_subgroup_of(&rep.group) {
        return Err(RepError::GroupMismatch);
    }
    // v M = v  <=>  (M^T - I) v^T = 0, stacked over the subgroup elements
    let k = subgroup.order();
    let stacked = QMatrix::from_fn(k * rep.dim, rep.dim, |r, c| {
        let s = &subgroup.elements()[r / rep.dim];
        let m = rep.matrix_of(s).expect("subgroup element is listed");
        let row = r % rep.dim;
        m.at(c, row)
            - if row == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
    });
    Ok(stacked.nullspace())
}

/// An element of the rational group algebra, stored as a sparse coefficient
/// map over element indices of a fixed enumerated group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    pub coeffs: BTreeMap<usize, BigRational>,
}

impl GroupAlgebraElement {
    pub fn delta(e: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, BigRational::one());
        GroupAlgebraElement { coeffs }
    }

    /// Indicator of a subgroup: coefficient 1 on each listed element.
    pub fn indicator(group: &PermGroup, subgroup: &PermGroup) -> Result<Self, RepError> {
        if !subgroup.is_subgroup_of(group) {
            return Err(RepError::GroupMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for s in subgroup.elements() {
            coeffs.insert(
                group.element_index(s).expect("subgroup element is listed"),
                BigRational::one(),
            );
        }
        Ok(GroupAlgebraElement { coeffs })
    }

    pub fn coefficient(&self, e: usize) -> BigRational {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut coeffs = self.coeffs.clone();
        for (&e, v) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert_with(BigRational::zero);
            *entry += v;
        }
        coeffs.retain(|_, v| !v.is_zero());
        GroupAlgebraElement { coeffs }
    }

    pub fn scale(&self, s: &BigRational) -> GroupAlgebraElement {
        if s.is_zero() {
            return GroupAlgebraElement::default();
        }
        GroupAlgebraElement {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * s)).collect(),
        }
    }

    /// Constancy of the coefficient function on the blocks `{h*g : h in S}`.
    pub fn constant_on_left_translates(&self, group: &PermGroup, subgroup: &PermGroup) -> bool {
        self.block_constant(group, subgroup, true)
    }

    /// Constancy on the blocks `{g*h : h in S}`.
    pub fn constant_on_right_translates(&self, group: &PermGroup, subgroup: &PermGroup) -> bool {
        self.block_constant(group, subgroup, false)
    }

    fn block_constant(&self, group: &PermGroup, subgroup: &PermGroup, left: bool) -> bool {
        for g in 0..group.order() {
            let cg = self.coefficient(g);
            for s in subgroup.elements() {
                let si = group.element_index(s).expect("subgroup element is listed");
                let translated = if left {
                    group.product_index(si, g)
                } else {
                    group.product_index(g, si)
                };
                if self.coefficient(translated) != cg {
                    return false;
                }
            }
        }
        true
    }

    /// Sorted (cycle string, coefficient) pairs for report printing.
    pub fn display_pairs(&self, group: &PermGroup) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .map(|(&e, v)| (group.elements()[e].to_string(), v.to_string()))
            .collect()
    }
}

/// Convolution under the left-to-right group product:
/// `(a * b)(g) = sum over x*y = g of a(x) b(y)`.
pub fn convolve(
    group: &PermGroup,
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
) -> GroupAlgebraElement {
    let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (&x, ax) in &a.coeffs {
        for (&y, by) in &b.coeffs {
            let g = group.product_index(x, y);
            let entry = coeffs.entry(g).or_insert_with(BigRational::zero);
            *entry += ax * by;
        }
    }
    coeffs.retain(|_, v| !v.is_zero());
    GroupAlgebraElement { coeffs }
}

/// Image of a group-algebra element in a permutation action, as an exact
/// matrix: the coefficient-weighted sum of permutation matrices
/// `P[i][pi(i)] = 1`.
pub fn represent(
    group: &PermGroup,
    a: &GroupAlgebraElement,
    act: &GroupAction,
) -> Result<QMatrix, RepError> {
    if !act.group().same_elements(group) {
        return Err(RepError::GroupMismatch);
    }
    let n = act.domain_size();
    let mut out = QMatrix::zeros(n, n);
    for (&e, v) in &a.coeffs {
        let p = act.perm_of(e);
        for i in 0..n {
            let j = p.apply(i);
            *out.at_mut(i, j) = out.at(i, j) + v;
        }
    }
    Ok(out)
}

/// The isotypic projector attached to a nonzero vector of an irreducible
/// representation with invariant form: the coefficient of g is
/// `dim * (w, w g) / (|G| * (w, w))`.
pub fn projector(
    w: &[BigRational],
    rep: &MatrixRep,
    form: &BilinearForm,
) -> Result<GroupAlgebraElement, RepError> {
    if w.iter().all(|x| x.is_zero()) {
        return Err(RepError::ZeroVector);
    }
    if !form.is_invariant_for(rep) {
        return Err(RepError::NotInvariant);
    }
    let norm = form.pair(w, w);
    let scale = q(rep.dim as i64) / (q(rep.group.order() as i64) * norm);
    let mut coeffs = BTreeMap::new();
    for e in 0..rep.group.order() {
        let gw = rep.matrix(e).apply_row(w);
        let c = &scale * form.pair(w, &gw);
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
    }
    Ok(GroupAlgebraElement { coeffs })
}

/// Identification of the 9 fiber labels with the blocks `{h*g}` of the fiber
/// stabilizer, derived from the pair action: the block of `g` carries the
/// label that the grid permutation of `g` gives to the base point.
pub struct FiberDictionary {
    /// fiber label of each group element's block
    pub label_of: Vec<usize>,
    /// element indices in each block, sorted
    pub block_of: Vec<Vec<usize>>,
}

impl FiberDictionary {
    pub fn build(group: &PermGroup) -> Result<Self, RepError> {
        let act = pair_group_action(group)?;
        if act.domain_size() != 9 || group.order() % 9 != 0 {
            return Err(RepError::Cover("expected the order-36 grid action".into()));
        }
        let label_of: Vec<usize> = (0..group.order())
            .map(|e| act.perm_of(e).apply(0))
            .collect();
        let mut block_of = vec![Vec::new(); 9];
        for (e, &l) in label_of.iter().enumerate() {
            block_of[l].push(e);
        }
        if block_of.iter().any(|b| b.len() != group.order() / 9) {
            return Err(RepError::Cover("grid action is not transitive".into()));
        }
        Ok(FiberDictionary { label_of, block_of })
    }

    pub fn stabilizer_indices(&self) -> &[usize] {
        &self.block_of[0]
    }
}

/// Descends a group-algebra element with block-constant coefficients to the
/// free rational module on the 9 fiber labels.
///
/// The matrix column of label x is the stabilizer-averaged divisor
/// `(1/|H|) * sum over g of a(g) * label(g^{-1} * lift(x))`; independence of
/// the choice of lift is verified for every label and every lift in the
/// block, never assumed, and a coefficient function failing it is rejected.
pub fn descend(
    group: &PermGroup,
    a: &GroupAlgebraElement,
    subgroup: &PermGroup,
    dict: &FiberDictionary,
) -> Result<QMatrix, RepError> {
    let mut stab: Vec<usize> = subgroup
        .elements()
        .iter()
        .map(|s| group.element_index(s).expect("subgroup element is listed"))
        .collect();
    stab.sort_unstable();
    if stab != dict.stabilizer_indices() {
        return Err(RepError::WrongStabilizer);
    }
    let h = subgroup.order();
    let mut out = QMatrix::zeros(9, 9);
    for x in 0..9 {
        let mut column: Option<Vec<BigRational>> = None;
        for &lift in &dict.block_of[x] {
            let mut col = vec![BigRational::zero(); 9];
            for (&e, v) in &a.coeffs {
                let target = dict.label_of[group.product_index(group.inverse_index(e), lift)];
                col[target] += v;
            }
            match &column {
                None => column = Some(col),
                Some(existing) => {
                    if *existing != col {
                        return Err(RepError::NotDescendable(x));
                    }
                }
            }
        }
        let col = column.expect("blocks are nonempty");
        for r in 0..9 {
            *out.at_mut(r, x) = &col[r] / q(h as i64);
        }
    }
    Ok(out)
}

/// Everything the descended-projector identity check records.
#[derive(Debug, Clone)]
pub struct DescentIdentityReport {
    pub dictionary_agrees: bool,
    pub fixed_space_one_dimensional: bool,
    pub fixed_vector_is_two_one: bool,
    pub constant_on_left_translates: bool,
    pub constant_on_right_translates: bool,
    pub identity_holds: bool,
}

impl DescentIdentityReport {
    pub fn holds(&self) -> bool {
        self.dictionary_agrees
            && self.fixed_space_one_dimensional
            && self.fixed_vector_is_two_one
            && self.constant_on_left_translates
            && self.constant_on_right_translates
            && self.identity_holds
    }
}

/// The eight translate images pinning the dictionary: each listed element
/// must carry the base label P11 to the listed grid position (0-based).
const DICTIONARY_CHECKS: [(&str, usize, usize); 8] = [
    ("(1 3 5)", 1, 0),
    ("(1 5 3)", 2, 0),
    ("(2 4 6)", 0, 1),
    ("(2 6 4)", 0, 2),
    ("(1 3 5)(2 4 6)", 1, 1),
    ("(1 3 5)(2 6 4)", 1, 2),
    ("(1 5 3)(2 4 6)", 2, 1),
    ("(1 5 3)(2 6 4)", 2, 2),
];

/// Builds the two trigonal projectors from a type-III datum, descends their
/// sum to the fiber module and verifies the exact matrix identity
/// `36 * descent = 3 (I - D) + J` against the agree-in-one-coordinate
/// correspondence.
pub fn projector_descent_identity(d: &MonodromyDatum) -> Result<DescentIdentityReport, RepError> {
    let group = require_type_iii(d)?;
    let fd = FactorDecomposition::build(&group)?;
    let subs = distinguished_subgroups(&fd)?;
    let h = &subs.pair_stabilizer;

    let c246 = Permutation::parse_cycles("(2 4 6)", 6).expect("parses");
    let c135 = Permutation::parse_cycles("(1 3 5)", 6).expect("parses");
    let c153 = Permutation::parse_cycles("(1 5 3)", 6).expect("parses");
    let rep1 = coset_difference_rep(&group, &subs.trigonal_one, &c246, &c135)?;
    // the sheet 3-cycles (1 3 5) and (2 4 6) fall into one coset of the
    // second trigonal subgroup, so the mirrored side uses the two sheet
    // 3-cycles on the x-side instead; the projector only depends on the
    // fixed line, not on this choice
    let rep2 = coset_difference_rep(&group, &subs.trigonal_two, &c135, &c153)?;

    let form1 = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]]))?;
    if !form1.is_invariant_for(&rep1) {
        return Err(RepError::NotInvariant);
    }
    let form2 = averaged_invariant_form(&rep2)?;

    let fixed1 = fixed_vectors(&rep1, h)?;
    let fixed2 = fixed_vectors(&rep2, h)?;
    let fixed_space_one_dimensional = fixed1.len() == 1 && fixed2.len() == 1;
    if !fixed_space_one_dimensional {
        return Err(RepError::Cover("fixed spaces are not lines".into()));
    }
    let two_one = vec![q(2), q(1)];
    let fixed_vector_is_two_one = fixed1[0] == two_one;

    let p1 = projector(&two_one, &rep1, &form1)?;
    let p2 = projector(&fixed2[0], &rep2, &form2)?;
    let sum = p1.add(&p2);

    let constant_on_left_translates = sum.constant_on_left_translates(&group, h);
    let constant_on_right_translates = sum.constant_on_right_translates(&group, h);

    let dict = FiberDictionary::build(&group)?;
    let mut dictionary_agrees = true;
    for (text, i, j) in DICTIONARY_CHECKS {
        let g = Permutation::parse_cycles(text, 6).expect("parses");
        let e = group.element_index(&g).expect("translate is in the group");
        if dict.label_of[e] != 3 * i + j {
            dictionary_agrees = false;
        }
    }

    let descended = descend(&group, &sum, h, &dict)?;
    let dmat = corresp::build_d(3).expect("grid of size 3");
    let lhs = descended.scale(&q(36));
    let dq = QMatrix::from_int_rows(dmat.entries());
    let ones = QMatrix::from_fn(9, 9, |_, _| q(1));
    let rhs = QMatrix::identity(9).sub(&dq).scale(&q(3)).add(&ones);
    let identity_holds = lhs == rhs;

    Ok(DescentIdentityReport {
        dictionary_agrees,
        fixed_space_one_dimensional,
        fixed_vector_is_two_one,
        constant_on_left_translates,
        constant_on_right_translates,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{canonical_group, g3_reference_datum};
    use crate::ratmat::qr;

    fn setup() -> (PermGroup, FactorDecomposition) {
        let g = canonical_group();
        let fd = FactorDecomposition::build(&g).unwrap();
        (g, fd)
    }

    fn trigonal_rep_one(g: &PermGroup, fd: &FactorDecomposition) -> MatrixRep {
        let subs = distinguished_subgroups(fd).unwrap();
        coset_difference_rep(
            g,
            &subs.trigonal_one,
            &Permutation::parse_cycles("(2 4 6)", 6).unwrap(),
            &Permutation::parse_cycles("(1 3 5)", 6).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn character_table_is_orthonormal_and_burnside() {
        let (g, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        assert_eq!(table.irreducibles.len(), 9);
        let dim_sq: usize = table
            .irreducibles
            .iter()
            .map(|(l, _)| l.dim() * l.dim())
            .sum();
        assert_eq!(dim_sq, g.order());
        for (i, (_, a)) in table.irreducibles.iter().enumerate() {
            for (j, (_, b)) in table.irreducibles.iter().enumerate() {
                let ip = a.inner_product(b, &table.class_data, g.order());
                assert_eq!(ip, q(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn tensor_label_dims() {
        assert_eq!(TensorLabel(S3Irrep::Standard, S3Irrep::Standard).dim(), 4);
        assert_eq!(TensorLabel(S3Irrep::Standard, S3Irrep::Trivial).dim(), 2);
    }

    #[test]
    fn trigonal_coset_characters_decompose_as_expected() {
        let (g, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        let subs = distinguished_subgroups(&fd).unwrap();
        let act1 = g.coset_action(&subs.trigonal_one).unwrap();
        let dec1 = table
            .decompose(&permutation_character(&act1, &table.class_data))
            .unwrap();
        let expected1: BTreeMap<TensorLabel, usize> = [
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Standard, S3Irrep::Trivial), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(dec1, expected1);
        let act2 = g.coset_action(&subs.trigonal_two).unwrap();
        let dec2 = table
            .decompose(&permutation_character(&act2, &table.class_data))
            .unwrap();
        let expected2: BTreeMap<TensorLabel, usize> = [
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Standard), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(dec2, expected2);
    }

    #[test]
    fn nine_point_character_decomposition() {
        let (g, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        let subs = distinguished_subgroups(&fd).unwrap();
        let act = g.coset_action(&subs.pair_stabilizer).unwrap();
        let dec = table
            .decompose(&permutation_character(&act, &table.class_data))
            .unwrap();
        let expected: BTreeMap<TensorLabel, usize> = [
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Standard, S3Irrep::Trivial), 1),
            (TensorLabel(S3Irrep::Trivial, S3Irrep::Standard), 1),
            (TensorLabel(S3Irrep::Standard, S3Irrep::Standard), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(dec, expected);
    }

    #[test]
    fn trivial_multiplicity_is_one_for_every_coset_action() {
        let (g, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        for sub in g.all_subgroups().unwrap() {
            let act = g.coset_action(&sub).unwrap();
            let dec = table
                .decompose(&permutation_character(&act, &table.class_data))
                .unwrap();
            assert_eq!(
                dec.get(&TensorLabel(S3Irrep::Trivial, S3Irrep::Trivial)),
                Some(&1)
            );
        }
    }

    #[test]
    fn non_character_is_rejected() {
        let (_, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        let bogus = ClassFunction {
            values: (0..table.class_data.count())
                .map(|k| qr(1, 2 + k as i64))
                .collect(),
        };
        assert!(table.decompose(&bogus).is_err());
    }

    #[test]
    fn coset_difference_rep_matches_the_fixed_example() {
        let (g, fd) = setup();
        let rep = trigonal_rep_one(&g, &fd);
        // the pair-stabilizer generator acts by e1 -> e1 + e2, e2 -> -e2
        let w = Permutation::parse_cycles("(3 5)(4 6)", 6).unwrap();
        assert_eq!(
            *rep.matrix_of(&w).unwrap(),
            QMatrix::from_int_rows(&[vec![1, 1], vec![0, -1]])
        );
        assert_eq!(
            *rep.matrix_of(&Permutation::identity(6)).unwrap(),
            QMatrix::identity(2)
        );
    }

    #[test]
    fn coset_difference_character_is_standard_tensor_trivial() {
        let (g, fd) = setup();
        let table = CharacterTable::build(&fd).unwrap();
        let rep = trigonal_rep_one(&g, &fd);
        let chi = rep.character(&table.class_data);
        let expected = table
            .irreducibles
            .iter()
            .find(|(l, _)| *l == TensorLabel(S3Irrep::Standard, S3Irrep::Trivial))
            .map(|(_, f)| f.clone())
            .unwrap();
        assert_eq!(chi, expected);
    }

    #[test]
    fn gram_matrix_is_invariant_and_averaging_recovers_it() {
        let (g, fd) = setup();
        let rep = trigonal_rep_one(&g, &fd);
        let form = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        assert!(form.is_invariant_for(&rep));
        let averaged = averaged_invariant_form(&rep).unwrap();
        assert_eq!(
            averaged.gram,
            QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])
        );
    }

    #[test]
    fn identity_form_is_invariant_for_the_trivial_rep() {
        let (g, _) = setup();
        let matrices = vec![QMatrix::identity(1); g.order()];
        let rep = MatrixRep::new(g.clone(), 1, matrices).unwrap();
        let form = BilinearForm::new(QMatrix::identity(1)).unwrap();
        assert!(form.is_invariant_for(&rep));
    }

    #[test]
    fn invariant_form_solution_space_is_a_line() {
        // oracle: solve the linear invariance system for a symmetric unknown
        // (a, b, d) with M [[a,b],[b,d]] M^T = [[a,b],[b,d]] per generator
        let (g, fd) = setup();
        let rep = trigonal_rep_one(&g, &fd);
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for gen in g.generators() {
            let m = rep.matrix_of(gen).unwrap();
            // entries of M S M^T - S as linear forms in (a, b, d)
            let e = |r: usize, c: usize| m.at(r, c).clone();
            for (i, j) in [(0, 0), (0, 1), (1, 1)] {
                let a_coef = &e(i, 0) * &e(j, 0) - q(i64::from(i == 0 && j == 0));
                let b_coef = &e(i, 0) * &e(j, 1) + &e(i, 1) * &e(j, 0)
                    - q(i64::from(i != j));
                let d_coef = &e(i, 1) * &e(j, 1) - q(i64::from(i == 1 && j == 1));
                rows.push(vec![a_coef, b_coef, d_coef]);
            }
        }
        let system = QMatrix::from_fn(rows.len(), 3, |r, c| rows[r][c].clone());
        let solutions = system.nullspace();
        assert_eq!(solutions.len(), 1);
        assert_eq!(solutions[0], vec![q(2), q(-1), q(2)]);
    }

    #[test]
    fn fixed_space_is_spanned_by_two_one() {
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let rep = trigonal_rep_one(&g, &fd);
        let fixed = fixed_vectors(&rep, &subs.pair_stabilizer).unwrap();
        assert_eq!(fixed, vec![vec![q(2), q(1)]]);
        let all = fixed_vectors(&rep, &PermGroup::trivial(6)).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn mirrored_rep_has_one_dimensional_fixed_space() {
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let rep2 = coset_difference_rep(
            &g,
            &subs.trigonal_two,
            &Permutation::parse_cycles("(1 3 5)", 6).unwrap(),
            &Permutation::parse_cycles("(1 5 3)", 6).unwrap(),
        )
        .unwrap();
        let fixed = fixed_vectors(&rep2, &subs.pair_stabilizer).unwrap();
        assert_eq!(fixed.len(), 1);
    }

    #[test]
    fn projector_coefficients_match_the_fixed_values() {
        let (g, fd) = setup();
        let rep = trigonal_rep_one(&g, &fd);
        let form = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let w = vec![q(2), q(1)];
        assert_eq!(form.pair(&w, &w), q(6));
        let p = projector(&w, &rep, &form).unwrap();
        let target = Permutation::parse_cycles("(2 4)(3 5)", 6).unwrap();
        let e = g.element_index(&target).expect("element of the group");
        assert_eq!(p.coefficient(e), qr(-1, 36));
        let id = g.element_index(&Permutation::identity(6)).unwrap();
        assert_eq!(p.coefficient(id), qr(1, 18));
    }

    #[test]
    fn projectors_are_idempotent_with_rank_two() {
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let c246 = Permutation::parse_cycles("(2 4 6)", 6).unwrap();
        let c135 = Permutation::parse_cycles("(1 3 5)", 6).unwrap();
        let c153 = Permutation::parse_cycles("(1 5 3)", 6).unwrap();
        let rep1 = coset_difference_rep(&g, &subs.trigonal_one, &c246, &c135).unwrap();
        let rep2 = coset_difference_rep(&g, &subs.trigonal_two, &c135, &c153).unwrap();
        let form1 = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let form2 = averaged_invariant_form(&rep2).unwrap();
        let h = &subs.pair_stabilizer;
        let w1 = fixed_vectors(&rep1, h).unwrap().remove(0);
        let w2 = fixed_vectors(&rep2, h).unwrap().remove(0);
        let reg = g.regular_action();
        for (rep, form, w) in [(&rep1, &form1, &w1), (&rep2, &form2, &w2)] {
            let p = projector(w, rep, form).unwrap();
            assert_eq!(convolve(&g, &p, &p), p);
            let m = represent(&g, &p, &reg).unwrap();
            assert_eq!(m.rank(), 2);
        }
        // idempotency and rank do not depend on the chosen nonzero vector
        for w in [
            vec![q(1), q(0)],
            vec![q(0), q(1)],
            vec![q(1), q(1)],
            vec![q(3), q(-2)],
        ] {
            let p = projector(&w, &rep1, &form1).unwrap();
            assert_eq!(convolve(&g, &p, &p), p);
            assert_eq!(represent(&g, &p, &reg).unwrap().rank(), 2);
        }
    }

    #[test]
    fn projector_is_scale_invariant() {
        let (g, fd) = setup();
        let rep = trigonal_rep_one(&g, &fd);
        let form = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        assert_eq!(
            projector(&[q(2), q(1)], &rep, &form).unwrap(),
            projector(&[q(-6), q(-3)], &rep, &form).unwrap()
        );
        assert!(matches!(
            projector(&[q(0), q(0)], &rep, &form),
            Err(RepError::ZeroVector)
        ));
    }

    #[test]
    fn delta_at_identity_is_the_convolution_unit() {
        let (g, _) = setup();
        let id = g.element_index(&Permutation::identity(6)).unwrap();
        let unit = GroupAlgebraElement::delta(id);
        let x = GroupAlgebraElement::delta(5).add(&GroupAlgebraElement::delta(17).scale(&q(3)));
        assert_eq!(convolve(&g, &unit, &x), x);
        assert_eq!(convolve(&g, &x, &unit), x);
    }

    #[test]
    fn represent_delta_is_the_permutation_matrix() {
        let (g, _) = setup();
        let reg = g.regular_action();
        let e = 7usize;
        let m = represent(&g, &GroupAlgebraElement::delta(e), &reg).unwrap();
        let p = reg.perm_of(e);
        for i in 0..36 {
            for j in 0..36 {
                assert_eq!(*m.at(i, j), q(i64::from(p.apply(i) == j)));
            }
        }
    }

    #[test]
    fn indicator_of_stabilizer_descends_to_identity() {
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let dict = FiberDictionary::build(&g).unwrap();
        let ind = GroupAlgebraElement::indicator(&g, &subs.pair_stabilizer).unwrap();
        let m = descend(&g, &ind, &subs.pair_stabilizer, &dict).unwrap();
        assert_eq!(m, QMatrix::identity(9));
    }

    #[test]
    fn delta_at_identity_descends_to_scaled_identity() {
        // a lone identity coefficient is accidentally lift-independent and
        // descends to the stabilizer-averaged identity
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let dict = FiberDictionary::build(&g).unwrap();
        let id = g.element_index(&Permutation::identity(6)).unwrap();
        let m = descend(&g, &GroupAlgebraElement::delta(id), &subs.pair_stabilizer, &dict)
            .unwrap();
        assert_eq!(m, QMatrix::identity(9).scale(&qr(1, 4)));
    }

    #[test]
    fn projector_sum_family_coefficients() {
        // the combined projector is constant on the nine stabilizer blocks
        // with values 4/36, -2/36 and 1/36 after scaling by 36
        let d = crate::covers::g3_reference_datum();
        let g = require_type_iii(&d).unwrap();
        let fd = FactorDecomposition::build(&g).unwrap();
        let subs = distinguished_subgroups(&fd).unwrap();
        let c246 = Permutation::parse_cycles("(2 4 6)", 6).unwrap();
        let c135 = Permutation::parse_cycles("(1 3 5)", 6).unwrap();
        let c153 = Permutation::parse_cycles("(1 5 3)", 6).unwrap();
        let rep1 = coset_difference_rep(&g, &subs.trigonal_one, &c246, &c135).unwrap();
        let rep2 = coset_difference_rep(&g, &subs.trigonal_two, &c135, &c153).unwrap();
        let form1 = BilinearForm::new(QMatrix::from_int_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let form2 = averaged_invariant_form(&rep2).unwrap();
        let h = &subs.pair_stabilizer;
        let w1 = fixed_vectors(&rep1, h).unwrap().remove(0);
        let w2 = fixed_vectors(&rep2, h).unwrap().remove(0);
        let sum = projector(&w1, &rep1, &form1)
            .unwrap()
            .add(&projector(&w2, &rep2, &form2).unwrap());
        let family_value = |rep_text: &str| -> BigRational {
            let rep = if rep_text.is_empty() {
                Permutation::identity(6)
            } else {
                Permutation::parse_cycles(rep_text, 6).unwrap()
            };
            let mut values = std::collections::BTreeSet::new();
            for s in h.elements() {
                let translated = s.compose(&rep).unwrap();
                let e = g.element_index(&translated).unwrap();
                values.insert(sum.coefficient(e));
            }
            assert_eq!(values.len(), 1, "coefficient varies over the block");
            values.into_iter().next().unwrap()
        };
        assert_eq!(family_value(""), qr(4, 36));
        for text in ["(1 3 5)", "(1 5 3)", "(2 4 6)", "(2 6 4)"] {
            assert_eq!(family_value(text), qr(-2, 36), "{text}");
        }
        for text in [
            "(1 3 5)(2 4 6)",
            "(1 3 5)(2 6 4)",
            "(1 5 3)(2 4 6)",
            "(1 5 3)(2 6 4)",
        ] {
            assert_eq!(family_value(text), qr(1, 36), "{text}");
        }
    }

    #[test]
    fn perturbed_coefficients_are_rejected_by_descent() {
        let (g, fd) = setup();
        let subs = distinguished_subgroups(&fd).unwrap();
        let dict = FiberDictionary::build(&g).unwrap();
        let mut ind = GroupAlgebraElement::indicator(&g, &subs.pair_stabilizer).unwrap();
        let outside = (0..g.order())
            .find(|e| !ind.coeffs.contains_key(e))
            .unwrap();
        ind.coeffs.insert(outside, q(1));
        assert!(matches!(
            descend(&g, &ind, &subs.pair_stabilizer, &dict),
            Err(RepError::NotDescendable(_))
        ));
    }

    #[test]
    fn descent_identity_holds_on_the_reference_datum() {
        let report = projector_descent_identity(&g3_reference_datum()).unwrap();
        assert!(report.holds(), "{report:?}");
    }
}
