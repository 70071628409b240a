//! Fully enumerated permutation groups: closure, orbits, stabilizers,
//! conjugacy, subgroup enumeration, coset actions and action equivalence.
//!
//! Everything here is sized for desk-scale groups (order a few thousand at
//! most); element lists are kept sorted by image sequence so that all derived
//! data is deterministic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::{PermError, Permutation};

/// Default cap on element enumeration; exceeding it signals misuse.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no generators supplied")]
    NoGenerators,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("closure exceeded the element cap of {0}")]
    ClosureCapExceeded(usize),
    #[error("element set is not closed under composition and inverse")]
    NotClosed,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("group order {0} exceeds the exhaustive enumeration cap of {1}")]
    OrderCapExceeded(usize, usize),
    #[error("target contains a point {0} outside 0..{1}")]
    PointOutOfRange(usize, usize),
    #[error("action is not a homomorphism at element pair ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("action degree {0} differs from the declared domain size {1}")]
    ActionDegreeMismatch(usize, usize),
}

/// A fully enumerated permutation group with a sorted element list.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, <{}>)",
            self.degree,
            self.order(),
            self.generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl PermGroup {
    /// Enumerates the group generated by `generators` with the default cap.
    pub fn generate(generators: &[Permutation]) -> Result<Self, GroupError> {
        Self::generate_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()).into());
            }
        }
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut queue: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(p) = queue.pop() {
            for g in generators {
                let q = p.compose(g)?;
                if set.insert(q.clone()) {
                    if set.len() > cap {
                        return Err(GroupError::ClosureCapExceeded(cap));
                    }
                    queue.push(q);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators: generators.to_vec(),
            elements: set.into_iter().collect(),
        })
    }

    /// Wraps an explicit element list, verifying the subgroup axioms.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, GroupError> {
        let mut sorted = elements;
        sorted.sort();
        sorted.dedup();
        let set: BTreeSet<&Permutation> = sorted.iter().collect();
        if !set.contains(&Permutation::identity(degree)) {
            return Err(GroupError::NotClosed);
        }
        for a in &sorted {
            if a.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, a.degree()).into());
            }
            if !set.contains(&a.inverse()) {
                return Err(GroupError::NotClosed);
            }
            for b in &sorted {
                if !set.contains(&a.compose(b)?) {
                    return Err(GroupError::NotClosed);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators: sorted.clone(),
            elements: sorted,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: vec![Permutation::identity(degree)],
            elements: vec![Permutation::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in sorted image-sequence order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.element_index(p).is_some()
    }

    /// Element-set containment test.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a]
            .compose(&self.elements[b])
            .expect("equal degrees");
        self.element_index(&p).expect("closure")
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.element_index(&self.elements[a].inverse())
            .expect("closure")
    }

    /// Orbit partition of `domain` under the element list, each orbit sorted,
    /// orbits ordered by their minimal point.
    pub fn orbits(&self, domain: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        for &x in domain {
            if x >= self.degree {
                return Err(GroupError::PointOutOfRange(x, self.degree));
            }
        }
        let domain_set: BTreeSet<usize> = domain.iter().copied().collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut orbits = Vec::new();
        for &start in &domain_set {
            if seen.contains(&start) {
                continue;
            }
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            let mut queue = vec![start];
            orbit.insert(start);
            while let Some(x) = queue.pop() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if orbit.insert(y) {
                        queue.push(y);
                    }
                }
            }
            seen.extend(orbit.iter().copied());
            orbits.push(orbit.into_iter().collect());
        }
        Ok(orbits)
    }

    pub fn is_transitive(&self, domain: &[usize]) -> Result<bool, GroupError> {
        Ok(self.orbits(domain)?.len() == 1)
    }

    /// Stabilizer subgroup of a point, a set (setwise) or a tuple (pointwise).
    pub fn stabilizer(&self, target: &StabilizerTarget) -> Result<PermGroup, GroupError> {
        let keeps = |p: &Permutation| -> bool {
            match target {
                StabilizerTarget::Point(x) => p.apply(*x) == *x,
                StabilizerTarget::Set(s) => {
                    let image: BTreeSet<usize> = s.iter().map(|&x| p.apply(x)).collect();
                    image == *s
                }
                StabilizerTarget::Tuple(t) => t.iter().all(|&x| p.apply(x) == x),
            }
        };
        let points: Vec<usize> = match target {
            StabilizerTarget::Point(x) => vec![*x],
            StabilizerTarget::Set(s) => s.iter().copied().collect(),
            StabilizerTarget::Tuple(t) => t.clone(),
        };
        for x in points {
            if x >= self.degree {
                return Err(GroupError::PointOutOfRange(x, self.degree));
            }
        }
        let elements: Vec<Permutation> =
            self.elements.iter().filter(|p| keeps(p)).cloned().collect();
        PermGroup::from_elements(self.degree, elements)
    }

    /// Conjugacy classes as sorted element-index lists, ordered by minimal
    /// member; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for x in &self.elements {
                let c = self.elements[i].conjugate_by(x).expect("equal degrees");
                class.insert(self.element_index(&c).expect("closure"));
            }
            for &j in &class {
                assigned[j] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// The conjugate subgroup `x^{-1} S x` as an element list.
    pub fn conjugate_subgroup(&self, sub: &PermGroup, x: &Permutation) -> PermGroup {
        let elements: Vec<Permutation> = sub
            .elements
            .iter()
            .map(|s| s.conjugate_by(x).expect("equal degrees"))
            .collect();
        PermGroup::from_elements(self.degree, elements).expect("conjugate of a subgroup")
    }

    /// Join `<A union B>` inside this group.
    pub fn join(&self, a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
        let mut gens: Vec<Permutation> = a.elements.clone();
        gens.extend(b.elements.iter().cloned());
        PermGroup::generate_with_cap(&gens, self.order())
    }

    /// Every subgroup exactly once, as element sets.
    ///
    /// Seeds with all cyclic subgroups and closes under pairwise join until
    /// a fixpoint; exhaustive for the orders in scope.
    pub fn all_subgroups(&self) -> Result<Vec<PermGroup>, GroupError> {
        const ORDER_CAP: usize = 100;
        if self.order() > ORDER_CAP {
            return Err(GroupError::OrderCapExceeded(self.order(), ORDER_CAP));
        }
        let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        let mut subs: Vec<PermGroup> = Vec::new();
        let mut push = |g: PermGroup, subs: &mut Vec<PermGroup>| {
            if seen.insert(g.elements.clone()) {
                subs.push(g);
            }
        };
        push(PermGroup::trivial(self.degree), &mut subs);
        for p in &self.elements {
            push(
                PermGroup::generate_with_cap(std::slice::from_ref(p), self.order())?,
                &mut subs,
            );
        }
        loop {
            let snapshot = subs.len();
            for i in 0..snapshot {
                for j in (i + 1)..snapshot {
                    let joined = self.join(&subs[i], &subs[j])?;
                    push(joined, &mut subs);
                }
            }
            if subs.len() == snapshot {
                break;
            }
        }
        subs.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        Ok(subs)
    }

    /// Partitions `subgroups` into conjugacy classes under inner conjugation;
    /// returns sorted index lists.
    pub fn subgroup_conjugacy_classes(&self, subgroups: &[PermGroup]) -> Vec<Vec<usize>> {
        let key = |g: &PermGroup| g.elements.clone();
        let index_of: std::collections::BTreeMap<Vec<Permutation>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, g)| (key(g), i))
            .collect();
        let mut assigned = vec![false; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if assigned[i] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for x in &self.elements {
                let conj = self.conjugate_subgroup(&subgroups[i], x);
                let j = *index_of
                    .get(&conj.elements)
                    .expect("conjugate of a listed subgroup is listed");
                class.insert(j);
            }
            for &j in &class {
                assigned[j] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Left cosets `gS = {s*g}` of `sub`, each represented by its minimal
    /// element index, ordered by that representative.
    pub fn coset_representatives(&self, sub: &PermGroup) -> Result<Vec<usize>, GroupError> {
        if !sub.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for k in 0..self.order() {
            if coset_of[k] != usize::MAX {
                continue;
            }
            let rep = reps.len();
            reps.push(k);
            for s in sub.elements() {
                let m = s.compose(&self.elements[k]).expect("equal degrees");
                coset_of[self.element_index(&m).expect("closure")] = rep;
            }
        }
        Ok(reps)
    }

    /// Action on the left cosets of `sub`: the coset of `g` is sent to the
    /// coset of `g*x`, which under left-to-right composition is the usual
    /// coset action and restricts to the natural action on orbits.
    pub fn coset_action(&self, sub: &PermGroup) -> Result<GroupAction, GroupError> {
        if !sub.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut n_cosets = 0usize;
        for k in 0..self.order() {
            if coset_of[k] != usize::MAX {
                continue;
            }
            for s in sub.elements() {
                let m = s.compose(&self.elements[k]).expect("equal degrees");
                coset_of[self.element_index(&m).expect("closure")] = n_cosets;
            }
            n_cosets += 1;
        }
        let reps = self.coset_representatives(sub)?;
        GroupAction::new(self.clone(), n_cosets, |group, e| {
            let images: Vec<usize> = reps
                .iter()
                .map(|&r| coset_of[group.product_index(r, e)])
                .collect();
            Permutation::from_images(images).expect("coset action is a permutation")
        })
    }

    /// The regular action by right translation.
    pub fn regular_action(&self) -> GroupAction {
        self.coset_action(&PermGroup::trivial(self.degree))
            .expect("trivial subgroup")
    }

    /// The defining action on `0..degree`.
    pub fn natural_action(&self) -> GroupAction {
        GroupAction::new(self.clone(), self.degree, |group, e| {
            group.elements()[e].clone()
        })
        .expect("natural action is a homomorphism")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerTarget {
    Point(usize),
    Set(BTreeSet<usize>),
    Tuple(Vec<usize>),
}

impl StabilizerTarget {
    pub fn point(x: usize) -> Self {
        StabilizerTarget::Point(x)
    }

    pub fn set(points: impl IntoIterator<Item = usize>) -> Self {
        StabilizerTarget::Set(points.into_iter().collect())
    }

    pub fn tuple(points: impl IntoIterator<Item = usize>) -> Self {
        StabilizerTarget::Tuple(points.into_iter().collect())
    }
}

/// A homomorphism from an enumerated group into `Sym(0..domain_size)`,
/// stored as one permutation per group element.
#[derive(Clone)]
pub struct GroupAction {
    group: PermGroup,
    domain_size: usize,
    perms: Vec<Permutation>,
}

impl GroupAction {
    /// Builds the action from a per-element map and verifies the homomorphism
    /// property exhaustively.
    pub fn new(
        group: PermGroup,
        domain_size: usize,
        f: impl Fn(&PermGroup, usize) -> Permutation,
    ) -> Result<Self, GroupError> {
        let perms: Vec<Permutation> = (0..group.order()).map(|e| f(&group, e)).collect();
        for p in &perms {
            if p.degree() != domain_size {
                return Err(GroupError::ActionDegreeMismatch(p.degree(), domain_size));
            }
        }
        let action = GroupAction {
            group,
            domain_size,
            perms,
        };
        action.verify_homomorphism()?;
        Ok(action)
    }

    fn verify_homomorphism(&self) -> Result<(), GroupError> {
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.product_index(a, b);
                let composed = self.perms[a].compose(&self.perms[b]).expect("same domain");
                if composed != self.perms[ab] {
                    return Err(GroupError::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Permutation of the domain induced by `elements[e]`.
    pub fn perm_of(&self, e: usize) -> &Permutation {
        &self.perms[e]
    }

    pub fn perm_of_element(&self, p: &Permutation) -> Option<&Permutation> {
        self.group.element_index(p).map(|e| &self.perms[e])
    }

    /// Indices of elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&e| self.perms[e].is_identity())
            .collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.domain_size];
        let mut orbits = Vec::new();
        for start in 0..self.domain_size {
            if seen[start] {
                continue;
            }
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            let mut queue = vec![start];
            orbit.insert(start);
            while let Some(x) = queue.pop() {
                for p in &self.perms {
                    let y = p.apply(x);
                    if orbit.insert(y) {
                        queue.push(y);
                    }
                }
            }
            for &x in &orbit {
                seen[x] = true;
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Indices of elements fixing the domain point `x`.
    pub fn point_stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&e| self.perms[e].apply(x) == x)
            .collect()
    }
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupAction(order {} on {} points)",
            self.group.order(),
            self.domain_size
        )
    }
}

/// Searches for a bijection `phi` of domains with `phi(a_g(x)) = b_g(phi(x))`
/// for every group element `g`; returns it as `phi[x]`, or `None`.
///
/// Both actions must belong to the same enumerated group. The search seeds one
/// point per orbit and propagates along generators, backtracking over orbit
/// matchings and seed images.
pub fn actions_equivalent(a: &GroupAction, b: &GroupAction) -> Option<Vec<usize>> {
    if !a.group.same_elements(&b.group) || a.domain_size != b.domain_size {
        return None;
    }
    let gen_indices: Vec<usize> = a
        .group
        .generators()
        .iter()
        .map(|g| a.group.element_index(g).expect("generator is an element"))
        .collect();
    let a_orbits = a.orbits();
    let b_orbits = b.orbits();
    if a_orbits.len() != b_orbits.len() {
        return None;
    }
    let mut phi = vec![usize::MAX; a.domain_size];
    let mut used_b_orbit = vec![false; b_orbits.len()];
    if match_orbits(
        a,
        b,
        &gen_indices,
        &a_orbits,
        &b_orbits,
        0,
        &mut used_b_orbit,
        &mut phi,
    ) {
        Some(phi)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn match_orbits(
    a: &GroupAction,
    b: &GroupAction,
    gens: &[usize],
    a_orbits: &[Vec<usize>],
    b_orbits: &[Vec<usize>],
    k: usize,
    used: &mut Vec<bool>,
    phi: &mut Vec<usize>,
) -> bool {
    if k == a_orbits.len() {
        return true;
    }
    let seed = a_orbits[k][0];
    for (j, b_orbit) in b_orbits.iter().enumerate() {
        if used[j] || b_orbit.len() != a_orbits[k].len() {
            continue;
        }
        for &image in b_orbit {
            if let Some(extension) = propagate(a, b, gens, seed, image, phi) {
                used[j] = true;
                if match_orbits(a, b, gens, a_orbits, b_orbits, k + 1, used, phi) {
                    return true;
                }
                used[j] = false;
                for x in extension {
                    phi[x] = usize::MAX;
                }
            }
        }
    }
    false
}

/// Extends `phi` by `seed -> image` propagating equivariance along generators;
/// returns the newly assigned points, or `None` on conflict (rolling back).
fn propagate(
    a: &GroupAction,
    b: &GroupAction,
    gens: &[usize],
    seed: usize,
    image: usize,
    phi: &mut [usize],
) -> Option<Vec<usize>> {
    let mut assigned = Vec::new();
    let mut queue = vec![seed];
    if phi[seed] != usize::MAX {
        return if phi[seed] == image { Some(assigned) } else { None };
    }
    phi[seed] = image;
    assigned.push(seed);
    let mut hit = vec![false; b.domain_size];
    for x in 0..a.domain_size {
        if phi[x] != usize::MAX {
            hit[phi[x]] = true;
        }
    }
    while let Some(x) = queue.pop() {
        for &g in gens {
            let ax = a.perms[g].apply(x);
            let bx = b.perms[g].apply(phi[x]);
            if phi[ax] == usize::MAX {
                if hit[bx] {
                    for &y in &assigned {
                        phi[y] = usize::MAX;
                    }
                    return None;
                }
                phi[ax] = bx;
                hit[bx] = true;
                assigned.push(ax);
                queue.push(ax);
            } else if phi[ax] != bx {
                for &y in &assigned {
                    phi[y] = usize::MAX;
                }
                return None;
            }
        }
    }
    Some(assigned)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    fn type_iii_group() -> PermGroup {
        PermGroup::generate(&[
            p("(2 4 6)", 6),
            p("(1 5)(2 4)", 6),
            p("(1 4)(2 5)(3 6)", 6),
        ])
        .unwrap()
    }

    #[test]
    fn generate_type_i_has_order_6() {
        let g = PermGroup::generate(&[p("(1 2)(3 4)(5 6)", 6), p("(1 4)(2 5)(3 6)", 6)]).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn generate_type_iii_has_order_36() {
        assert_eq!(type_iii_group().order(), 36);
    }

    #[test]
    fn generate_trivial() {
        let g = PermGroup::generate(&[Permutation::identity(6)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_cap_signals_misuse() {
        // S_7 has order 5040
        let gens = [p("(1 2)", 7), p("(1 2 3 4 5 6 7)", 7)];
        assert_eq!(
            PermGroup::generate_with_cap(&gens, 1000),
            Err(GroupError::ClosureCapExceeded(1000))
        );
    }

    #[test]
    fn order_divides_ambient_factorial() {
        let g = type_iii_group();
        assert_eq!(720 % g.order(), 0);
    }

    #[test]
    fn orbits_of_trivial_group() {
        let g = PermGroup::trivial(6);
        let domain: Vec<usize> = (0..6).collect();
        assert_eq!(g.orbits(&domain).unwrap().len(), 6);
        assert!(!g.is_transitive(&domain).unwrap());
    }

    #[test]
    fn type_iii_is_transitive() {
        let g = type_iii_group();
        let domain: Vec<usize> = (0..6).collect();
        assert!(g.is_transitive(&domain).unwrap());
    }

    #[test]
    fn point_stabilizer_is_l() {
        let g = type_iii_group();
        let stab = g.stabilizer(&StabilizerTarget::point(0)).unwrap();
        assert_eq!(stab.order(), 6);
        let l = PermGroup::generate(&[p("(2 4 6)", 6), p("(3 5)(4 6)", 6)]).unwrap();
        assert!(stab.same_elements(&l));
    }

    #[test]
    fn set_stabilizer_is_klein() {
        let g = type_iii_group();
        let stab = g.stabilizer(&StabilizerTarget::set([0, 1])).unwrap();
        assert_eq!(stab.order(), 4);
        // exponent 2: every non-identity element is an involution
        assert!(stab
            .elements()
            .iter()
            .all(|e| e.is_identity() || e.order() == 2));
    }

    #[test]
    fn tuple_stabilizer_is_m() {
        let g = type_iii_group();
        let stab = g.stabilizer(&StabilizerTarget::tuple([0, 1])).unwrap();
        assert_eq!(stab.order(), 2);
        let m = PermGroup::generate(&[p("(3 5)(4 6)", 6)]).unwrap();
        assert!(stab.same_elements(&m));
    }

    #[test]
    fn orbit_stabilizer_relation() {
        let g = type_iii_group();
        let domain: Vec<usize> = (0..6).collect();
        for x in 0..6 {
            let orbit_len = g
                .orbits(&domain)
                .unwrap()
                .into_iter()
                .find(|o| o.contains(&x))
                .unwrap()
                .len();
            let stab = g.stabilizer(&StabilizerTarget::point(x)).unwrap();
            assert_eq!(orbit_len * stab.order(), g.order());
        }
    }

    #[test]
    fn conjugacy_classes_partition_the_group() {
        let g = type_iii_group();
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 36);
        for class in &classes {
            assert_eq!(36 % class.len(), 0);
        }
    }

    #[test]
    fn trivial_group_has_one_class() {
        assert_eq!(PermGroup::trivial(4).conjugacy_classes().len(), 1);
    }

    #[test]
    fn subgroups_of_cyclic_6() {
        let c6 = PermGroup::generate(&[p("(1 2 3 4 5 6)", 6)]).unwrap();
        assert_eq!(c6.all_subgroups().unwrap().len(), 4);
    }

    #[test]
    fn subgroups_pass_axioms_and_are_distinct() {
        let g = type_iii_group();
        let subs = g.all_subgroups().unwrap();
        let mut seen = BTreeSet::new();
        for s in &subs {
            assert!(seen.insert(s.elements().to_vec()));
            assert!(s.is_subgroup_of(&g));
            // from_elements re-checks the axioms
            assert!(PermGroup::from_elements(6, s.elements().to_vec()).is_ok());
        }
    }

    #[test]
    fn coset_action_on_whole_group_is_trivial() {
        let g = type_iii_group();
        let act = g.coset_action(&g).unwrap();
        assert_eq!(act.domain_size(), 1);
    }

    #[test]
    fn regular_action_is_free() {
        let g = type_iii_group();
        let act = g.regular_action();
        assert_eq!(act.domain_size(), 36);
        assert!(act.is_transitive());
        for e in 1..g.order() {
            assert!((0..36).all(|x| act.perm_of(e).apply(x) != x));
        }
    }

    #[test]
    fn coset_actions_are_transitive() {
        let g = type_iii_group();
        for sub in g.all_subgroups().unwrap() {
            let act = g.coset_action(&sub).unwrap();
            assert_eq!(act.domain_size(), g.order() / sub.order());
            assert!(act.is_transitive());
        }
    }

    #[test]
    fn coset_action_rejects_non_subgroup() {
        let g = type_iii_group();
        let other = PermGroup::generate(&[p("(1 2)", 6)]).unwrap();
        assert!(matches!(
            g.coset_action(&other),
            Err(GroupError::NotASubgroup)
        ));
    }

    #[test]
    fn regular_action_matches_trivial_coset_action() {
        let g = type_iii_group();
        let reg = g.regular_action();
        let coset = g.coset_action(&PermGroup::trivial(6)).unwrap();
        let phi = actions_equivalent(&reg, &coset).unwrap();
        // identity relabeling works, though any equivariant bijection is accepted
        assert_eq!(phi.len(), 36);
    }

    #[test]
    fn equivalence_is_reflexive_symmetric() {
        let g = type_iii_group();
        let h = g.stabilizer(&StabilizerTarget::set([0, 1])).unwrap();
        let act = g.coset_action(&h).unwrap();
        assert!(actions_equivalent(&act, &act).is_some());
        let nat = g.natural_action();
        let l = g.stabilizer(&StabilizerTarget::point(0)).unwrap();
        let coset6 = g.coset_action(&l).unwrap();
        assert!(actions_equivalent(&nat, &coset6).is_some());
        assert!(actions_equivalent(&coset6, &nat).is_some());
    }

    #[test]
    fn inequivalent_actions_are_detected() {
        let g = type_iii_group();
        let h1 = g.stabilizer(&StabilizerTarget::set([0, 1])).unwrap();
        // both index 9 after picking two non-conjugate order-4 subgroups would be
        // ideal; here compare a 9-point and an 18-point action instead
        let m = g.stabilizer(&StabilizerTarget::tuple([0, 1])).unwrap();
        let a9 = g.coset_action(&h1).unwrap();
        let a18 = g.coset_action(&m).unwrap();
        assert!(actions_equivalent(&a9, &a18).is_none());
    }

    #[test]
    fn non_homomorphic_action_is_rejected() {
        let g = type_iii_group();
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        // constant non-identity map cannot be a homomorphism
        let bogus = GroupAction::new(g, 2, |_, _| swap.clone());
        assert!(matches!(bogus, Err(GroupError::NotAHomomorphism(_, _))));
    }

    #[test]
    fn subgroup_enumeration_refuses_large_groups() {
        let s6 = PermGroup::generate(&[p("(1 2)", 6), p("(1 2 3 4 5 6)", 6)]).unwrap();
        assert!(matches!(
            s6.all_subgroups(),
            Err(GroupError::OrderCapExceeded(720, 100))
        ));
    }

    #[test]
    fn equivariance_of_found_bijection() {
        let g = type_iii_group();
        let l = g.stabilizer(&StabilizerTarget::point(0)).unwrap();
        let nat = g.natural_action();
        let coset = g.coset_action(&l).unwrap();
        let phi = actions_equivalent(&nat, &coset).unwrap();
        for e in 0..g.order() {
            for x in 0..6 {
                assert_eq!(phi[nat.perm_of(e).apply(x)], coset.perm_of(e).apply(phi[x]));
            }
        }
    }
}
