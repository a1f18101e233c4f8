//! Permutation groups given by generators, materialised on demand.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, MAX_DEGREE};

/// Default limit on the number of elements a group may materialise.
pub const DEFAULT_CAP: usize = 200_000;

/// Full element set of a group, sorted by image array. The identity is always first.
#[derive(Debug)]
pub struct ElementSet {
    sorted: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl ElementSet {
    fn new(mut elements: Vec<Permutation>, members: HashSet<Permutation>) -> Self {
        elements.sort_unstable();
        ElementSet {
            sorted: elements,
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.sorted.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.sorted
    }
}

/// Incremental Dimino closure: the element list is always a union of right
/// cosets of the previous stage, so adjoining a generator only needs coset
/// representatives.
#[derive(Clone)]
pub(crate) struct Closure {
    degree: usize,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
    generators: Vec<Permutation>,
}

impl Closure {
    pub(crate) fn trivial(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        Closure {
            degree,
            elements: vec![id.clone()],
            members: HashSet::from([id]),
            generators: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub(crate) fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Adjoins `g`, giving up (and rolling back) once the group would exceed `max` elements.
    pub(crate) fn adjoin(&mut self, g: &Permutation, max: usize) -> bool {
        self.adjoin_if(g, max, |_| true)
    }

    /// Like [`Closure::adjoin`], but also rolls back when `accept(new_order)` is false.
    pub(crate) fn adjoin_if(
        &mut self,
        g: &Permutation,
        max: usize,
        accept: impl Fn(usize) -> bool,
    ) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        if self.members.contains(g) {
            return true;
        }
        let base = self.elements.len();
        self.generators.push(g.clone());

        let mut reps = vec![g.clone()];
        let mut ok = self.add_coset(base, g, max);
        let mut i = 0;
        while ok && i < reps.len() {
            let rep = reps[i].clone();
            for s in 0..self.generators.len() {
                let x = rep.mul(&self.generators[s]);
                if !self.members.contains(&x) {
                    if !self.add_coset(base, &x, max) {
                        ok = false;
                        break;
                    }
                    reps.push(x);
                }
            }
            i += 1;
        }

        if ok && accept(self.elements.len()) {
            return true;
        }
        for x in self.elements.drain(base..) {
            self.members.remove(&x);
        }
        self.generators.pop();
        false
    }

    fn add_coset(&mut self, base: usize, rep: &Permutation, max: usize) -> bool {
        if self.elements.len() + base > max {
            return false;
        }
        for h in 0..base {
            let x = self.elements[h].mul(rep);
            self.members.insert(x.clone());
            self.elements.push(x);
        }
        true
    }

    pub(crate) fn into_group(self, cap: usize) -> PermutationGroup {
        let elements = ElementSet::new(self.elements, self.members);
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(elements));
        PermutationGroup {
            degree: self.degree,
            generators: self.generators,
            cap,
            elements: cell,
        }
    }
}

/// A permutation group on `{1..degree}` described by generators.
///
/// The element set is computed lazily on first use and cached; after that the
/// group is immutable.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
    elements: OnceLock<Arc<ElementSet>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::invalid(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermutationGroup {
            degree,
            generators,
            cap: DEFAULT_CAP,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Closure::trivial(degree).into_group(DEFAULT_CAP)
    }

    /// Replaces the enumeration cap used by this group and the subgroups derived from it.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.get().is_some()
    }

    /// Materialises every element, failing if the group is larger than the cap.
    pub fn enumerate(&self) -> Result<&ElementSet> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let mut closure = Closure::trivial(self.degree);
        for g in &self.generators {
            if !closure.adjoin(g, self.cap) {
                return Err(Error::CapExceeded { cap: self.cap });
            }
        }
        let set = Arc::new(ElementSet::new(closure.elements, closure.members));
        // A concurrent enumeration may have won; both results are identical.
        let _ = self.elements.set(set);
        Ok(self.elements.get().expect("just set"))
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.enumerate()?.len() as u64)
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(self.enumerate()?.as_slice())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(p.degree() == self.degree && self.enumerate()?.contains(p))
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.order()? == 1)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Element-set equality.
    pub fn same_elements(&self, other: &PermutationGroup) -> Result<bool> {
        Ok(self.degree == other.degree && self.elements()? == other.elements()?)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> Result<bool> {
        let outer = other.enumerate()?;
        Ok(self.degree == other.degree && self.generators.iter().all(|g| outer.contains(g)))
    }

    /// True when conjugation by every generator of `parent` maps `self` into itself.
    pub fn is_normal_in(&self, parent: &PermutationGroup) -> Result<bool> {
        let inner = self.enumerate()?;
        Ok(self.is_subgroup_of(parent)?
            && parent.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|x| inner.contains(&x.conjugate_by(g)))
            }))
    }

    fn check_members(&self, seeds: &[Permutation]) -> Result<()> {
        let all = self.enumerate()?;
        match seeds.iter().find(|s| !all.contains(s)) {
            Some(s) => Err(Error::invalid(format!("{s} is not an element of the parent group"))),
            None => Ok(()),
        }
    }

    /// Smallest subgroup containing `seeds`; every seed must lie in `self`.
    pub fn generated_subgroup(&self, seeds: &[Permutation]) -> Result<PermutationGroup> {
        self.check_members(seeds)?;
        Ok(self.closure_of(seeds).into_group(self.cap))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup> {
        self.check_members(seeds)?;
        let mut closure = self.closure_of(seeds);
        let mut i = 0;
        while i < closure.generators().len() {
            let n = closure.generators()[i].clone();
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if !closure.contains(&c) {
                    closure.adjoin(&c, usize::MAX);
                }
            }
            i += 1;
        }
        Ok(closure.into_group(self.cap))
    }

    /// Seeds are assumed to lie in `self`, so the closure is bounded by its order.
    pub(crate) fn closure_of(&self, seeds: &[Permutation]) -> Closure {
        let mut closure = Closure::trivial(self.degree);
        for s in seeds {
            closure.adjoin(s, usize::MAX);
        }
        closure
    }
}

/// Free-function form of [`PermutationGroup::enumerate`].
pub fn enumerate(group: &PermutationGroup) -> Result<&ElementSet> {
    group.enumerate()
}

pub fn generated_subgroup(parent: &PermutationGroup, seeds: &[Permutation]) -> Result<PermutationGroup> {
    parent.generated_subgroup(seeds)
}

pub fn normal_closure(parent: &PermutationGroup, seeds: &[Permutation]) -> Result<PermutationGroup> {
    parent.normal_closure(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn s3() -> PermutationGroup {
        PermutationGroup::new(3, vec![perm(&[2, 1, 3]), perm(&[2, 3, 1])]).unwrap()
    }

    fn a5() -> PermutationGroup {
        PermutationGroup::new(5, vec![perm(&[2, 3, 4, 5, 1]), perm(&[2, 3, 1, 4, 5])]).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(PermutationGroup::new(4, vec![]).unwrap().order().unwrap(), 1);
        assert_eq!(
            PermutationGroup::new(4, vec![Permutation::identity(4)]).unwrap().order().unwrap(),
            1
        );
        assert_eq!(s3().order().unwrap(), 6);
        assert_eq!(a5().order().unwrap(), 60);
    }

    #[test]
    fn identity_comes_first() {
        let g = a5();
        assert!(g.elements().unwrap()[0].is_identity());
    }

    #[test]
    fn cap_is_enforced() {
        let g = a5().with_cap(59);
        assert_eq!(g.enumerate().unwrap_err(), Error::CapExceeded { cap: 59 });
        assert_eq!(a5().with_cap(60).order().unwrap(), 60);
    }

    #[test]
    fn mixed_degrees_rejected() {
        let r = PermutationGroup::new(3, vec![Permutation::identity(4)]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn subgroup_generation() {
        let g = s3();
        assert_eq!(g.generated_subgroup(&[]).unwrap().order().unwrap(), 1);
        let c3 = g.generated_subgroup(&[perm(&[2, 3, 1])]).unwrap();
        assert_eq!(c3.order().unwrap(), 3);
        let five = a5().generated_subgroup(&[perm(&[2, 3, 4, 5, 1])]).unwrap();
        assert_eq!(five.order().unwrap(), 5);
        let outside = g.generated_subgroup(&[perm(&[1, 2, 3, 4])]);
        assert!(matches!(outside, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn normal_closures() {
        let g = s3();
        assert_eq!(g.normal_closure(&[]).unwrap().order().unwrap(), 1);
        let a3 = g.normal_closure(&[perm(&[2, 3, 1])]).unwrap();
        assert_eq!(a3.order().unwrap(), 3);
        assert!(a3.is_normal_in(&g).unwrap());
        // a transposition is not normal-closed in S3.
        let t = g.generated_subgroup(&[perm(&[2, 1, 3])]).unwrap();
        assert!(!t.is_normal_in(&g).unwrap());
        assert_eq!(g.normal_closure(&[perm(&[2, 1, 3])]).unwrap().order().unwrap(), 6);

        let a5 = a5();
        for x in a5.elements().unwrap().iter().skip(1).step_by(7) {
            let n = a5.normal_closure(std::slice::from_ref(x)).unwrap();
            assert_eq!(n.order().unwrap(), 60, "closure of {x}");
        }
    }

    #[test]
    fn rollback_restores_state() {
        let g = a5();
        let mut c = g.closure_of(&[perm(&[2, 3, 1, 4, 5])]);
        assert_eq!(c.len(), 3);
        assert!(!c.adjoin(&perm(&[2, 3, 4, 5, 1]), 10));
        assert_eq!(c.len(), 3);
        assert_eq!(c.generators().len(), 1);
        assert!(c.adjoin(&perm(&[2, 3, 4, 5, 1]), 60));
        assert_eq!(c.len(), 60);
    }

    #[test]
    fn enumerate_is_idempotent() {
        let g = a5();
        let first: Vec<_> = g.elements().unwrap().to_vec();
        let again = PermutationGroup::new(5, g.generators().to_vec()).unwrap();
        assert_eq!(again.elements().unwrap(), &first[..]);
        assert_eq!(g.elements().unwrap(), &first[..]);
    }
}
