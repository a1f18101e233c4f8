//! Derived series, lower central series and centres.

use crate::error::Result;
use crate::group::PermutationGroup;
use crate::permutation::Permutation;

/// Descending chain of subgroups, starting at the input group.
///
/// The chain stops at the trivial group or at the first repeated term, which
/// is kept so the stabilisation point is visible.
#[derive(Debug, Clone)]
pub struct SubgroupChain {
    terms: Vec<PermutationGroup>,
}

impl SubgroupChain {
    pub fn terms(&self) -> &[PermutationGroup] {
        &self.terms
    }

    pub fn last(&self) -> &PermutationGroup {
        self.terms.last().expect("chain is never empty")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn orders(&self) -> Result<Vec<u64>> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    pub fn reaches_trivial(&self) -> Result<bool> {
        self.last().is_trivial()
    }

    fn build(
        group: &PermutationGroup,
        mut next: impl FnMut(&PermutationGroup) -> Result<PermutationGroup>,
    ) -> Result<SubgroupChain> {
        group.enumerate()?;
        let mut terms = vec![group.clone()];
        loop {
            let cur = terms.last().expect("non-empty");
            if cur.is_trivial()? {
                break;
            }
            let cur_order = cur.order()?;
            let n = next(cur)?;
            let stable = n.order()? == cur_order;
            terms.push(n);
            if stable {
                break;
            }
        }
        Ok(SubgroupChain { terms })
    }
}

fn pairwise_commutators(gens: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                out.push(c);
            }
        }
    }
    out
}

/// The derived subgroup, as the normal closure of commutators of generators.
pub fn derived_subgroup(group: &PermutationGroup) -> Result<PermutationGroup> {
    group.normal_closure(&pairwise_commutators(group.generators()))
}

pub fn derived_series(group: &PermutationGroup) -> Result<SubgroupChain> {
    SubgroupChain::build(group, derived_subgroup)
}

pub fn is_solvable(group: &PermutationGroup) -> Result<bool> {
    derived_series(group)?.reaches_trivial()
}

pub fn lower_central_series(group: &PermutationGroup) -> Result<SubgroupChain> {
    SubgroupChain::build(group, |term| {
        let mut seeds = Vec::new();
        for x in term.generators() {
            for g in group.generators() {
                let c = x.commutator(g);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        group.normal_closure(&seeds)
    })
}

pub fn is_nilpotent(group: &PermutationGroup) -> Result<bool> {
    lower_central_series(group)?.reaches_trivial()
}

/// Elements commuting with every generator.
pub fn center(group: &PermutationGroup) -> Result<PermutationGroup> {
    let central: Vec<Permutation> = group
        .elements()?
        .iter()
        .filter(|x| group.generators().iter().all(|g| x.mul(g) == g.mul(x)))
        .cloned()
        .collect();
    group.generated_subgroup(&central)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn group(degree: usize, gens: &[&[usize]]) -> PermutationGroup {
        PermutationGroup::new(degree, gens.iter().map(|g| perm(g)).collect()).unwrap()
    }

    fn s3() -> PermutationGroup {
        group(3, &[&[2, 1, 3], &[2, 3, 1]])
    }

    fn d4() -> PermutationGroup {
        group(4, &[&[2, 3, 4, 1], &[4, 3, 2, 1]])
    }

    fn a5() -> PermutationGroup {
        group(5, &[&[2, 3, 4, 5, 1], &[2, 3, 1, 4, 5]])
    }

    fn c6() -> PermutationGroup {
        group(6, &[&[2, 3, 4, 5, 6, 1]])
    }

    #[test]
    fn derived_series_examples() {
        assert_eq!(derived_series(&c6()).unwrap().orders().unwrap(), vec![6, 1]);
        assert!(is_solvable(&c6()).unwrap());
        assert_eq!(derived_series(&s3()).unwrap().orders().unwrap(), vec![6, 3, 1]);
        assert!(is_solvable(&s3()).unwrap());
        assert_eq!(derived_series(&a5()).unwrap().orders().unwrap(), vec![60, 60]);
        assert!(!is_solvable(&a5()).unwrap());
        let trivial = PermutationGroup::trivial(3);
        assert_eq!(derived_series(&trivial).unwrap().orders().unwrap(), vec![1]);
    }

    #[test]
    fn derived_terms_are_normal() {
        let g = group(4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        let chain = derived_series(&g).unwrap();
        assert_eq!(chain.orders().unwrap(), vec![24, 12, 4, 1]);
        for t in chain.terms() {
            assert!(t.is_normal_in(&g).unwrap());
        }
    }

    #[test]
    fn lower_central_examples() {
        assert!(is_nilpotent(&c6()).unwrap());
        let s3_chain = lower_central_series(&s3()).unwrap();
        assert_eq!(s3_chain.orders().unwrap(), vec![6, 3, 3]);
        assert!(!is_nilpotent(&s3()).unwrap());
        assert_eq!(lower_central_series(&d4()).unwrap().orders().unwrap(), vec![8, 2, 1]);
        assert!(is_nilpotent(&d4()).unwrap());
    }

    #[test]
    fn centres() {
        assert_eq!(center(&c6()).unwrap().order().unwrap(), 6);
        assert_eq!(center(&s3()).unwrap().order().unwrap(), 1);
        assert_eq!(center(&d4()).unwrap().order().unwrap(), 2);
        assert_eq!(center(&a5()).unwrap().order().unwrap(), 1);
    }
}
