//! Sylow subgroups by greedy extension of a p-subgroup.

use crate::arith::{is_prime, valuation_u64};
use crate::error::{Error, Result};
use crate::group::{Closure, PermutationGroup};

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn check_prime_divisor(order: u64, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if order % p != 0 {
        return Err(Error::invalid(format!("{p} does not divide the group order {order}")));
    }
    Ok(())
}

/// A Sylow `p`-subgroup.
///
/// Elements of `p`-power order are scanned in sorted order and each one is
/// adjoined when the join stays a `p`-group. A rejected element can never be
/// accepted later (its join with a larger `p`-subgroup contains the rejected
/// join), so one pass suffices; the result is a maximal `p`-subgroup and
/// hence Sylow.
pub fn sylow_subgroup(group: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    let order = group.order()?;
    check_prime_divisor(order, p)?;
    let target = p.pow(valuation_u64(order, p)) as usize;
    if target as u64 == order {
        return Ok(group.clone());
    }

    let mut closure = Closure::trivial(group.degree());
    for x in group.elements()? {
        if closure.len() == target {
            break;
        }
        if closure.contains(x) {
            continue;
        }
        match x.order_u64() {
            Some(o) if is_power_of(o, p) => {}
            _ => continue,
        }
        closure.adjoin_if(x, target, |n| is_power_of(n as u64, p));
    }
    debug_assert_eq!(closure.len(), target);
    if closure.len() != target {
        return Err(Error::invalid(format!(
            "greedy extension stopped at a {p}-subgroup of order {}",
            closure.len()
        )));
    }
    Ok(closure.into_group(group.cap()))
}

/// Number of Sylow `p`-subgroups, as the index of the normaliser of one of them.
pub fn sylow_count(group: &PermutationGroup, p: u64) -> Result<u64> {
    let sylow = sylow_subgroup(group, p)?;
    let members = sylow.enumerate()?;
    let normalizer = group
        .elements()?
        .iter()
        .filter(|g| {
            sylow
                .generators()
                .iter()
                .all(|x| members.contains(&x.conjugate_by(g)))
        })
        .count() as u64;
    Ok(group.order()? / normalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;

    fn group(degree: usize, gens: &[&[usize]]) -> PermutationGroup {
        PermutationGroup::new(
            degree,
            gens.iter().map(|g| Permutation::from_images(g).unwrap()).collect(),
        )
        .unwrap()
    }

    fn a5() -> PermutationGroup {
        group(5, &[&[2, 3, 4, 5, 1], &[2, 3, 1, 4, 5]])
    }

    #[test]
    fn sylow_orders() {
        let c6 = group(6, &[&[2, 3, 4, 5, 6, 1]]);
        assert_eq!(sylow_subgroup(&c6, 3).unwrap().order().unwrap(), 3);
        assert_eq!(sylow_subgroup(&a5(), 2).unwrap().order().unwrap(), 4);
        let s4 = group(4, &[&[2, 1, 3, 4], &[2, 3, 4, 1]]);
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order().unwrap(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order().unwrap(), 3);
    }

    #[test]
    fn sylow_counts() {
        let c6 = group(6, &[&[2, 3, 4, 5, 6, 1]]);
        assert_eq!(sylow_count(&c6, 2).unwrap(), 1);
        assert_eq!(sylow_count(&c6, 3).unwrap(), 1);
        assert_eq!(sylow_count(&a5(), 5).unwrap(), 6);
        assert_eq!(sylow_count(&a5(), 2).unwrap(), 5);
        assert_eq!(sylow_count(&a5(), 3).unwrap(), 10);
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(matches!(sylow_subgroup(&a5(), 7), Err(Error::InvalidInput(_))));
        assert!(matches!(sylow_subgroup(&a5(), 4), Err(Error::InvalidInput(_))));
        assert!(matches!(sylow_count(&a5(), 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn deterministic() {
        let a = sylow_subgroup(&a5(), 2).unwrap();
        let b = sylow_subgroup(&a5(), 2).unwrap();
        assert_eq!(a.generators(), b.generators());
    }
}
