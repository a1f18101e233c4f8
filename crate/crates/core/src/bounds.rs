//! Element-count bounds (Laffey, Miller), lower bounds for Sylow factors,
//! the nilpotent-group exclusion check, and exact threshold solving for
//! linear inequalities in the group order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::{factorize, is_prime, Natural, Rational};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::report::{BoundReport, Relation};
use crate::series::is_nilpotent;
use crate::spectrum::{avg_order, order_spectrum, target_average, OrderSpectrum};
use crate::sylow::sylow_subgroup;

/// `slope * n + intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub slope: Rational,
    pub intercept: Rational,
}

impl LinearForm {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        LinearForm { slope, intercept }
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        &(&self.slope * n) + &self.intercept
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intercept.is_zero() {
            write!(f, "({})n", self.slope)
        } else if self.intercept.is_negative() {
            write!(f, "({})n - {}", self.slope, -self.intercept.clone())
        } else {
            write!(f, "({})n + {}", self.slope, self.intercept)
        }
    }
}

/// Largest positive integer `n` with `lhs(n) < rhs(n)` (or `<=` when `strict` is false).
///
/// Returns zero when no positive integer qualifies. The slope of `lhs` must
/// exceed that of `rhs`, otherwise the solution set is unbounded.
pub fn solve_threshold(lhs: &LinearForm, rhs: &LinearForm, strict: bool) -> Result<Natural> {
    let gap = &lhs.slope - &rhs.slope;
    if gap.is_negative() || gap.is_zero() {
        return Err(Error::Unbounded(format!(
            "{lhs} {} {rhs}",
            if strict { "<" } else { "<=" }
        )));
    }
    // lhs(n) < rhs(n)  <=>  n < (rhs.intercept - lhs.intercept) / gap
    let bound = (&rhs.intercept - &lhs.intercept) / gap;
    let n = if strict {
        bound.ceil() - BigInt::one()
    } else {
        bound.floor()
    };
    Ok(match n.to_biguint() {
        Some(v) => Natural::from(v),
        None => Natural::zero(),
    })
}

/// `p - (p - 1) / p^k`, the least average order of a group of order `p^k`.
pub fn sylow_factor_lower_bound(p: u64, k: u32) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    let pk = Natural::from(p).pow(k);
    Ok(Rational::from(p) - Rational::from(p - 1) / Rational::from(pk))
}

fn is_p_group(order: u64, p: u64) -> bool {
    matches!(factorize(order).as_slice(), [(q, _)] if *q == p)
}

/// `n_p <= (p / (p + 1)) |G| - 1` for a prime `p` dividing `|G|` when `G` is not a `p`-group.
pub fn laffey_check(subject: &str, spectrum: &OrderSpectrum, p: u64) -> Result<BoundReport> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let name = format!("laffey(p={p})");
    let order = spectrum.group_order();
    let lhs = Rational::from(spectrum.count(p));
    let rhs = Rational::frac(p as i64, p as i64 + 1) * Rational::from(order) - Rational::one();
    if order % p != 0 {
        return Ok(BoundReport::vacuous(subject, name, lhs, rhs, Relation::AtMost, format!("{p} does not divide {order}")));
    }
    if is_p_group(order, p) {
        return Ok(BoundReport::vacuous(subject, name, lhs, rhs, Relation::AtMost, format!("{p}-group")));
    }
    Ok(BoundReport::compare(subject, name, lhs, rhs, Relation::AtMost))
}

/// `n_2 <= (3/4) |G| - 1` for non-abelian `G`.
pub fn miller_check(subject: &str, group: &PermutationGroup) -> Result<BoundReport> {
    let spectrum = order_spectrum(group)?;
    let lhs = Rational::from(spectrum.count(2));
    let rhs = Rational::frac(3, 4) * Rational::from(spectrum.group_order()) - Rational::one();
    if group.is_abelian() {
        return Ok(BoundReport::vacuous(subject, "miller", lhs, rhs, Relation::AtMost, "abelian"));
    }
    Ok(BoundReport::compare(subject, "miller", lhs, rhs, Relation::AtMost))
}

/// Average orders a nilpotent group that is not of prime-power order can never take.
pub fn excluded_nilpotent_averages() -> [Rational; 2] {
    [Rational::frac(61, 15), target_average()]
}

/// For nilpotent `G` whose order has at least two prime divisors, checks that
/// `o(G)` equals the product of the average orders of its Sylow subgroups and
/// that it avoids 61/15 and 211/60. Both sides are reported for every group.
pub fn lemma22_verify(subject: &str, group: &PermutationGroup) -> Result<BoundReport> {
    const NAME: &str = "nilpotent-exclusion";
    let order = group.order()?;
    let avg = avg_order(group)?;
    let primes = factorize(order);
    let mut sylow_product = Rational::one();
    for &(p, _) in &primes {
        sylow_product = sylow_product * avg_order(&sylow_subgroup(group, p)?)?;
    }
    if primes.len() < 2 {
        return Ok(BoundReport::vacuous(subject, NAME, avg, sylow_product, Relation::Equal, "prime-power order"));
    }
    if !is_nilpotent(group)? {
        return Ok(BoundReport::vacuous(subject, NAME, avg, sylow_product, Relation::Equal, "not nilpotent"));
    }
    let report = BoundReport::compare(subject, NAME, avg.clone(), sylow_product, Relation::Equal);
    if excluded_nilpotent_averages().contains(&avg) {
        return Ok(report.violate(format!("average order {avg} is excluded")));
    }
    Ok(report)
}

/// `o(P) >= p - (p-1)/p^k` for a group of order `p^k`.
pub fn sylow_factor_check(subject: &str, group: &PermutationGroup) -> Result<BoundReport> {
    let order = group.order()?;
    let avg = avg_order(group)?;
    match factorize(order).as_slice() {
        [(p, k)] => Ok(BoundReport::compare(
            subject,
            "prime-power-floor",
            avg,
            sylow_factor_lower_bound(*p, *k)?,
            Relation::AtLeast,
        )),
        _ => Ok(BoundReport::vacuous(
            subject,
            "prime-power-floor",
            avg.clone(),
            avg,
            Relation::AtLeast,
            "order is not a prime power",
        )),
    }
}

/// Admissible orders for average order 211/60: `60 | n` and `v_2(n) = 2`.
pub fn admissible_order(n: u64) -> bool {
    n % 60 == 0 && n % 8 != 0
}

/// Necessary condition on `|G|` for `o(G) = target`.
///
/// With `target = p/q` in lowest terms, `psi = p n / q` forces `q | n`; since
/// `psi` is odd, `v_2(n) = v_2(q) - v_2(p)`.
pub fn admissible_order_for(target: &Rational, n: u64) -> bool {
    if target.is_negative() || target.is_zero() {
        return false;
    }
    let (Some(p), Some(q)) = (target.numer().to_u64(), target.denom().to_u64()) else {
        return false;
    };
    let v2 = |x: u64| x.trailing_zeros();
    n % q == 0 && v2(q) >= v2(p) && v2(n) == v2(q) - v2(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{abelian, cyclic, dicyclic, dihedral, symmetric};
    use crate::report::Verdict;

    fn lf(slope: Rational, intercept: Rational) -> LinearForm {
        LinearForm::new(slope, intercept)
    }

    #[test]
    fn thresholds() {
        let r = Rational::frac;
        let n = |x: Natural| x.to_u64().unwrap();
        let one = lf(r(149, 60), r(-5, 1));
        assert_eq!(n(solve_threshold(&one, &lf(r(5, 3), r(0, 1)), true).unwrap()), 6);
        assert_eq!(n(solve_threshold(&one, &lf(r(7, 3), r(0, 1)), true).unwrap()), 33);
        let four = lf(r(223, 480), r(-1, 1));
        assert_eq!(n(solve_threshold(&four, &lf(r(1, 4), r(0, 1)), false).unwrap()), 4);
        let seven = lf(r(31, 45), r(-4, 3));
        assert_eq!(n(solve_threshold(&seven, &lf(r(11, 16), r(0, 1)), false).unwrap()), 960);
    }

    #[test]
    fn threshold_edge_cases() {
        let r = Rational::frac;
        // 2n < n + 4 has solutions 1..3; 2n <= n + 4 also admits 4.
        let a = lf(r(2, 1), r(0, 1));
        let b = lf(r(1, 1), r(4, 1));
        assert_eq!(solve_threshold(&a, &b, true).unwrap(), Natural::from(3u64));
        assert_eq!(solve_threshold(&a, &b, false).unwrap(), Natural::from(4u64));
        // no positive solution
        let c = lf(r(2, 1), r(10, 1));
        assert_eq!(solve_threshold(&c, &b, false).unwrap(), Natural::zero());
        assert!(matches!(solve_threshold(&b, &a, true), Err(Error::Unbounded(_))));
        assert!(matches!(solve_threshold(&a, &a, true), Err(Error::Unbounded(_))));
    }

    #[test]
    fn factor_bounds() {
        assert_eq!(sylow_factor_lower_bound(2, 1).unwrap(), Rational::frac(3, 2));
        assert_eq!(sylow_factor_lower_bound(2, 2).unwrap(), Rational::frac(7, 4));
        let product = sylow_factor_lower_bound(2, 1).unwrap()
            * sylow_factor_lower_bound(3, 1).unwrap()
            * sylow_factor_lower_bound(5, 1).unwrap();
        assert_eq!(product, Rational::frac(147, 10));
        assert!(sylow_factor_lower_bound(2, 0).is_err());
        assert!(sylow_factor_lower_bound(6, 1).is_err());
        assert_eq!(avg_order(&abelian(&[2, 2]).unwrap()).unwrap(), Rational::frac(7, 4));
    }

    #[test]
    fn laffey_examples() {
        let s3 = order_spectrum(&symmetric(3).unwrap()).unwrap();
        let r = laffey_check("S3", &s3, 3).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (Rational::from(2i64), Rational::frac(7, 2)));
        assert_eq!(r.verdict, Verdict::Holds);
        let c6 = order_spectrum(&cyclic(6).unwrap()).unwrap();
        assert_eq!(laffey_check("C6", &c6, 3).unwrap().verdict, Verdict::Holds);
        let c4 = order_spectrum(&cyclic(4).unwrap()).unwrap();
        assert_eq!(laffey_check("C4", &c4, 2).unwrap().verdict, Verdict::HypothesisNotMet);
        assert_eq!(laffey_check("C6", &c6, 5).unwrap().verdict, Verdict::HypothesisNotMet);
        assert!(laffey_check("C6", &c6, 4).is_err());
    }

    #[test]
    fn miller_examples() {
        let r = miller_check("D4", &dihedral(4).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Equality);
        assert_eq!(r.lhs, Rational::from(5i64));
        assert_eq!(miller_check("S3", &symmetric(3).unwrap()).unwrap().verdict, Verdict::Holds);
        let v4 = miller_check("C2xC2", &abelian(&[2, 2]).unwrap()).unwrap();
        assert_eq!(v4.verdict, Verdict::HypothesisNotMet);
        assert!(v4.lhs > v4.rhs);
    }

    #[test]
    fn lemma22_examples() {
        let r = lemma22_verify("C6", &cyclic(6).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.lhs, Rational::frac(7, 2));
        let r = lemma22_verify("C15", &cyclic(15).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.lhs, Rational::frac(7, 3) * Rational::frac(21, 5));
        assert_eq!(r.lhs, Rational::frac(49, 5));
        assert_eq!(lemma22_verify("C4", &cyclic(4).unwrap()).unwrap().verdict, Verdict::HypothesisNotMet);
        assert_eq!(lemma22_verify("S3", &symmetric(3).unwrap()).unwrap().verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn prime_power_floor() {
        for g in [dihedral(4).unwrap(), dicyclic(2).unwrap(), abelian(&[2, 2, 2]).unwrap(), cyclic(27).unwrap()] {
            let r = sylow_factor_check("p-group", &g).unwrap();
            assert!(matches!(r.verdict, Verdict::Holds | Verdict::Equality), "{r}");
        }
        assert_eq!(sylow_factor_check("C2^3", &abelian(&[2, 2, 2]).unwrap()).unwrap().verdict, Verdict::Equality);
    }

    #[test]
    fn admissible_orders() {
        assert!(admissible_order(60));
        assert!(!admissible_order(120));
        assert!(!admissible_order(90));
        let listed: Vec<u64> = (1..1000).filter(|&n| admissible_order(n)).collect();
        assert_eq!(listed, vec![60, 180, 300, 420, 540, 660, 780, 900]);
        let t = target_average();
        for n in 1..5000 {
            assert_eq!(admissible_order(n), admissible_order_for(&t, n), "n = {n}");
        }
        assert!(admissible_order_for(&Rational::frac(7, 2), 6));
        assert!(admissible_order_for(&Rational::one(), 1));
        assert!(!admissible_order_for(&Rational::one(), 2));
    }
}
