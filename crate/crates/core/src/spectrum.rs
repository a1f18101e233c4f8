//! Element-order statistics: `n_d`, the order sum `psi` and the average order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{divisors_u64, euler_phi_u64, Natural, Rational};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::report::{BoundReport, Relation};

/// Map from element order `d` to the number of elements of order `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderSpectrum {
    group_order: u64,
    counts: BTreeMap<u64, u64>,
}

impl OrderSpectrum {
    /// Validates the structural invariants of a spectrum.
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Result<Self> {
        let spectrum = OrderSpectrum {
            group_order: counts.values().sum(),
            counts,
        };
        match spectrum.invariant_violations().first() {
            Some(v) => Err(Error::invalid(v.clone())),
            None => Ok(spectrum),
        }
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// `n_d`, zero for orders that do not occur.
    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn max_order(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(1)
    }

    pub fn psi(&self) -> Natural {
        self.counts
            .iter()
            .map(|(&d, &n)| &Natural::from(d) * &Natural::from(n))
            .sum()
    }

    pub fn avg_order(&self) -> Rational {
        Rational::from(self.psi()) / Rational::from(self.group_order)
    }

    /// `psi - (6|G| - 5 - (4 n2 + 3 n3 + 2 n4 + n5))`.
    ///
    /// Every element of order at least 6 is counted as 6 in the bracket, so the
    /// gap is non-negative and vanishes exactly when no element has order above 6.
    pub fn six_bound_gap(&self) -> Rational {
        let bracket = Rational::from(6 * self.group_order) - Rational::from(5u64) - self.weighted_small_orders();
        Rational::from(self.psi()) - bracket
    }

    /// `4 n2 + 3 n3 + 2 n4 + n5`.
    pub fn weighted_small_orders(&self) -> Rational {
        Rational::from(
            4 * self.count(2) + 3 * self.count(3) + 2 * self.count(4) + self.count(5),
        )
    }

    /// Descriptions of every broken invariant; empty for a genuine group spectrum.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let total: u64 = self.counts.values().sum();
        if total != self.group_order {
            out.push(format!("counts sum to {total}, not {}", self.group_order));
        }
        if self.count(1) != 1 {
            out.push(format!("n_1 = {}, expected 1", self.count(1)));
        }
        for (&d, &n) in &self.counts {
            if d == 0 || self.group_order % d != 0 {
                out.push(format!("order {d} does not divide {}", self.group_order));
            }
            if d > 2 && n % 2 != 0 {
                out.push(format!("n_{d} = {n} is odd"));
            }
            if n == 0 {
                out.push(format!("zero count recorded for order {d}"));
            }
        }
        if !self.psi().is_odd() {
            out.push(format!("psi = {} is even", self.psi()));
        }
        out
    }
}

/// Sorted `d:count` pairs joined by commas, e.g. `1:1,2:15,3:20,5:24`.
impl fmt::Display for OrderSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, n) in &self.counts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{d}:{n}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for OrderSpectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for pair in s.split(',') {
            let (d, n) = pair
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("bad spectrum entry {pair:?}")))?;
            let d: u64 = d.trim().parse().map_err(|_| Error::invalid(format!("bad order {d:?}")))?;
            let n: u64 = n.trim().parse().map_err(|_| Error::invalid(format!("bad count {n:?}")))?;
            if counts.insert(d, n).is_some() {
                return Err(Error::invalid(format!("order {d} listed twice")));
            }
        }
        OrderSpectrum::from_counts(counts)
    }
}

/// One pass over the materialised elements.
pub fn order_spectrum(group: &PermutationGroup) -> Result<OrderSpectrum> {
    let elements = group.enumerate()?;
    let mut counts = BTreeMap::new();
    for x in elements.iter() {
        // Element orders divide the group order, so they always fit.
        let o = x.order_u64().expect("element order bounded by group order");
        *counts.entry(o).or_insert(0) += 1;
    }
    Ok(OrderSpectrum {
        group_order: elements.len() as u64,
        counts,
    })
}

pub fn psi(group: &PermutationGroup) -> Result<Natural> {
    Ok(order_spectrum(group)?.psi())
}

pub fn avg_order(group: &PermutationGroup) -> Result<Rational> {
    Ok(order_spectrum(group)?.avg_order())
}

/// `sum over d | n of d * phi(d)`, the order sum of the cyclic group of order `n`.
pub fn psi_cyclic(n: &Natural) -> Result<Natural> {
    let v = n
        .to_u64()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::invalid(format!("psi_cyclic needs 1 <= n < 2^64, got {n}")))?;
    Ok(divisors_u64(v)
        .into_iter()
        .map(|d| &Natural::from(d) * &Natural::from(euler_phi_u64(d)))
        .sum())
}

pub fn six_bound_gap(group: &PermutationGroup) -> Result<Rational> {
    Ok(order_spectrum(group)?.six_bound_gap())
}

pub fn target_average() -> Rational {
    Rational::frac(211, 60)
}

/// Inequality `4 n2 + 3 n3 + 2 n4 + n5 >= (149/60) |G| - 5`, asserted only for
/// groups whose average order is exactly 211/60.
pub fn lemma21_check(subject: &str, spectrum: &OrderSpectrum) -> BoundReport {
    const NAME: &str = "small-order-weight";
    let lhs = spectrum.weighted_small_orders();
    let rhs = Rational::frac(149, 60) * Rational::from(spectrum.group_order()) - Rational::from(5u64);
    let avg = spectrum.avg_order();
    if avg != target_average() {
        return BoundReport::vacuous(
            subject,
            NAME,
            lhs,
            rhs,
            Relation::AtLeast,
            format!("average order {avg} is not 211/60"),
        );
    }
    BoundReport::compare(subject, NAME, lhs, rhs, Relation::AtLeast)
}
