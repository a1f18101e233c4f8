//! Dense permutations of `{1..degree}`.
//!
//! Images are stored zero-based in a boxed slice. The product `a * b` is
//! [`Permutation::compose`], which applies `b` first and then `a`
//! (right-to-left, like function composition). Every product in the crate
//! uses this convention.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::arith::Natural;
use crate::error::{Error, Result};

pub type Point = u16;

/// Largest supported degree.
pub const MAX_DEGREE: usize = Point::MAX as usize + 1;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree).map(|i| i as Point).collect(),
        }
    }

    /// Builds a permutation from 1-based images: entry `j` is the image of point `j + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(Error::invalid(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for (j, &img) in images.iter().enumerate() {
            if img == 0 || img > degree {
                return Err(Error::invalid(format!(
                    "image {img} of point {} is outside 1..={degree}",
                    j + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::invalid(format!("image {img} appears more than once")));
            }
            out.push((img - 1) as Point);
        }
        Ok(Permutation { images: out.into() })
    }

    /// Builds a permutation of the given degree from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::invalid(format!("point {pt} outside 1..={degree}")));
                }
                if std::mem::replace(&mut moved[pt - 1], true) {
                    return Err(Error::invalid(format!("point {pt} appears in two cycles")));
                }
                images[pt - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub(crate) fn from_raw(images: Vec<Point>) -> Self {
        Permutation { images: images.into() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `a.compose(b)` maps `x` to `a(b(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::invalid(format!(
                "degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.mul(other))
    }

    /// Unchecked product `self * other`; degrees must agree.
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation::from_raw(inv)
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    /// `by^-1 * self * by`.
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        by.inverse().mul(self).mul(by)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> Natural {
        match self.order_u64() {
            Some(o) => Natural::from(o),
            None => Natural::from(
                self.cycle_lengths()
                    .into_iter()
                    .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l))),
            ),
        }
    }

    /// Order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for l in self.cycle_lengths() {
            let l = l as u64;
            acc = (acc / acc.gcd(&l)).checked_mul(l)?;
        }
        Some(acc)
    }

    /// Points shifted by `offset` inside a permutation of degree `degree`.
    pub(crate) fn embed(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<Point> = (0..degree).map(|i| i as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as Point;
        }
        Permutation::from_raw(images)
    }
}

/// `compose(a, b)` applies `b` first, then `a`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn inverse(a: &Permutation) -> Permutation {
    a.inverse()
}

pub fn element_order(a: &Permutation) -> Natural {
    a.order()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// Cycle notation, e.g. `(1 2)(3 4 5)`; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut cur = start;
            let mut first = true;
            while !seen[cur] {
                seen[cur] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", cur + 1)?;
                first = false;
                cur = self.images[cur] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
