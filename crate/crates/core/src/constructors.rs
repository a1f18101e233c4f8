//! Deterministic builders for standard group families.
//!
//! The same [`FamilySpec`] always yields the same generator arrays. Each
//! family has a textual form such as `cyclic:6`, `abelian:2,2`,
//! `semidirect:5,4,2` or `product:cyclic:2,cyclic:3`.

use std::fmt;
use std::str::FromStr;

use crate::arith::gcd_u64;
use crate::error::{Error, Result};
use crate::group::{PermutationGroup, DEFAULT_CAP};
use crate::permutation::{Permutation, Point};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cyclic(u64),
    /// Direct product of cyclic groups of the listed orders.
    Abelian(Vec<u64>),
    /// Dihedral group of order `2n`.
    Dihedral(u64),
    /// Dicyclic group of order `4n`; `n = 2` is the quaternion group.
    Dicyclic(u64),
    Symmetric(u64),
    Alternating(u64),
    DirectProduct(Vec<FamilySpec>),
    /// `C_m ⋊ C_n` with the generator of `C_n` acting as `x ↦ x^k`.
    SemidirectCyclic { m: u64, n: u64, k: u64 },
}

impl FamilySpec {
    /// Group order from the closed form, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            FamilySpec::Cyclic(n) => Some(*n),
            FamilySpec::Abelian(fs) => fs.iter().try_fold(1u64, |a, &f| a.checked_mul(f)),
            FamilySpec::Dihedral(n) => n.checked_mul(2),
            FamilySpec::Dicyclic(n) => n.checked_mul(4),
            FamilySpec::Symmetric(n) => factorial(*n),
            FamilySpec::Alternating(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            FamilySpec::DirectProduct(parts) => parts
                .iter()
                .try_fold(1u64, |a, p| p.order().and_then(|o| a.checked_mul(o))),
            FamilySpec::SemidirectCyclic { m, n, .. } => m.checked_mul(*n),
        }
    }

    pub fn build(&self) -> Result<PermutationGroup> {
        self.build_with_cap(DEFAULT_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<PermutationGroup> {
        let g = match self {
            FamilySpec::Cyclic(n) => build_cyclic(*n)?,
            FamilySpec::Abelian(fs) => build_abelian(fs)?,
            FamilySpec::Dihedral(n) => build_dihedral(*n)?,
            FamilySpec::Dicyclic(n) => build_dicyclic(*n)?,
            FamilySpec::Symmetric(n) => {
                check_cap(self, cap)?;
                build_symmetric(*n)?
            }
            FamilySpec::Alternating(n) => {
                check_cap(self, cap)?;
                build_alternating(*n)?
            }
            FamilySpec::DirectProduct(parts) => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::invalid("product needs at least one factor"))?;
                let mut acc = first.build_with_cap(cap)?;
                for part in iter {
                    acc = direct_product_with_cap(&acc, &part.build_with_cap(cap)?, cap)?;
                }
                return Ok(acc);
            }
            FamilySpec::SemidirectCyclic { m, n, k } => build_semidirect(*m, *n, *k)?,
        };
        Ok(g.with_cap(cap))
    }
}

fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |a, k| a.checked_mul(k))
}

fn check_cap(spec: &FamilySpec, cap: usize) -> Result<()> {
    match spec.order() {
        Some(o) if o <= cap as u64 => Ok(()),
        _ => Err(Error::CapExceeded { cap }),
    }
}

fn degree_of(n: u64) -> Result<usize> {
    usize::try_from(n)
        .ok()
        .filter(|&d| d <= crate::permutation::MAX_DEGREE)
        .ok_or_else(|| Error::invalid(format!("degree {n} is too large")))
}

/// Permutation of `degree` points given by a 0-based image function.
fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_raw((0..degree).map(|i| f(i) as Point).collect())
}

fn build_cyclic(n: u64) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group needs n >= 1"));
    }
    let d = degree_of(n)?;
    let gens = if n == 1 {
        vec![]
    } else {
        vec![perm_from_fn(d, |i| (i + 1) % d)]
    };
    PermutationGroup::new(d, gens)
}

fn build_abelian(factors: &[u64]) -> Result<PermutationGroup> {
    if factors.is_empty() {
        return Err(Error::invalid("abelian group needs at least one factor"));
    }
    if let Some(f) = factors.iter().find(|&&f| f < 2) {
        return Err(Error::invalid(format!("abelian factor {f} is below 2")));
    }
    let degree = degree_of(factors.iter().sum())?;
    let mut offset = 0;
    let mut gens = Vec::with_capacity(factors.len());
    for &f in factors {
        let f = f as usize;
        gens.push(perm_from_fn(degree, |i| {
            if (offset..offset + f).contains(&i) {
                offset + (i - offset + 1) % f
            } else {
                i
            }
        }));
        offset += f;
    }
    PermutationGroup::new(degree, gens)
}

/// Rotation and reflection of an `n`-gon. `n = 2` is realised as `C2 × C2` on four points,
/// since the natural action of the 2-gon is not faithful.
fn build_dihedral(n: u64) -> Result<PermutationGroup> {
    if n < 2 {
        return Err(Error::invalid("dihedral group needs n >= 2"));
    }
    if n == 2 {
        return build_abelian(&[2, 2]);
    }
    let d = degree_of(n)?;
    let rotation = perm_from_fn(d, |i| (i + 1) % d);
    let reflection = perm_from_fn(d, |i| (d - i) % d);
    PermutationGroup::new(d, vec![rotation, reflection])
}

/// Left-regular action of `⟨a, x | a^{2n}, x^2 = a^n, x^-1 a x = a^-1⟩` on the
/// `4n` words `a^i x^j`, indexed as `i + 2n·j`.
fn build_dicyclic(n: u64) -> Result<PermutationGroup> {
    if n < 2 {
        return Err(Error::invalid("dicyclic group needs n >= 2"));
    }
    let half = degree_of(2 * n)?;
    let d = degree_of(4 * n)?;
    let nn = n as usize;
    let a = perm_from_fn(d, |idx| {
        let (i, j) = (idx % half, idx / half);
        (i + 1) % half + half * j
    });
    // x·a^i = a^-i·x and x·a^i·x = a^(n-i).
    let x = perm_from_fn(d, |idx| {
        let (i, j) = (idx % half, idx / half);
        if j == 0 {
            (half - i) % half + half
        } else {
            (nn + half - i) % half
        }
    });
    PermutationGroup::new(d, vec![a, x])
}

fn build_symmetric(n: u64) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::invalid("symmetric group needs n >= 1"));
    }
    let d = degree_of(n)?;
    let gens = match d {
        1 => vec![],
        2 => vec![perm_from_fn(2, |i| 1 - i)],
        _ => vec![
            perm_from_fn(d, |i| match i {
                0 => 1,
                1 => 0,
                _ => i,
            }),
            perm_from_fn(d, |i| (i + 1) % d),
        ],
    };
    PermutationGroup::new(d, gens)
}

/// Generated by the 3-cycles `(1 2 i)` for `3 <= i <= n`.
fn build_alternating(n: u64) -> Result<PermutationGroup> {
    if n < 3 {
        return Err(Error::invalid("alternating group needs n >= 3"));
    }
    let d = degree_of(n)?;
    let gens = (2..d)
        .map(|t| {
            perm_from_fn(d, |i| {
                if i == 0 {
                    1
                } else if i == 1 {
                    t
                } else if i == t {
                    0
                } else {
                    i
                }
            })
        })
        .collect();
    PermutationGroup::new(d, gens)
}

/// Realised on `m + n` points: `a` translates `Z_m`, `b` multiplies `Z_m` by `k`
/// and cycles the last `n` points, so `b a b^-1 = a^k` and the action is faithful
/// even when `k` has order smaller than `n`.
fn build_semidirect(m: u64, n: u64, k: u64) -> Result<PermutationGroup> {
    if m < 2 || n < 2 {
        return Err(Error::invalid("semidirect product needs m >= 2 and n >= 2"));
    }
    let k = k % m;
    if gcd_u64(k, m) != 1 {
        return Err(Error::invalid(format!("k = {k} is not a unit modulo {m}")));
    }
    let mut power = 1u64;
    for _ in 0..n {
        power = power * k % m;
    }
    if power != 1 % m {
        return Err(Error::invalid(format!("{k}^{n} is not 1 modulo {m}")));
    }
    let (mu, nu) = (degree_of(m)?, degree_of(n)?);
    let d = degree_of(m + n)?;
    let a = perm_from_fn(d, |i| if i < mu { (i + 1) % mu } else { i });
    let b = perm_from_fn(d, |i| {
        if i < mu {
            (i as u64 * k % m) as usize
        } else {
            mu + (i - mu + 1) % nu
        }
    });
    PermutationGroup::new(d, vec![a, b])
}

pub fn cyclic(n: u64) -> Result<PermutationGroup> {
    build_cyclic(n)
}

pub fn abelian(invariant_factors: &[u64]) -> Result<PermutationGroup> {
    build_abelian(invariant_factors)
}

pub fn dihedral(n: u64) -> Result<PermutationGroup> {
    build_dihedral(n)
}

pub fn dicyclic(n: u64) -> Result<PermutationGroup> {
    build_dicyclic(n)
}

pub fn symmetric(n: u64) -> Result<PermutationGroup> {
    FamilySpec::Symmetric(n).build()
}

pub fn alternating(n: u64) -> Result<PermutationGroup> {
    FamilySpec::Alternating(n).build()
}

pub fn semidirect_cyclic(m: u64, n: u64, k: u64) -> Result<PermutationGroup> {
    build_semidirect(m, n, k)
}

/// `G × H` acting on the disjoint union of their point sets.
pub fn direct_product(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup> {
    direct_product_with_cap(g, h, g.cap().max(h.cap()))
}

pub fn direct_product_with_cap(
    g: &PermutationGroup,
    h: &PermutationGroup,
    cap: usize,
) -> Result<PermutationGroup> {
    let order = g.order()?.checked_mul(h.order()?);
    if order.is_none_or(|o| o > cap as u64) {
        return Err(Error::CapExceeded { cap });
    }
    let degree = g.degree() + h.degree();
    if degree > crate::permutation::MAX_DEGREE {
        return Err(Error::invalid(format!("degree {degree} is too large")));
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| x.embed(0, degree))
        .chain(h.generators().iter().map(|y| y.embed(g.degree(), degree)))
        .collect();
    Ok(PermutationGroup::new(degree, gens)?.with_cap(cap))
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(xs: &[u64]) -> String {
            xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            FamilySpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            FamilySpec::Abelian(fs) => write!(f, "abelian:{}", join(fs)),
            FamilySpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            FamilySpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            FamilySpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            FamilySpec::Alternating(n) => write!(f, "alternating:{n}"),
            FamilySpec::DirectProduct(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product:{}", parts.join(","))
            }
            FamilySpec::SemidirectCyclic { m, n, k } => write!(f, "semidirect:{m},{n},{k}"),
        }
    }
}

fn parse_params(family: &str, text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("{family}: bad parameter {t:?}")))
        })
        .collect()
}

fn parse_simple(family: &str, params: &str) -> Result<FamilySpec> {
    let ps = parse_params(family, params)?;
    let one = |ps: &[u64]| -> Result<u64> {
        match ps {
            [x] => Ok(*x),
            _ => Err(Error::invalid(format!("{family} takes exactly one parameter"))),
        }
    };
    Ok(match family {
        "cyclic" => FamilySpec::Cyclic(one(&ps)?),
        "abelian" => FamilySpec::Abelian(ps),
        "dihedral" => FamilySpec::Dihedral(one(&ps)?),
        "dicyclic" => FamilySpec::Dicyclic(one(&ps)?),
        "symmetric" => FamilySpec::Symmetric(one(&ps)?),
        "alternating" => FamilySpec::Alternating(one(&ps)?),
        "semidirect" => match ps[..] {
            [m, n, k] => FamilySpec::SemidirectCyclic { m, n, k },
            _ => return Err(Error::invalid("semidirect takes three parameters m,n,k")),
        },
        other => return Err(Error::invalid(format!("unknown family {other:?}"))),
    })
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("family spec {s:?} lacks ':'")))?;
        if family != "product" {
            return parse_simple(family, rest);
        }
        // Factors are separated by commas; a token containing ':' starts a new factor.
        let mut factors: Vec<(String, String)> = Vec::new();
        for token in rest.split(',') {
            match token.split_once(':') {
                Some((fam, p)) => factors.push((fam.trim().to_string(), p.to_string())),
                None => match factors.last_mut() {
                    Some((_, params)) => {
                        params.push(',');
                        params.push_str(token);
                    }
                    None => return Err(Error::invalid(format!("product factor {token:?} lacks a family"))),
                },
            }
        }
        if factors.is_empty() {
            return Err(Error::invalid("product needs at least one factor"));
        }
        let parts = factors
            .iter()
            .map(|(fam, p)| {
                if fam == "product" {
                    Err(Error::invalid("nested products are not supported"))
                } else {
                    parse_simple(fam, p)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilySpec::DirectProduct(parts))
    }
}

/// Constructor specs with closed-form order at most `max_order`, in a fixed order.
///
/// Covers cyclic, non-cyclic abelian, dihedral, dicyclic, symmetric and
/// alternating groups, every valid non-trivial `semidirect:m,n,k` with `k < m`,
/// and direct products of small non-abelian groups with cyclic groups.
pub fn fixture_specs(max_order: u64) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(FamilySpec::Cyclic(n));
    }
    abelian_invariant_lists(max_order, &mut out);
    for n in 2..=max_order / 2 {
        out.push(FamilySpec::Dihedral(n));
    }
    for n in 2..=max_order / 4 {
        out.push(FamilySpec::Dicyclic(n));
    }
    for n in 1.. {
        let s = FamilySpec::Symmetric(n);
        if s.order().is_none_or(|o| o > max_order) {
            break;
        }
        out.push(s);
    }
    for n in 3.. {
        let a = FamilySpec::Alternating(n);
        if a.order().is_none_or(|o| o > max_order) {
            break;
        }
        out.push(a);
    }
    for m in 3..=max_order / 2 {
        for n in 2..=max_order / m {
            for k in 2..m {
                if build_semidirect(m, n, k).is_ok() {
                    out.push(FamilySpec::SemidirectCyclic { m, n, k });
                }
            }
        }
    }
    let bases = [
        FamilySpec::Symmetric(3),
        FamilySpec::Dihedral(4),
        FamilySpec::Dicyclic(2),
        FamilySpec::Alternating(4),
        FamilySpec::Dihedral(5),
    ];
    for base in bases {
        let bo = base.order().expect("small");
        for c in 2..=max_order / bo {
            out.push(FamilySpec::DirectProduct(vec![base.clone(), FamilySpec::Cyclic(c)]));
        }
    }
    out
}

/// Invariant-factor lists `d1 | d2 | ... | dr` with `r >= 2` and product at most `max_order`.
fn abelian_invariant_lists(max_order: u64, out: &mut Vec<FamilySpec>) {
    fn extend(prefix: &mut Vec<u64>, product: u64, max_order: u64, out: &mut Vec<FamilySpec>) {
        let last = *prefix.last().expect("non-empty");
        if prefix.len() >= 2 {
            out.push(FamilySpec::Abelian(prefix.clone()));
        }
        let mut next = last;
        while product * next <= max_order {
            prefix.push(next);
            extend(prefix, product * next, max_order, out);
            prefix.pop();
            next += last;
        }
    }
    for first in 2..=max_order {
        if first * first > max_order {
            break;
        }
        let mut prefix = vec![first];
        extend(&mut prefix, first, max_order, out);
    }
}
