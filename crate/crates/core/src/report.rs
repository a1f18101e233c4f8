//! Verdicts shared by every bound and lemma check.

use std::fmt;

use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    HypothesisNotMet,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::Violated => "violated",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
        }
    }

    pub fn is_violation(self) -> bool {
        self == Verdict::Violated
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How `lhs` is required to relate to `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        }
    }

    fn verdict(self, lhs: &Rational, rhs: &Rational) -> Verdict {
        use std::cmp::Ordering::*;
        match (self, lhs.cmp(rhs)) {
            (Relation::Equal, Equal) => Verdict::Holds,
            (Relation::Equal, _) => Verdict::Violated,
            (_, Equal) => Verdict::Equality,
            (Relation::AtMost, Less) | (Relation::AtLeast, Greater) => Verdict::Holds,
            _ => Verdict::Violated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub subject: String,
    pub bound_name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl BoundReport {
    /// Report whose verdict is decided by comparing `lhs` with `rhs`.
    pub fn compare(
        subject: impl Into<String>,
        bound_name: impl Into<String>,
        lhs: Rational,
        rhs: Rational,
        relation: Relation,
    ) -> Self {
        let verdict = relation.verdict(&lhs, &rhs);
        BoundReport {
            subject: subject.into(),
            bound_name: bound_name.into(),
            lhs,
            rhs,
            relation,
            verdict,
            note: None,
        }
    }

    /// Report for a group outside the bound's hypothesis; both sides are still recorded.
    pub fn vacuous(
        subject: impl Into<String>,
        bound_name: impl Into<String>,
        lhs: Rational,
        rhs: Rational,
        relation: Relation,
        reason: impl Into<String>,
    ) -> Self {
        BoundReport {
            subject: subject.into(),
            bound_name: bound_name.into(),
            lhs,
            rhs,
            relation,
            verdict: Verdict::HypothesisNotMet,
            note: Some(reason.into()),
        }
    }

    pub(crate) fn violate(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Violated;
        self.note = Some(reason.into());
        self
    }
}

/// `subject | bound | lhs REL rhs | verdict[ | note]`
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} {} {} | {}",
            self.subject,
            self.bound_name,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            self.verdict
        )?;
        if let Some(note) = &self.note {
            write!(f, " | {note}")?;
        }
        Ok(())
    }
}
