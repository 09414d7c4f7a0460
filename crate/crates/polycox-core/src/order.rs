//! Termination orders on words.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::word::{Letter, Polygraph2, RuleId, Word};

/// Outcome of comparing two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// A well-founded order on words, compatible with concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminationOrder {
    /// Length first, then lexicographic with `rank[g]` as the weight of
    /// generator `g` (a larger rank is a larger letter).
    Deglex { rank: Vec<u32> },
    /// The order used for Garside presentations: number of letters first,
    /// then the lengths of the letters read from the right, where a longer
    /// rightmost letter is larger. Remaining ties are broken
    /// lexicographically on generator indices so the order is total.
    GarsideWreath { lengths: Vec<u32> },
    /// An explicit finite table of `(greater, smaller)` pairs.
    UserTable { pairs: Vec<(Word, Word)> },
}

impl TerminationOrder {
    /// Deglex order from a precedence list, greatest generator first
    /// (`["t", "s", "a"]` means `t > s > a`).
    pub fn deglex(p: &Polygraph2, greatest_first: &[&str]) -> Result<Self> {
        let n = p.num_generators();
        if greatest_first.len() != n {
            return Err(Error::Input(format!(
                "precedence lists {} generators, presentation has {n}",
                greatest_first.len()
            )));
        }
        let mut rank = vec![u32::MAX; n];
        for (i, name) in greatest_first.iter().enumerate() {
            let g = p
                .generator(name)
                .ok_or_else(|| Error::Input(format!("unknown generator {name:?} in precedence")))?;
            if rank[g as usize] != u32::MAX {
                return Err(Error::Input(format!("generator {name:?} listed twice in precedence")));
            }
            rank[g as usize] = (n - 1 - i) as u32;
        }
        Ok(TerminationOrder::Deglex { rank })
    }

    /// Deglex order in which generator indices are their own ranks.
    pub fn deglex_by_index(n: usize) -> Self {
        TerminationOrder::Deglex { rank: (0..n as u32).collect() }
    }

    pub fn compare(&self, a: &[Letter], b: &[Letter]) -> Comparison {
        if a == b {
            return Comparison::Equal;
        }
        match self {
            TerminationOrder::Deglex { rank } => {
                let key = |w: &[Letter]| w.iter().map(|&x| rank[x as usize]).collect::<Vec<_>>();
                a.len().cmp(&b.len()).then_with(|| key(a).cmp(&key(b))).into()
            }
            TerminationOrder::GarsideWreath { lengths } => {
                let rev = |w: &[Letter]| w.iter().rev().map(|&x| lengths[x as usize]).collect::<Vec<_>>();
                a.len()
                    .cmp(&b.len())
                    .then_with(|| rev(a).cmp(&rev(b)))
                    .then_with(|| a.cmp(b))
                    .into()
            }
            TerminationOrder::UserTable { pairs } => {
                if pairs.iter().any(|(g, l)| g == a && l == b) {
                    Comparison::Greater
                } else if pairs.iter().any(|(g, l)| g == b && l == a) {
                    Comparison::Less
                } else {
                    Comparison::Incomparable
                }
            }
        }
    }
}

/// `Ok` when every rule is decreasing, otherwise the offending rules.
pub fn check_termination(p: &Polygraph2, order: &TerminationOrder) -> std::result::Result<(), Vec<RuleId>> {
    let bad: Vec<RuleId> = p
        .rules
        .iter()
        .enumerate()
        .filter(|(_, r)| order.compare(&r.lhs, &r.rhs) != Comparison::Greater)
        .map(|(i, _)| i)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}
