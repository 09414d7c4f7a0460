//! Words, 2-polygraphs and single rewriting steps.
//!
//! A word is a plain vector of generator indices; generator names only matter
//! for parsing and display. Rules are indexed by their position in the rule
//! list, and carry a unique string name used by the JSON formats.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::path::{Path2, Step};

/// A generator index. Indices are dense `0..n` within one presentation.
pub type Letter = u32;

/// A word of the free monoid over the generators.
pub type Word = Vec<Letter>;

/// Index of a rule within [`Polygraph2::rules`].
pub type RuleId = usize;

/// Direction of a rewriting step: forward along the rule, or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Pos,
    Neg,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Pos => Dir::Neg,
            Dir::Neg => Dir::Pos,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Dir::Pos => 1,
            Dir::Neg => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Dir> {
        match s {
            1 => Some(Dir::Pos),
            -1 => Some(Dir::Neg),
            _ => None,
        }
    }
}

/// A rewriting rule `lhs ⇒ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    /// Unique identifier, as used in the JSON formats.
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
    /// Display label (e.g. `γ_st`); defaults to the name.
    pub label: String,
}

impl Rule {
    /// The side consumed by a step in direction `dir`.
    pub fn input(&self, dir: Dir) -> &Word {
        match dir {
            Dir::Pos => &self.lhs,
            Dir::Neg => &self.rhs,
        }
    }

    /// The side produced by a step in direction `dir`.
    pub fn output(&self, dir: Dir) -> &Word {
        match dir {
            Dir::Pos => &self.rhs,
            Dir::Neg => &self.lhs,
        }
    }
}

/// A presentation: generators and oriented rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polygraph2 {
    pub generators: Vec<String>,
    pub rules: Vec<Rule>,
}

impl Polygraph2 {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self> {
        let p = Polygraph2 {
            generators: generators.into_iter().map(Into::into).collect(),
            rules: Vec::new(),
        };
        p.check_generators()?;
        Ok(p)
    }

    fn check_generators(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || g.contains('.') {
                return Err(Error::Input(format!("invalid generator name {g:?}")));
            }
            if let Some(j) = seen.insert(g.as_str(), i) {
                return Err(Error::Input(format!("generator {g:?} declared twice ({j} and {i})")));
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, name: &str) -> Option<Letter> {
        self.generators.iter().position(|g| g == name).map(|i| i as Letter)
    }

    pub fn rule_by_name(&self, name: &str) -> Option<RuleId> {
        self.rules.iter().position(|r| r.name == name)
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id]
    }

    /// Adds a rule after checking it is well formed. Returns its index.
    pub fn add_rule(&mut self, name: impl Into<String>, lhs: Word, rhs: Word) -> Result<RuleId> {
        let name = name.into();
        let label = name.clone();
        self.add_labelled_rule(name, lhs, rhs, label)
    }

    pub fn add_labelled_rule(
        &mut self,
        name: impl Into<String>,
        lhs: Word,
        rhs: Word,
        label: impl Into<String>,
    ) -> Result<RuleId> {
        let name = name.into();
        if lhs.is_empty() {
            return Err(Error::Input(format!("rule {name} has an empty left-hand side")));
        }
        self.check_word(&lhs)?;
        self.check_word(&rhs)?;
        if self.rule_by_name(&name).is_some() {
            return Err(Error::Input(format!("duplicate rule name {name}")));
        }
        self.rules.push(Rule { name, lhs, rhs, label: label.into() });
        Ok(self.rules.len() - 1)
    }

    /// Convenience for tests and examples: parses both sides.
    pub fn add_rule_str(&mut self, name: &str, lhs: &str, rhs: &str) -> Result<RuleId> {
        let l = self.parse_word(lhs)?;
        let r = self.parse_word(rhs)?;
        self.add_rule(name, l, r)
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|&&x| x as usize >= self.generators.len()) {
            Some(x) => Err(Error::Input(format!("letter {x} out of range"))),
            None => Ok(()),
        }
    }

    /// Checks every invariant of the presentation.
    pub fn validate(&self) -> Result<()> {
        self.check_generators()?;
        let mut names = HashMap::new();
        for (i, r) in self.rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(Error::Input(format!("rule {} has an empty left-hand side", r.name)));
            }
            self.check_word(&r.lhs)?;
            self.check_word(&r.rhs)?;
            if names.insert(r.name.as_str(), i).is_some() {
                return Err(Error::Input(format!("duplicate rule name {}", r.name)));
            }
        }
        Ok(())
    }

    fn single_char_names(&self) -> bool {
        self.generators.iter().all(|g| g.chars().count() == 1)
    }

    /// Parses a word. Names are separated by `.`; when every generator name
    /// is a single character the separators may be omitted.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let lookup = |name: &str| {
            self.generator(name)
                .ok_or_else(|| Error::Input(format!("unknown generator {name:?} in word {s:?}")))
        };
        if s.contains('.') {
            s.split('.').map(lookup).collect()
        } else if let Some(g) = self.generator(s) {
            Ok(vec![g])
        } else if self.single_char_names() {
            s.chars().map(|c| lookup(&c.to_string())).collect()
        } else {
            Err(Error::Input(format!("cannot split word {s:?}; separate names with '.'")))
        }
    }

    /// Formats a word in the same syntax [`Polygraph2::parse_word`] accepts.
    pub fn format_word(&self, w: &[Letter]) -> String {
        let names = w.iter().map(|&x| self.generators[x as usize].as_str());
        if self.single_char_names() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(".")
        }
    }

    pub fn display_rule(&self, id: RuleId) -> String {
        let r = &self.rules[id];
        format!("{}: {} => {}", r.name, self.format_word(&r.lhs), self.format_word(&r.rhs))
    }
}

impl fmt::Display for Polygraph2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        for i in 0..self.rules.len() {
            writeln!(f, "  {}", self.display_rule(i))?;
        }
        Ok(())
    }
}

fn occurs_at(w: &[Letter], pat: &[Letter], i: usize) -> bool {
    i + pat.len() <= w.len() && &w[i..i + pat.len()] == pat
}

/// All redexes `(rule, position)` of `w`, sorted by position then rule index.
pub fn find_redexes(p: &Polygraph2, w: &[Letter]) -> Vec<(RuleId, usize)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        for (r, rule) in p.rules.iter().enumerate() {
            if occurs_at(w, &rule.lhs, i) {
                out.push((r, i));
            }
        }
    }
    out
}

/// Applies rule `r` at offset `i` in direction `dir`.
pub fn apply_step(p: &Polygraph2, w: &[Letter], r: RuleId, i: usize, dir: Dir) -> Result<Word> {
    let rule = p
        .rules
        .get(r)
        .ok_or_else(|| Error::Step(format!("no rule with index {r}")))?;
    let (from, to) = (rule.input(dir), rule.output(dir));
    if !occurs_at(w, from, i) {
        return Err(Error::Step(format!(
            "rule {} ({:?}) does not match {} at offset {i}",
            rule.name,
            dir,
            p.format_word(w)
        )));
    }
    let mut out = Vec::with_capacity(w.len() + to.len() - from.len().min(w.len()));
    out.extend_from_slice(&w[..i]);
    out.extend_from_slice(to);
    out.extend_from_slice(&w[i + from.len()..]);
    Ok(out)
}

/// Which redex a normalization picks at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leftmost redex, lowest rule index on ties.
    #[default]
    Leftmost,
    /// Rightmost redex, highest rule index on ties.
    Rightmost,
}

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// The step budget: `POLYCOX_BUDGET_STEPS` when set, the default otherwise.
pub fn step_budget() -> usize {
    std::env::var("POLYCOX_BUDGET_STEPS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

/// A redex finder indexed by first letter, for repeated use on one polygraph.
pub struct Matcher<'a> {
    p: &'a Polygraph2,
    by_first: HashMap<Letter, Vec<RuleId>>,
}

impl<'a> Matcher<'a> {
    pub fn new(p: &'a Polygraph2) -> Self {
        let mut by_first: HashMap<Letter, Vec<RuleId>> = HashMap::new();
        for (r, rule) in p.rules.iter().enumerate() {
            by_first.entry(rule.lhs[0]).or_default().push(r);
        }
        Matcher { p, by_first }
    }

    pub fn redexes(&self, w: &[Letter]) -> Vec<(RuleId, usize)> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            if let Some(rs) = self.by_first.get(&w[i]) {
                out.extend(rs.iter().filter(|&&r| occurs_at(w, &self.p.rules[r].lhs, i)).map(|&r| (r, i)));
            }
        }
        out
    }

    fn pick(&self, w: &[Letter], strategy: Strategy) -> Option<(RuleId, usize)> {
        match strategy {
            Strategy::Leftmost => {
                for i in 0..w.len() {
                    if let Some(rs) = self.by_first.get(&w[i]) {
                        if let Some(&r) = rs.iter().find(|&&r| occurs_at(w, &self.p.rules[r].lhs, i)) {
                            return Some((r, i));
                        }
                    }
                }
                None
            }
            Strategy::Rightmost => self.redexes(w).into_iter().max_by_key(|&(r, i)| (i, r)),
        }
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        self.pick(w, Strategy::Leftmost).is_none()
    }

    pub fn normalize(&self, w: &[Letter], strategy: Strategy, budget: usize) -> Result<(Word, Path2)> {
        let mut cur = w.to_vec();
        let mut steps = Vec::new();
        while let Some((r, i)) = self.pick(&cur, strategy) {
            if steps.len() >= budget {
                return Err(Error::StepBudget(budget));
            }
            cur = apply_step(self.p, &cur, r, i, Dir::Pos)?;
            steps.push(Step { rule: r, dir: Dir::Pos, pos: i });
        }
        Ok((cur, Path2 { source: w.to_vec(), steps }))
    }

    /// Normal form only, without recording the path.
    pub fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        let budget = step_budget();
        let mut cur = w.to_vec();
        let mut n = 0;
        while let Some((r, i)) = self.pick(&cur, Strategy::Leftmost) {
            n += 1;
            if n > budget {
                return Err(Error::StepBudget(budget));
            }
            cur = apply_step(self.p, &cur, r, i, Dir::Pos)?;
        }
        Ok(cur)
    }
}

/// Reduces `w` to a redex-free word, returning it with the path taken.
pub fn normalize(p: &Polygraph2, w: &[Letter], strategy: Strategy) -> Result<(Word, Path2)> {
    p.check_word(w)?;
    Matcher::new(p).normalize(w, strategy, step_budget())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> Polygraph2 {
        let mut p = Polygraph2::new(["s", "t", "a"]).unwrap();
        p.add_rule_str("alpha", "ta", "as").unwrap();
        p.add_rule_str("beta", "st", "a").unwrap();
        p
    }

    #[test]
    fn redexes_of_sta() {
        let p = b3();
        let w = p.parse_word("sta").unwrap();
        assert_eq!(find_redexes(&p, &w), vec![(1, 0), (0, 1)]);
        assert!(find_redexes(&p, &[]).is_empty());
    }

    #[test]
    fn redexes_of_sasaa_in_completed_system() {
        let mut p = b3();
        p.add_rule_str("gamma", "sas", "aa").unwrap();
        p.add_rule_str("delta", "saa", "aat").unwrap();
        let w = p.parse_word("sasaa").unwrap();
        assert_eq!(find_redexes(&p, &w), vec![(2, 0), (3, 2)]);
    }

    #[test]
    fn steps_apply_and_invert() {
        let p = b3();
        let w = p.parse_word("sta").unwrap();
        let v = apply_step(&p, &w, 1, 0, Dir::Pos).unwrap();
        assert_eq!(p.format_word(&v), "aa");
        assert_eq!(apply_step(&p, &v, 1, 0, Dir::Neg).unwrap(), w);
        assert!(apply_step(&p, &w, 0, 0, Dir::Pos).is_err());
    }

    #[test]
    fn sast_gamma_step() {
        let mut p = b3();
        p.add_rule_str("gamma", "sas", "aa").unwrap();
        let w = p.parse_word("sast").unwrap();
        assert_eq!(p.format_word(&apply_step(&p, &w, 2, 0, Dir::Pos).unwrap()), "aat");
    }

    #[test]
    fn empty_lhs_rejected() {
        let mut p = b3();
        assert!(p.add_rule("bad", vec![], vec![0]).is_err());
        assert!(p.add_rule("ok", vec![0, 0], vec![]).is_ok());
    }

    #[test]
    fn word_syntax() {
        let p = Polygraph2::new(["s1", "s2"]).unwrap();
        let w = p.parse_word("s1.s2.s1").unwrap();
        assert_eq!(w, vec![0, 1, 0]);
        assert_eq!(p.format_word(&w), "s1.s2.s1");
        assert_eq!(p.parse_word("s2").unwrap(), vec![1]);
        assert!(p.parse_word("s1s2").is_err());
        let q = b3();
        assert_eq!(q.parse_word("s.t.a").unwrap(), q.parse_word("sta").unwrap());
    }

    #[test]
    fn normal_form_of_redex_free_word_is_itself() {
        let p = b3();
        let w = p.parse_word("aas").unwrap();
        let (nf, path) = normalize(&p, &w, Strategy::Leftmost).unwrap();
        assert_eq!(nf, w);
        assert!(path.steps.is_empty());
    }

    #[test]
    fn budget_catches_nontermination() {
        let mut p = Polygraph2::new(["a"]).unwrap();
        p.add_rule_str("grow", "a", "aa").unwrap();
        let m = Matcher::new(&p);
        assert_eq!(m.normalize(&[0], Strategy::Leftmost, 50).unwrap_err(), Error::StepBudget(50));
    }
}
