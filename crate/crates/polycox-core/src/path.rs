//! Composite 2-cells of the free (2,1)-category on a 2-polygraph.
//!
//! A [`Path2`] is a source word plus a list of positioned, signed rule
//! applications. Two paths denote the same 2-cell when they agree after
//! cancelling adjacent inverse steps and sorting steps that act on disjoint
//! factors so that the one further left comes first; [`normalize_path`]
//! computes that canonical form.

use crate::error::{Error, Result};
use crate::word::{apply_step, Dir, Letter, Polygraph2, RuleId, Word};

/// One whiskered rewriting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub rule: RuleId,
    pub dir: Dir,
    /// 0-based offset of the rewritten factor in the word the step acts on.
    pub pos: usize,
}

impl Step {
    pub fn new(rule: RuleId, dir: Dir, pos: usize) -> Self {
        Step { rule, dir, pos }
    }

    pub fn fwd(rule: RuleId, pos: usize) -> Self {
        Step { rule, dir: Dir::Pos, pos }
    }

    pub fn inverse(self) -> Self {
        Step { dir: self.dir.flip(), ..self }
    }

    fn in_len(&self, p: &Polygraph2) -> usize {
        p.rules[self.rule].input(self.dir).len()
    }

    fn out_len(&self, p: &Polygraph2) -> usize {
        p.rules[self.rule].output(self.dir).len()
    }
}

/// A composite 2-cell: a source word and the steps applied to it in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path2 {
    pub source: Word,
    pub steps: Vec<Step>,
}

impl Path2 {
    pub fn identity(w: Word) -> Self {
        Path2 { source: w, steps: Vec::new() }
    }

    pub fn single(source: Word, step: Step) -> Self {
        Path2 { source, steps: vec![step] }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every intermediate word, starting with the source.
    pub fn words(&self, p: &Polygraph2) -> Result<Vec<Word>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.source.clone());
        for s in &self.steps {
            let next = apply_step(p, out.last().unwrap(), s.rule, s.pos, s.dir)?;
            out.push(next);
        }
        Ok(out)
    }

    /// The target word, obtained by folding the steps over the source.
    pub fn target(&self, p: &Polygraph2) -> Result<Word> {
        let mut cur = self.source.clone();
        for s in &self.steps {
            cur = apply_step(p, &cur, s.rule, s.pos, s.dir)?;
        }
        Ok(cur)
    }

    /// Appends one step, checking it applies.
    pub fn push(&mut self, p: &Polygraph2, step: Step) -> Result<()> {
        let t = self.target(p)?;
        apply_step(p, &t, step.rule, step.pos, step.dir)?;
        self.steps.push(step);
        Ok(())
    }

    /// The sub-path made of the steps in `range`, starting from the word
    /// reached before the first of them.
    pub fn slice(&self, p: &Polygraph2, from: usize, to: usize) -> Result<Path2> {
        let words = self.words(p)?;
        Ok(Path2 { source: words[from].clone(), steps: self.steps[from..to].to_vec() })
    }
}

/// `f ⋆ g`; requires the target of `f` to be the source of `g`.
pub fn compose(p: &Polygraph2, f: &Path2, g: &Path2) -> Result<Path2> {
    let t = f.target(p)?;
    if t != g.source {
        return Err(Error::Composition(format!(
            "target {} does not match source {}",
            p.format_word(&t),
            p.format_word(&g.source)
        )));
    }
    let mut steps = f.steps.clone();
    steps.extend_from_slice(&g.steps);
    Ok(Path2 { source: f.source.clone(), steps })
}

/// Composes a non-empty list of paths left to right.
pub fn compose_all(p: &Polygraph2, parts: &[Path2]) -> Result<Path2> {
    let mut it = parts.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Composition("nothing to compose".into()))?
        .clone();
    it.try_fold(first, |acc, g| compose(p, &acc, g))
}

/// The inverse 2-cell: steps reversed with directions flipped.
pub fn inverse(p: &Polygraph2, f: &Path2) -> Result<Path2> {
    let source = f.target(p)?;
    let steps = f.steps.iter().rev().map(|s| s.inverse()).collect();
    Ok(Path2 { source, steps })
}

/// `u f v`: the path acting inside the context `u _ v`.
pub fn whisker(u: &[Letter], f: &Path2, v: &[Letter]) -> Path2 {
    let mut source = u.to_vec();
    source.extend_from_slice(&f.source);
    source.extend_from_slice(v);
    let steps = f.steps.iter().map(|s| Step { pos: s.pos + u.len(), ..*s }).collect();
    Path2 { source, steps }
}

/// Which rewrite [`normalize_path_with`] tries first at each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Priority {
    CancelFirst,
    SwapFirst,
}

fn cancel_once(steps: &mut Vec<Step>) -> bool {
    for i in 0..steps.len().saturating_sub(1) {
        let (a, b) = (steps[i], steps[i + 1]);
        if a.rule == b.rule && a.pos == b.pos && a.dir != b.dir {
            steps.drain(i..i + 2);
            return true;
        }
    }
    false
}

fn swap_once(p: &Polygraph2, steps: &mut [Step]) -> bool {
    for i in 0..steps.len().saturating_sub(1) {
        let (a, b) = (steps[i], steps[i + 1]);
        // `b` acts entirely to the left of what `a` produced: move it first.
        if b.pos + b.in_len(p) <= a.pos {
            let shift = b.out_len(p) as isize - b.in_len(p) as isize;
            steps[i] = b;
            steps[i + 1] = Step { pos: (a.pos as isize + shift) as usize, ..a };
            return true;
        }
    }
    false
}

/// Canonical representative of `f` modulo exchange and inverse cancellation.
pub fn normalize_path(p: &Polygraph2, f: &Path2) -> Path2 {
    normalize_path_with(p, f, Priority::CancelFirst)
}

pub fn normalize_path_with(p: &Polygraph2, f: &Path2, priority: Priority) -> Path2 {
    let mut steps = f.steps.clone();
    loop {
        let changed = match priority {
            Priority::CancelFirst => cancel_once(&mut steps) || swap_once(p, &mut steps),
            Priority::SwapFirst => swap_once(p, &mut steps) || cancel_once(&mut steps),
        };
        if !changed {
            break;
        }
    }
    Path2 { source: f.source.clone(), steps }
}

/// Whether `f` and `g` denote the same 2-cell (same boundary, same canonical
/// form). Paths that do not apply return `false`.
pub fn paths_equal(p: &Polygraph2, f: &Path2, g: &Path2) -> bool {
    if f.source != g.source {
        return false;
    }
    match (f.target(p), g.target(p)) {
        (Ok(a), Ok(b)) if a == b => normalize_path(p, f).steps == normalize_path(p, g).steps,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Generators r,s,t with the three commutations of A1×A1×A1.
    fn cube() -> Polygraph2 {
        let mut p = Polygraph2::new(["r", "s", "t"]).unwrap();
        p.add_rule_str("g_rs", "sr", "rs").unwrap();
        p.add_rule_str("g_rt", "tr", "rt").unwrap();
        p.add_rule_str("g_st", "ts", "st").unwrap();
        p
    }

    #[test]
    fn permutohedron_source_branch() {
        let p = cube();
        let (rs, rt, st) = (0, 1, 2);
        let f = Path2 {
            source: p.parse_word("tsr").unwrap(),
            steps: vec![Step::fwd(st, 0), Step::fwd(rt, 1), Step::fwd(rs, 0)],
        };
        assert_eq!(p.format_word(&f.target(&p).unwrap()), "rst");
        let id = Path2::identity(f.target(&p).unwrap());
        assert_eq!(compose(&p, &f, &id).unwrap(), f);
        let back = compose(&p, &f, &inverse(&p, &f).unwrap()).unwrap();
        assert!(normalize_path(&p, &back).is_identity());
    }

    #[test]
    fn whisker_shifts_offsets() {
        let p = cube();
        let f = Path2::single(p.parse_word("tr").unwrap(), Step::fwd(1, 0));
        let w = whisker(&p.parse_word("s").unwrap(), &f, &p.parse_word("srt").unwrap());
        assert_eq!(p.format_word(&w.source), "strsrt");
        assert_eq!(w.steps, vec![Step::fwd(1, 1)]);
        assert_eq!(p.format_word(&w.target(&p).unwrap()), "srtsrt");
        assert_eq!(whisker(&[], &f, &[]), f);
    }

    #[test]
    fn disjoint_steps_sort_left_first() {
        let p = cube();
        // s·tr·s·rt: forward g_rt at 1, then backward g_rt at 4, in either order.
        let src = p.parse_word("strsrt").unwrap();
        let a = Path2 { source: src.clone(), steps: vec![Step::fwd(1, 1), Step::new(1, Dir::Neg, 4)] };
        let b = Path2 { source: src, steps: vec![Step::new(1, Dir::Neg, 4), Step::fwd(1, 1)] };
        assert_eq!(normalize_path(&p, &b), a);
        assert!(paths_equal(&p, &a, &b));
        assert_eq!(p.format_word(&a.target(&p).unwrap()), "srtstr");
    }

    #[test]
    fn inverse_of_single_step_and_identity() {
        let p = cube();
        let f = Path2::single(p.parse_word("ts").unwrap(), Step::fwd(2, 0));
        let g = inverse(&p, &f).unwrap();
        assert_eq!(g.steps, vec![Step::new(2, Dir::Neg, 0)]);
        assert_eq!(inverse(&p, &g).unwrap(), f);
        let e = Path2::identity(vec![0]);
        assert_eq!(inverse(&p, &e).unwrap(), e);
    }

    #[test]
    fn different_targets_are_not_equal() {
        let p = cube();
        let f = Path2::single(p.parse_word("ts").unwrap(), Step::fwd(2, 0));
        let g = Path2::identity(p.parse_word("ts").unwrap());
        assert!(!paths_equal(&p, &f, &g));
    }

    #[test]
    fn insertions_next_to_each_other_commute() {
        // A deletion rule u ⇒ 1 used backwards inserts u; inserting twice into
        // the empty word in either order is the same 2-cell.
        let mut p = Polygraph2::new(["u"]).unwrap();
        p.add_rule_str("iota", "u", "").unwrap();
        let a = Path2 { source: vec![], steps: vec![Step::new(0, Dir::Neg, 0), Step::new(0, Dir::Neg, 0)] };
        let b = Path2 { source: vec![], steps: vec![Step::new(0, Dir::Neg, 0), Step::new(0, Dir::Neg, 1)] };
        assert!(paths_equal(&p, &a, &b));
    }
}
