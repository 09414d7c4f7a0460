//! Critical branchings, homotopical completion and generating triple
//! confluences.
//!
//! [`homotopical_complete_with`] is Knuth–Bendix completion that also records
//! a 3-cell for every critical branching. How a branching is joined is left to
//! a [`Resolver`]: the default one rewrites both sides to normal form, while
//! the Garside construction plugs in the explicit joins of its nine families.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::cells::{Polygraph31, Sphere3, SphereEntry, ThreeCell};
use crate::error::{Error, Result};
use crate::order::{Comparison, TerminationOrder};
use crate::path::{compose, compose_all, paths_equal, whisker, Path2, Step};
use crate::word::{apply_step, step_budget, Dir, Matcher, Polygraph2, RuleId, Strategy, Word};

/// Classification of a local branching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchingKind {
    /// Both steps are the same.
    Aspherical,
    /// The steps act on disjoint factors.
    Peiffer,
    /// The factors overlap but the source has context around them.
    Overlap,
    /// A minimal overlap: the source is exactly the union of the factors.
    Critical,
}

/// A local branching: two forward steps out of the same word.
/// `left` is the step with the smaller `(position, rule)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branching {
    pub source: Word,
    pub left: Step,
    pub right: Step,
    pub kind: BranchingKind,
}

impl Branching {
    fn key(&self) -> (usize, Word, usize, usize, usize, usize) {
        (
            self.source.len(),
            self.source.clone(),
            self.left.pos,
            self.left.rule,
            self.right.pos,
            self.right.rule,
        )
    }
}

fn interval(p: &Polygraph2, s: &Step) -> (usize, usize) {
    (s.pos, s.pos + p.rules[s.rule].input(s.dir).len())
}

fn overlaps(p: &Polygraph2, a: &Step, b: &Step) -> bool {
    let ((a0, a1), (b0, b1)) = (interval(p, a), interval(p, b));
    a0 < b1 && b0 < a1
}

fn step_order(s: &Step) -> (usize, RuleId) {
    (s.pos, s.rule)
}

/// Classifies the branching `(a, b)` on `source`.
pub fn classify_branching(p: &Polygraph2, source: &[u32], a: &Step, b: &Step) -> BranchingKind {
    if a == b {
        return BranchingKind::Aspherical;
    }
    if !overlaps(p, a, b) {
        return BranchingKind::Peiffer;
    }
    let ((a0, a1), (b0, b1)) = (interval(p, a), interval(p, b));
    if a0.min(b0) == 0 && a1.max(b1) == source.len() {
        BranchingKind::Critical
    } else {
        BranchingKind::Overlap
    }
}

fn make_branching(source: Word, a: Step, b: Step) -> Branching {
    let (left, right) = if step_order(&a) <= step_order(&b) { (a, b) } else { (b, a) };
    Branching { source, left, right, kind: BranchingKind::Critical }
}

/// Critical branchings between rules `i` and `j` with `i`'s redex at offset 0.
fn overlaps_of(p: &Polygraph2, i: RuleId, j: RuleId, out: &mut Vec<Branching>) {
    let (li, lj) = (&p.rules[i].lhs, &p.rules[j].lhs);
    for k in 1..li.len().min(lj.len()) {
        if li[li.len() - k..] == lj[..k] {
            let mut source = li.clone();
            source.extend_from_slice(&lj[k..]);
            out.push(make_branching(source, Step::fwd(i, 0), Step::fwd(j, li.len() - k)));
        }
    }
    if lj.len() <= li.len() {
        for pos in 0..=li.len() - lj.len() {
            if (i != j || pos != 0) && li[pos..pos + lj.len()] == lj[..] {
                out.push(make_branching(li.clone(), Step::fwd(i, 0), Step::fwd(j, pos)));
            }
        }
    }
}

fn branchings_between(p: &Polygraph2, i: RuleId, j: RuleId) -> Vec<Branching> {
    let mut out = Vec::new();
    overlaps_of(p, i, j, &mut out);
    if i != j {
        overlaps_of(p, j, i, &mut out);
    }
    out
}

fn sort_dedup(mut v: Vec<Branching>) -> Vec<Branching> {
    v.sort_by_key(|b| b.key());
    v.dedup();
    v
}

/// All critical branchings (proper overlaps and inclusions), each once.
pub fn critical_branchings(p: &Polygraph2) -> Vec<Branching> {
    let mut out = Vec::new();
    for i in 0..p.rules.len() {
        for j in i..p.rules.len() {
            out.extend(branchings_between(p, i, j));
        }
    }
    sort_dedup(out)
}

/// How a resolver answers a branching.
#[derive(Clone, Debug)]
pub enum Resolution {
    /// Paths continuing the left and right steps. When they end at different
    /// words the engine adjoins a rule between the two ends, named by
    /// `rule_name` (name, label) if given.
    Join { left: Path2, right: Path2, rule_name: Option<(String, String)> },
    /// Not decidable yet (some needed rule is still missing); retry later.
    Defer,
}

/// Strategy for joining the two sides of a critical branching.
pub trait Resolver {
    fn resolve(&mut self, p: &Polygraph2, b: &Branching) -> Result<Resolution>;

    /// Called after the engine adjoins rule `id`.
    fn rule_added(&mut self, _p: &Polygraph2, _id: RuleId) {}
}

/// Joins each side by rewriting it to normal form with a fixed strategy.
#[derive(Clone, Debug, Default)]
pub struct NormalFormResolver {
    pub strategy: Strategy,
}

impl Resolver for NormalFormResolver {
    fn resolve(&mut self, p: &Polygraph2, b: &Branching) -> Result<Resolution> {
        let m = Matcher::new(p);
        let budget = step_budget();
        let lt = apply_step(p, &b.source, b.left.rule, b.left.pos, b.left.dir)?;
        let rt = apply_step(p, &b.source, b.right.rule, b.right.pos, b.right.dir)?;
        let (_, left) = m.normalize(&lt, self.strategy, budget)?;
        let (_, right) = m.normalize(&rt, self.strategy, budget)?;
        Ok(Resolution::Join { left, right, rule_name: None })
    }
}

/// Limits on the completion loop.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_rules: usize,
    pub max_branchings: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_rules: 10_000, max_branchings: 100_000 }
    }
}

/// Output of a completion run.
#[derive(Clone, Debug)]
pub struct Completion {
    pub result: Polygraph31,
    /// Rules adjoined by completion, in order of creation.
    pub added_rules: Vec<RuleId>,
    /// The critical branching each 3-cell was built from (same indexing as
    /// `result.cells`).
    pub cell_branchings: Vec<Branching>,
    /// Number of branchings examined.
    pub processed: usize,
}

/// Homotopical completion with normal-form joins.
pub fn homotopical_complete(p: &Polygraph2, order: &TerminationOrder) -> Result<Polygraph31> {
    Ok(homotopical_complete_with(p, order, &mut NormalFormResolver::default(), Budgets::default())?.result)
}

/// Homotopical completion driven by an arbitrary resolver.
///
/// Branchings are processed smallest source first (length, then generator
/// indices), then by the positions and rules of their steps. A new rule is
/// oriented by `order` and stored on the target side of its 3-cell.
pub fn homotopical_complete_with(
    p: &Polygraph2,
    order: &TerminationOrder,
    resolver: &mut dyn Resolver,
    budgets: Budgets,
) -> Result<Completion> {
    p.validate()?;
    if let Err(bad) = crate::order::check_termination(p, order) {
        return Err(Error::Termination(bad.into_iter().map(|r| p.rules[r].name.clone()).collect()));
    }
    let mut poly = p.clone();
    let mut cells = Vec::new();
    let mut cell_branchings = Vec::new();
    let mut added_rules = Vec::new();
    let mut seen: HashSet<(usize, Word, usize, usize, usize, usize)> = HashSet::new();
    let mut heap: BinaryHeap<Reverse<((usize, Word, usize, usize, usize, usize), usize)>> = BinaryHeap::new();
    let mut pool: Vec<Branching> = Vec::new();

    let enqueue = |b: Branching,
                       seen: &mut HashSet<_>,
                       heap: &mut BinaryHeap<_>,
                       pool: &mut Vec<Branching>| {
        let k = b.key();
        if seen.insert(k.clone()) {
            pool.push(b);
            heap.push(Reverse((k, pool.len() - 1)));
        }
    };
    for b in critical_branchings(&poly) {
        enqueue(b, &mut seen, &mut heap, &mut pool);
    }

    let mut processed = 0usize;
    let mut deferred: Vec<usize> = Vec::new();
    let mut progress = false;
    loop {
        let Some(Reverse((_, idx))) = heap.pop() else {
            if deferred.is_empty() {
                break;
            }
            if !progress {
                return Err(Error::Coherence(format!(
                    "{} branchings could not be resolved (first on {})",
                    deferred.len(),
                    poly.format_word(&pool[deferred[0]].source)
                )));
            }
            progress = false;
            for i in deferred.drain(..) {
                heap.push(Reverse((pool[i].key(), i)));
            }
            continue;
        };
        processed += 1;
        if processed > budgets.max_branchings {
            return Err(Error::Divergence(format!("more than {} branchings examined", budgets.max_branchings)));
        }
        let b = pool[idx].clone();
        let (left, right, rule_name) = match resolver.resolve(&poly, &b)? {
            Resolution::Defer => {
                deferred.push(idx);
                continue;
            }
            Resolution::Join { left, right, rule_name } => (left, right, rule_name),
        };
        progress = true;
        let f = compose(&poly, &Path2::single(b.source.clone(), b.left), &left)?;
        let g = compose(&poly, &Path2::single(b.source.clone(), b.right), &right)?;
        let (ef, eg) = (f.target(&poly)?, g.target(&poly)?);
        let (src, tgt) = if ef == eg {
            (f, g)
        } else {
            if poly.rules.len() >= budgets.max_rules {
                return Err(Error::Divergence(format!("more than {} rules", budgets.max_rules)));
            }
            let (big, small, src, mut tgt) = match order.compare(&ef, &eg) {
                Comparison::Greater => (ef, eg, g, f),
                Comparison::Less => (eg, ef, f, g),
                _ => return Err(Error::Orientation(poly.format_word(&ef), poly.format_word(&eg))),
            };
            let id = poly.rules.len();
            let (name, label) = rule_name.unwrap_or_else(|| (format!("rule{id}"), format!("rule{id}")));
            poly.add_labelled_rule(name, big.clone(), small, label)?;
            tgt.steps.push(Step::fwd(id, 0));
            added_rules.push(id);
            resolver.rule_added(&poly, id);
            for j in 0..=id {
                for nb in branchings_between(&poly, id, j) {
                    enqueue(nb, &mut seen, &mut heap, &mut pool);
                }
            }
            (src, tgt)
        };
        let n = cells.len();
        let label = poly.format_word(&b.source);
        cells.push(ThreeCell { name: format!("cell{n}"), src, tgt, label });
        cell_branchings.push(b);
    }
    let mut result = Polygraph31::new(poly);
    result.cells = cells;
    Ok(Completion { result, added_rules, cell_branchings, processed })
}

/// A critical triple branching: three distinct steps out of one word, each
/// overlapping another, covering the whole word. Steps are sorted by
/// `(position, rule)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleBranching {
    pub source: Word,
    pub steps: [Step; 3],
}

/// All critical triple branchings.
pub fn triple_critical_branchings(p: &Polygraph2) -> Vec<TripleBranching> {
    let mut found: HashSet<TripleBranching> = HashSet::new();
    for cb in critical_branchings(p) {
        let w = &cb.source;
        for (k, rule) in p.rules.iter().enumerate() {
            let lk = &rule.lhs;
            let lo_off = -(lk.len() as isize) + 1;
            for o in lo_off..w.len() as isize {
                let consistent = lk.iter().enumerate().all(|(i, &x)| {
                    let q = o + i as isize;
                    q < 0 || q >= w.len() as isize || w[q as usize] == x
                });
                if !consistent {
                    continue;
                }
                let lo = o.min(0);
                let hi = (o + lk.len() as isize).max(w.len() as isize);
                let mut source = vec![0; (hi - lo) as usize];
                for (i, &x) in w.iter().enumerate() {
                    source[(i as isize - lo) as usize] = x;
                }
                for (i, &x) in lk.iter().enumerate() {
                    source[(o + i as isize - lo) as usize] = x;
                }
                let shift = (-lo) as usize;
                let mut steps = [
                    Step::fwd(cb.left.rule, cb.left.pos + shift),
                    Step::fwd(cb.right.rule, cb.right.pos + shift),
                    Step::fwd(k, (o - lo) as usize),
                ];
                steps.sort_by_key(step_order);
                if steps[0] == steps[1] || steps[1] == steps[2] {
                    continue;
                }
                let ok = (0..3).all(|i| (0..3).any(|j| i != j && overlaps(p, &steps[i], &steps[j])));
                if ok {
                    found.insert(TripleBranching { source, steps });
                }
            }
        }
    }
    let mut v: Vec<_> = found.into_iter().collect();
    v.sort_by(|a, b| {
        (a.source.len(), &a.source, a.steps.map(|s| step_order(&s)))
            .cmp(&(b.source.len(), &b.source, b.steps.map(|s| step_order(&s))))
    });
    v
}

/// Finds the 3-cell attached to a local branching, by its minimal source.
pub struct CellIndex {
    map: HashMap<(Word, Step, Step), (usize, Dir)>,
}

/// A 3-cell located for a branching inside a larger word.
#[derive(Clone, Copy, Debug)]
pub struct Located {
    pub cell: usize,
    pub dir: Dir,
    pub lo: usize,
    pub hi: usize,
}

impl CellIndex {
    pub fn new(p: &Polygraph31) -> Self {
        let mut map = HashMap::new();
        for (i, c) in p.cells.iter().enumerate() {
            if let (Some(&a), Some(&b)) = (c.src.steps.first(), c.tgt.steps.first()) {
                map.entry((c.src.source.clone(), a, b)).or_insert((i, Dir::Pos));
                map.entry((c.src.source.clone(), b, a)).or_insert((i, Dir::Neg));
            }
        }
        CellIndex { map }
    }

    /// The cell whose oriented source starts with `a` and target with `b`,
    /// for two overlapping steps on `word`.
    pub fn locate(&self, p: &Polygraph2, word: &[u32], a: &Step, b: &Step) -> Option<Located> {
        let ((a0, a1), (b0, b1)) = (interval(p, a), interval(p, b));
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        let la = Step { pos: a.pos - lo, ..*a };
        let lb = Step { pos: b.pos - lo, ..*b };
        self.map
            .get(&(word[lo..hi].to_vec(), la, lb))
            .map(|&(cell, dir)| Located { cell, dir, lo, hi })
    }
}

/// The two steps of a Peiffer branching `(a, b)` on `w`, each rewritten to
/// act after the other: `(b after a, a after b)`.
pub fn exchange(p: &Polygraph2, a: &Step, b: &Step) -> (Step, Step) {
    let delta = |s: &Step| {
        let r = &p.rules[s.rule];
        r.output(s.dir).len() as isize - r.input(s.dir).len() as isize
    };
    if b.pos >= interval(p, a).1 {
        (Step { pos: (b.pos as isize + delta(a)) as usize, ..*b }, *a)
    } else {
        (*b, Step { pos: (a.pos as isize + delta(b)) as usize, ..*a })
    }
}

/// Builds 3-cell composites between positive paths with a common normal-form
/// target, by induction on the source along the termination order: equal
/// first steps are factored out, disjoint first steps are exchanged, and
/// overlapping first steps are bridged by the 3-cell of their branching.
pub struct Filler<'a> {
    p31: &'a Polygraph31,
    index: CellIndex,
    matcher: Matcher<'a>,
}

impl<'a> Filler<'a> {
    pub fn new(p31: &'a Polygraph31) -> Self {
        Filler { p31, index: CellIndex::new(p31), matcher: Matcher::new(&p31.base) }
    }

    pub fn index(&self) -> &CellIndex {
        &self.index
    }

    fn nf(&self, w: &[u32]) -> Result<Path2> {
        Ok(self.matcher.normalize(w, Strategy::Leftmost, step_budget())?.1)
    }

    /// A chain of entries going from `f` to `g`.
    pub fn fill(&self, f: &Path2, g: &Path2) -> Result<Vec<SphereEntry>> {
        let b = &self.p31.base;
        if paths_equal(b, f, g) {
            return Ok(Vec::new());
        }
        let (Some(&a), Some(&c)) = (f.steps.first(), g.steps.first()) else {
            return Err(Error::Coherence("cannot relate an identity to a non-trivial 2-cell".into()));
        };
        if a.dir != Dir::Pos || c.dir != Dir::Pos {
            return Err(Error::Coherence("filler expects positive paths".into()));
        }
        let u = &f.source;
        let fa = Path2::single(u.clone(), a);
        let fc = Path2::single(u.clone(), c);
        let ftail = f.slice(b, 1, f.len())?;
        let gtail = g.slice(b, 1, g.len())?;
        let prefixed = |es: Vec<SphereEntry>, h: &Path2| -> Result<Vec<SphereEntry>> {
            es.iter().map(|e| e.precompose(b, h)).collect()
        };
        if a == c {
            return prefixed(self.fill(&ftail, &gtail)?, &fa);
        }
        let mut out = Vec::new();
        match classify_branching(b, u, &a, &c) {
            BranchingKind::Peiffer => {
                let (c_after_a, a_after_c) = exchange(b, &a, &c);
                let ua = ftail.source.clone();
                let uc = gtail.source.clone();
                let mid = apply_step(b, &ua, c_after_a.rule, c_after_a.pos, c_after_a.dir)?;
                let r = self.nf(&mid)?;
                let p1 = compose(b, &Path2::single(ua, c_after_a), &r)?;
                let p2 = compose(b, &Path2::single(uc, a_after_c), &r)?;
                out.extend(prefixed(self.fill(&ftail, &p1)?, &fa)?);
                out.extend(prefixed(self.fill(&p2, &gtail)?, &fc)?);
            }
            _ => {
                let loc = self
                    .index
                    .locate(b, u, &a, &c)
                    .ok_or_else(|| Error::Coherence(format!("no 3-cell for a branching on {}", b.format_word(u))))?;
                let cell = &self.p31.cells[loc.cell];
                let (s, t) = cell.oriented(loc.dir);
                let (l, rt) = (&u[..loc.lo], &u[loc.hi..]);
                let s = whisker(l, s, rt);
                let t = whisker(l, t, rt);
                let r = self.nf(&s.target(b)?)?;
                let stail = compose(b, &s.slice(b, 1, s.len())?, &r)?;
                let ttail = compose(b, &t.slice(b, 1, t.len())?, &r)?;
                out.extend(prefixed(self.fill(&ftail, &stail)?, &fa)?);
                out.push(SphereEntry::whiskered(self.p31, loc.cell, loc.dir, l, rt, None, Some(r))?);
                out.extend(prefixed(self.fill(&ttail, &gtail)?, &fc)?);
            }
        }
        Ok(out)
    }
}

/// For a pair of steps of a triple: the 3-cell face (if they overlap) and
/// the continuations of each step up to the face's common target.
fn face(
    filler: &Filler,
    w: &Word,
    x: &Step,
    y: &Step,
) -> Result<(Option<SphereEntry>, Path2, Path2)> {
    let p31 = filler.p31;
    let b = &p31.base;
    let wx = apply_step(b, w, x.rule, x.pos, x.dir)?;
    let wy = apply_step(b, w, y.rule, y.pos, y.dir)?;
    if !overlaps(b, x, y) {
        let (y_after_x, x_after_y) = exchange(b, x, y);
        return Ok((None, Path2::single(wx, y_after_x), Path2::single(wy, x_after_y)));
    }
    let loc = filler
        .index
        .locate(b, w, x, y)
        .ok_or_else(|| Error::Coherence(format!("no 3-cell for a branching on {}", b.format_word(w))))?;
    let (s, t) = p31.cells[loc.cell].oriented(loc.dir);
    let (l, r) = (&w[..loc.lo], &w[loc.hi..]);
    let s = whisker(l, s, r);
    let t = whisker(l, t, r);
    let entry = SphereEntry::whiskered(p31, loc.cell, loc.dir, l, r, None, None)?;
    Ok((Some(entry), s.slice(b, 1, s.len())?, t.slice(b, 1, t.len())?))
}

/// The 3-sphere generated by a critical triple branching `(f, g, h)`.
///
/// The faces for `(f,g)`, `(g,h)` and `(f,h)` are their 3-cells (or exchanges
/// when disjoint); the remaining three faces are filled by [`Filler`] between
/// paths continued to the normal form of the source.
pub fn generating_triple_confluence(p31: &Polygraph31, t: &TripleBranching) -> Result<Sphere3> {
    let filler = Filler::new(p31);
    let b = &p31.base;
    let w = &t.source;
    let [f, g, h] = t.steps;
    let single = |s: Step| Path2::single(w.clone(), s);
    let (face_a, f1, g1) = face(&filler, w, &f, &g)?;
    let (face_b, g2, h2) = face(&filler, w, &g, &h)?;
    let (face_c, f2, h1) = face(&filler, w, &f, &h)?;
    let h_dd = filler.nf(&f1.target(b)?)?;
    let f_dd = filler.nf(&h2.target(b)?)?;
    let g_dd = filler.nf(&f2.target(b)?)?;

    let source = compose_all(b, &[single(f), f1.clone(), h_dd.clone()])?;
    let target = compose_all(b, &[single(h), h2.clone(), f_dd.clone()])?;

    let pre = |es: Vec<SphereEntry>, s: Step| -> Result<Vec<SphereEntry>> {
        es.iter().map(|e| e.precompose(b, &single(s))).collect()
    };
    let mut lhs = Vec::new();
    if let Some(e) = face_a {
        lhs.push(e.postcompose(b, &h_dd)?);
    }
    lhs.extend(pre(
        filler.fill(&compose(b, &g1, &h_dd)?, &compose(b, &g2, &f_dd)?)?,
        g,
    )?);
    if let Some(e) = face_b {
        lhs.push(e.postcompose(b, &f_dd)?);
    }
    let mut rhs = Vec::new();
    rhs.extend(pre(
        filler.fill(&compose(b, &f1, &h_dd)?, &compose(b, &f2, &g_dd)?)?,
        f,
    )?);
    if let Some(e) = face_c {
        rhs.push(e.postcompose(b, &g_dd)?);
    }
    rhs.extend(pre(
        filler.fill(&compose(b, &h1, &g_dd)?, &compose(b, &h2, &f_dd)?)?,
        h,
    )?);
    let sphere = Sphere3 { source, target, lhs, rhs };
    sphere.check(p31)?;
    Ok(sphere)
}

/// All normal forms reachable from `w` by any sequence of forward steps.
pub fn reachable_normal_forms(
    m: &Matcher,
    p: &Polygraph2,
    w: &[u32],
    memo: &mut HashMap<Word, Vec<Word>>,
) -> Result<Vec<Word>> {
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let redexes = m.redexes(w);
    let out = if redexes.is_empty() {
        vec![w.to_vec()]
    } else {
        let mut acc: Vec<Word> = Vec::new();
        for (r, i) in redexes {
            let next = apply_step(p, w, r, i, Dir::Pos)?;
            for nf in reachable_normal_forms(m, p, &next, memo)? {
                if !acc.contains(&nf) {
                    acc.push(nf);
                }
            }
        }
        acc
    };
    memo.insert(w.to_vec(), out.clone());
    Ok(out)
}
