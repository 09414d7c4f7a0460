//! Tietze and Nielsen transformations, collapsible parts and homotopical
//! reduction.
//!
//! A [`CollapsiblePart`] lists cells to eliminate together with the cell each
//! one makes redundant:
//!
//! * a rule `u ⇒ x` (or its inverse) whose target is a single generator `x`
//!   not occurring in `u` eliminates `x`;
//! * a 3-cell in which some rule occurs exactly once, unwhiskered, eliminates
//!   that rule (it can be solved for in terms of the others);
//! * a 3-sphere in which some 3-cell occurs exactly once, bare, eliminates
//!   that 3-cell.
//!
//! The way to read each entry (which side, which step, whether to invert) is
//! supplied by the caller; nothing is searched for. [`homotopical_reduce`]
//! removes all listed and redundant cells and rewrites every surviving
//! boundary through the projection π.

use std::collections::{BTreeMap, BTreeSet};

use crate::cells::{Polygraph31, Sphere3, ThreeCell};
use crate::error::{Error, Result};
use crate::path::{compose, compose_all, inverse, normalize_path, whisker, Path2, Step};
use crate::word::{Dir, Letter, Polygraph2, RuleId, Word};

/// Which boundary of a 3-cell holds the redundant rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Src,
    Tgt,
}

/// A rule that eliminates a generator. With `invert == false` the rule reads
/// `u ⇒ x`; with `invert == true` it reads `x ⇒ u` and is used backwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsibleRule {
    pub rule: RuleId,
    pub invert: bool,
}

/// A 3-cell that eliminates the rule used by step `index` of its `side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsibleCell {
    pub cell: usize,
    pub side: Side,
    pub index: usize,
}

/// A 3-sphere that eliminates the 3-cell `redundant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsibleSphere {
    pub sphere: Sphere3,
    pub redundant: usize,
}

/// Ranks witnessing the well-founded order of the reduction: each redundant
/// cell must rank strictly above every other cell of the same dimension in
/// the boundary that eliminates it. Missing entries rank 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderWitness {
    pub generators: BTreeMap<Letter, u32>,
    pub rules: BTreeMap<RuleId, u32>,
    pub cells: BTreeMap<usize, u32>,
}

impl OrderWitness {
    fn generator(&self, x: Letter) -> u32 {
        self.generators.get(&x).copied().unwrap_or(0)
    }
    fn rule(&self, r: RuleId) -> u32 {
        self.rules.get(&r).copied().unwrap_or(0)
    }
    fn cell(&self, c: usize) -> u32 {
        self.cells.get(&c).copied().unwrap_or(0)
    }
}

/// A collapsible part, one list per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapsiblePart {
    pub two_cells: Vec<CollapsibleRule>,
    pub three_cells: Vec<CollapsibleCell>,
    pub spheres: Vec<CollapsibleSphere>,
    pub order: OrderWitness,
}

impl CollapsiblePart {
    pub fn is_empty(&self) -> bool {
        self.two_cells.is_empty() && self.three_cells.is_empty() && self.spheres.is_empty()
    }
}

/// The generator made redundant by a collapsible rule, and the word it
/// equals.
pub fn redundant_generator(p: &Polygraph2, c: &CollapsibleRule) -> Result<(Letter, Word)> {
    let r = p
        .rules
        .get(c.rule)
        .ok_or_else(|| Error::InvalidPart(vec![format!("no rule with index {}", c.rule)]))?;
    let (src, tgt) = if c.invert { (&r.rhs, &r.lhs) } else { (&r.lhs, &r.rhs) };
    if tgt.len() != 1 {
        return Err(Error::InvalidPart(vec![format!("rule {}: target is not a single generator", r.name)]));
    }
    if src.contains(&tgt[0]) {
        return Err(Error::InvalidPart(vec![format!(
            "rule {}: generator {} occurs in its own source",
            r.name, p.generators[tgt[0] as usize]
        )]));
    }
    Ok((tgt[0], src.clone()))
}

/// The rule made redundant by a collapsible 3-cell, with its direction in
/// the cell and the 2-cell it equals (a path from the rule's lhs to its rhs).
pub fn redundant_rule(p: &Polygraph31, c: &CollapsibleCell) -> Result<(RuleId, Path2)> {
    let b = &p.base;
    let cell = p
        .cells
        .get(c.cell)
        .ok_or_else(|| Error::InvalidPart(vec![format!("no 3-cell with index {}", c.cell)]))?;
    let (this, other) = match c.side {
        Side::Src => (&cell.src, &cell.tgt),
        Side::Tgt => (&cell.tgt, &cell.src),
    };
    let bad = |msg: &str| Error::InvalidPart(vec![format!("3-cell {}: {msg}", cell.name)]);
    let step = *this.steps.get(c.index).ok_or_else(|| bad("step index out of range"))?;
    let words = this.words(b)?;
    let rule = &b.rules[step.rule];
    if step.pos != 0 || &words[c.index] != rule.input(step.dir) {
        return Err(bad("the designated step is whiskered"));
    }
    let uses = cell.src.steps.iter().chain(&cell.tgt.steps).filter(|s| s.rule == step.rule).count();
    if uses != 1 {
        return Err(bad(&format!("rule {} occurs {uses} times in the boundary", rule.name)));
    }
    let before = this.slice(b, 0, c.index)?;
    let after = this.slice(b, c.index + 1, this.len())?;
    // this = before ⋆ ρ ⋆ after  and  this ≡ other,  so  ρ = before⁻ ⋆ other ⋆ after⁻.
    let solved = compose_all(b, &[inverse(b, &before)?, other.clone(), inverse(b, &after)?])?;
    let solved = match step.dir {
        Dir::Pos => solved,
        Dir::Neg => inverse(b, &solved)?,
    };
    Ok((step.rule, normalize_path(b, &solved)))
}

/// Checks the three conditions on a collapsible part: every entry is
/// collapsible as described, no collapsible cell is made redundant by a
/// higher entry (and nothing is made redundant twice), and every redundant
/// cell ranks above the other cells that eliminate it.
pub fn validate_collapsible(p: &Polygraph31, g: &CollapsiblePart) -> std::result::Result<(), Vec<String>> {
    let b = &p.base;
    let mut errs = Vec::new();
    let mut red_gens = BTreeSet::new();
    let mut red_rules = BTreeSet::new();
    let mut red_cells = BTreeSet::new();

    for (i, c) in g.two_cells.iter().enumerate() {
        match redundant_generator(b, c) {
            Err(Error::InvalidPart(v)) => errs.extend(v.into_iter().map(|m| format!("2-cell entry {i}: {m}"))),
            Err(e) => errs.push(format!("2-cell entry {i}: {e}")),
            Ok((x, u)) => {
                if !red_gens.insert(x) {
                    errs.push(format!("2-cell entry {i}: generator {} made redundant twice", b.generators[x as usize]));
                }
                if let Some(&y) = u.iter().find(|&&y| g.order.generator(y) >= g.order.generator(x)) {
                    errs.push(format!(
                        "2-cell entry {i}: generator {} does not rank above {}",
                        b.generators[x as usize], b.generators[y as usize]
                    ));
                }
            }
        }
    }
    for (i, c) in g.three_cells.iter().enumerate() {
        match redundant_rule(p, c) {
            Err(Error::InvalidPart(v)) => errs.extend(v.into_iter().map(|m| format!("3-cell entry {i}: {m}"))),
            Err(e) => errs.push(format!("3-cell entry {i}: {e}")),
            Ok((r, _)) => {
                if !red_rules.insert(r) {
                    errs.push(format!("3-cell entry {i}: rule {} made redundant twice", b.rules[r].name));
                }
                if g.two_cells.iter().any(|t| t.rule == r) {
                    errs.push(format!("3-cell entry {i}: rule {} is itself a collapsible 2-cell", b.rules[r].name));
                }
                let cell = &p.cells[c.cell];
                if let Some(s) = cell
                    .src
                    .steps
                    .iter()
                    .chain(&cell.tgt.steps)
                    .find(|s| s.rule != r && g.order.rule(s.rule) >= g.order.rule(r))
                {
                    errs.push(format!(
                        "3-cell entry {i}: rule {} does not rank above {}",
                        b.rules[r].name, b.rules[s.rule].name
                    ));
                }
            }
        }
    }
    for (i, s) in g.spheres.iter().enumerate() {
        let r = s.redundant;
        if r >= p.cells.len() {
            errs.push(format!("sphere entry {i}: no 3-cell with index {r}"));
            continue;
        }
        let name = &p.cells[r].name;
        if let Err(e) = s.sphere.check(p) {
            errs.push(format!("sphere entry {i}: {e}"));
        }
        let occ: Vec<_> = s.sphere.cells().filter(|e| e.cell == r).collect();
        if occ.len() != 1 {
            errs.push(format!("sphere entry {i}: 3-cell {name} occurs {} times", occ.len()));
        } else if !occ[0].left.is_empty() || !occ[0].right.is_empty() {
            errs.push(format!("sphere entry {i}: 3-cell {name} is whiskered by words"));
        }
        if !red_cells.insert(r) {
            errs.push(format!("sphere entry {i}: 3-cell {name} made redundant twice"));
        }
        if g.three_cells.iter().any(|c| c.cell == r) {
            errs.push(format!("sphere entry {i}: 3-cell {name} is itself a collapsible 3-cell"));
        }
        if let Some(e) = s.sphere.cells().find(|e| e.cell != r && g.order.cell(e.cell) >= g.order.cell(r)) {
            errs.push(format!(
                "sphere entry {i}: 3-cell {name} does not rank above {}",
                p.cells[e.cell].name
            ));
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

enum Memo<T> {
    Todo,
    Busy,
    Done(T),
}

/// The projection π from a polygraph onto its reduction.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Image of each generator of the source polygraph.
    pub generators: Vec<Word>,
    /// Image of each rule: a 2-cell of the target from π(lhs) to π(rhs).
    pub rules: Vec<Path2>,
    /// Index of each surviving 3-cell in the target.
    pub cells: Vec<Option<usize>>,
}

impl Projection {
    pub fn word(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&x| self.generators[x as usize].iter().copied()).collect()
    }

    /// π of a 2-cell of the source polygraph (`source` is the polygraph `f`
    /// lives in, `target` the reduced one).
    pub fn path(&self, source: &Polygraph2, target: &Polygraph2, f: &Path2) -> Result<Path2> {
        project_path(source, target, &self.generators, &|r| Ok(self.rules[r].clone()), f)
    }
}

fn project_path(
    source: &Polygraph2,
    target: &Polygraph2,
    gens: &[Word],
    rule_image: &dyn Fn(RuleId) -> Result<Path2>,
    f: &Path2,
) -> Result<Path2> {
    let pw = |w: &[Letter]| -> Word { w.iter().flat_map(|&x| gens[x as usize].iter().copied()).collect() };
    let words = f.words(source)?;
    let mut out = Path2::identity(pw(&f.source));
    for (s, w) in f.steps.iter().zip(&words) {
        let r = &source.rules[s.rule];
        let (l, rt) = (&w[..s.pos], &w[s.pos + r.input(s.dir).len()..]);
        let img = rule_image(s.rule)?;
        let img = match s.dir {
            Dir::Pos => img,
            Dir::Neg => inverse(target, &img)?,
        };
        out = compose(target, &out, &whisker(&pw(l), &img, &pw(rt)))?;
    }
    Ok(out)
}

/// Names of what a reduction removed and kept, per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub removed_generators: Vec<String>,
    pub removed_rules: Vec<String>,
    pub removed_cells: Vec<String>,
    pub surviving_generators: Vec<String>,
    pub surviving_rules: Vec<String>,
    pub surviving_cells: Vec<String>,
}

/// A reduced polygraph with its projection and a report.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub result: Polygraph31,
    pub projection: Projection,
    pub report: ReductionReport,
}

/// Homotopical reduction along a validated collapsible part.
pub fn homotopical_reduce(p: &Polygraph31, g: &CollapsiblePart) -> Result<Polygraph31> {
    Ok(homotopical_reduce_full(p, g)?.result)
}

pub fn homotopical_reduce_full(p: &Polygraph31, g: &CollapsiblePart) -> Result<Reduction> {
    p.validate()?;
    validate_collapsible(p, g).map_err(Error::InvalidPart)?;
    let b = &p.base;
    let ng = b.generators.len();

    // Generators.
    let mut gen_def: Vec<Option<Word>> = vec![None; ng];
    let mut dead_rules = vec![false; b.rules.len()];
    for c in &g.two_cells {
        let (x, u) = redundant_generator(b, c)?;
        gen_def[x as usize] = Some(u);
        dead_rules[c.rule] = true;
    }
    let mut new_index = vec![None; ng];
    let mut gens = Vec::new();
    for x in 0..ng {
        if gen_def[x].is_none() {
            new_index[x] = Some(gens.len() as Letter);
            gens.push(b.generators[x].clone());
        }
    }
    let mut gmemo: Vec<Memo<Word>> = (0..ng).map(|_| Memo::Todo).collect();
    fn gen_image(
        x: usize,
        b: &Polygraph2,
        def: &[Option<Word>],
        idx: &[Option<Letter>],
        memo: &mut Vec<Memo<Word>>,
    ) -> Result<Word> {
        match &memo[x] {
            Memo::Done(w) => return Ok(w.clone()),
            Memo::Busy => return Err(Error::Cycle(format!("generator {}", b.generators[x]))),
            Memo::Todo => {}
        }
        memo[x] = Memo::Busy;
        let w = match &def[x] {
            None => vec![idx[x].unwrap()],
            Some(u) => {
                let mut w = Vec::new();
                for &y in u {
                    w.extend(gen_image(y as usize, b, def, idx, memo)?);
                }
                w
            }
        };
        memo[x] = Memo::Done(w.clone());
        Ok(w)
    }
    let mut gen_images = Vec::with_capacity(ng);
    for x in 0..ng {
        gen_images.push(gen_image(x, b, &gen_def, &new_index, &mut gmemo)?);
    }
    let pw = |w: &[Letter]| -> Word { w.iter().flat_map(|&x| gen_images[x as usize].iter().copied()).collect() };

    // Rules.
    let mut rule_def: Vec<Option<Path2>> = vec![None; b.rules.len()];
    for c in &g.three_cells {
        let (r, sol) = redundant_rule(p, c)?;
        rule_def[r] = Some(sol);
        dead_rules[r] = true;
    }
    let mut base = Polygraph2 { generators: gens, rules: Vec::new() };
    let mut rule_index = vec![None; b.rules.len()];
    for (r, rule) in b.rules.iter().enumerate() {
        if dead_rules[r] {
            continue;
        }
        let (lhs, rhs) = (pw(&rule.lhs), pw(&rule.rhs));
        if lhs.is_empty() {
            return Err(Error::InvalidPart(vec![format!(
                "surviving rule {} would rewrite the empty word; invert it first",
                rule.name
            )]));
        }
        rule_index[r] = Some(base.rules.len());
        base.add_labelled_rule(rule.name.clone(), lhs, rhs, rule.label.clone())?;
    }
    let memo: std::cell::RefCell<Vec<Memo<Path2>>> =
        std::cell::RefCell::new((0..b.rules.len()).map(|_| Memo::Todo).collect());
    fn rule_image(
        r: RuleId,
        b: &Polygraph2,
        base: &Polygraph2,
        gens: &[Word],
        def: &[Option<Path2>],
        idx: &[Option<usize>],
        memo: &std::cell::RefCell<Vec<Memo<Path2>>>,
    ) -> Result<Path2> {
        match &memo.borrow()[r] {
            Memo::Done(f) => return Ok(f.clone()),
            Memo::Busy => return Err(Error::Cycle(format!("rule {}", b.rules[r].name))),
            Memo::Todo => {}
        }
        memo.borrow_mut()[r] = Memo::Busy;
        let pw = |w: &[Letter]| -> Word { w.iter().flat_map(|&x| gens[x as usize].iter().copied()).collect() };
        let img = match (idx[r], &def[r]) {
            (Some(n), _) => Path2::single(pw(&b.rules[r].lhs), Step::fwd(n, 0)),
            (None, Some(sol)) => normalize_path(
                base,
                &project_path(b, base, gens, &|q| rule_image(q, b, base, gens, def, idx, memo), sol)?,
            ),
            // A collapsible 2-cell: its source and target have the same image.
            (None, None) => Path2::identity(pw(&b.rules[r].lhs)),
        };
        memo.borrow_mut()[r] = Memo::Done(img.clone());
        Ok(img)
    }
    let mut rule_images = Vec::with_capacity(b.rules.len());
    for r in 0..b.rules.len() {
        rule_images.push(rule_image(r, b, &base, &gen_images, &rule_def, &rule_index, &memo)?);
    }

    // 3-cells.
    let mut dead_cells = vec![false; p.cells.len()];
    for c in &g.three_cells {
        dead_cells[c.cell] = true;
    }
    for s in &g.spheres {
        dead_cells[s.redundant] = true;
    }
    let projection = Projection { generators: gen_images, rules: rule_images, cells: vec![None; p.cells.len()] };
    let mut result = Polygraph31::new(base);
    result.meta = p.meta.clone();
    let mut projection = projection;
    for (i, c) in p.cells.iter().enumerate() {
        if dead_cells[i] {
            continue;
        }
        let src = normalize_path(&result.base, &projection.path(b, &result.base, &c.src)?);
        let tgt = normalize_path(&result.base, &projection.path(b, &result.base, &c.tgt)?);
        projection.cells[i] = Some(result.cells.len());
        result.cells.push(ThreeCell { name: c.name.clone(), src, tgt, label: c.label.clone() });
    }
    result.validate()?;

    let pick = |dead: &[bool], names: Vec<&String>, keep: bool| -> Vec<String> {
        names.into_iter().zip(dead).filter(|(_, &d)| d != keep).map(|(n, _)| n.clone()).collect()
    };
    let dead_gens: Vec<bool> = gen_def.iter().map(Option::is_some).collect();
    let gnames: Vec<&String> = b.generators.iter().collect();
    let rnames: Vec<&String> = b.rules.iter().map(|r| &r.name).collect();
    let cnames: Vec<&String> = p.cells.iter().map(|c| &c.name).collect();
    let report = ReductionReport {
        removed_generators: pick(&dead_gens, gnames.clone(), false),
        removed_rules: pick(&dead_rules, rnames.clone(), false),
        removed_cells: pick(&dead_cells, cnames.clone(), false),
        surviving_generators: pick(&dead_gens, gnames, true),
        surviving_rules: pick(&dead_rules, rnames, true),
        surviving_cells: pick(&dead_cells, cnames, true),
    };
    Ok(Reduction { result, projection, report })
}

/// Replaces rule `r` by its formal inverse: the sides are swapped and every
/// step using it in a 3-cell boundary changes direction.
pub fn nielsen_invert_rule(p: &Polygraph31, r: RuleId) -> Result<Polygraph31> {
    let rule = p
        .base
        .rules
        .get(r)
        .ok_or_else(|| Error::Input(format!("no rule with index {r}")))?;
    if rule.rhs.is_empty() {
        return Err(Error::Precondition(format!("inverting {} would give an empty left-hand side", rule.name)));
    }
    let mut q = p.clone();
    let rule = &mut q.base.rules[r];
    std::mem::swap(&mut rule.lhs, &mut rule.rhs);
    let flip = |f: &mut Path2| {
        for s in &mut f.steps {
            if s.rule == r {
                s.dir = s.dir.flip();
            }
        }
    };
    for c in &mut q.cells {
        flip(&mut c.src);
        flip(&mut c.tgt);
    }
    Ok(q)
}

/// Coherent adjunction of a rule: adds `name: source(f) ⇒ target(f)` and a
/// 3-cell from `f` to it. The returned part eliminates both again.
pub fn adjoin_rule(p: &Polygraph31, name: &str, f: &Path2) -> Result<(Polygraph31, CollapsiblePart)> {
    let mut q = p.clone();
    let t = f.target(&q.base)?;
    let r = q.base.add_rule(name, f.source.clone(), t)?;
    let cell = q.add_cell(ThreeCell::new(format!("{name}_def"), f.clone(), Path2::single(f.source.clone(), Step::fwd(r, 0))))?;
    let mut part = CollapsiblePart::default();
    part.three_cells.push(CollapsibleCell { cell, side: Side::Tgt, index: 0 });
    part.order.rules.insert(r, 1);
    Ok((q, part))
}

/// Coherent adjunction of a generator `x` standing for `w`, with the rule
/// `w ⇒ x` (stored as `x ⇒ 1` when `w` is empty). The returned part
/// eliminates both again.
pub fn adjoin_generator(p: &Polygraph31, x: &str, rule: &str, w: &[Letter]) -> Result<(Polygraph31, CollapsiblePart)> {
    let mut q = p.clone();
    q.base.generators.push(x.to_string());
    q.base.validate()?;
    let g = (q.base.generators.len() - 1) as Letter;
    let (lhs, rhs, invert) = if w.is_empty() { (vec![g], vec![], true) } else { (w.to_vec(), vec![g], false) };
    let r = q.base.add_rule(rule, lhs, rhs)?;
    let mut part = CollapsiblePart::default();
    part.two_cells.push(CollapsibleRule { rule: r, invert });
    part.order.generators.insert(g, 1);
    Ok((q, part))
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub names: Vec<String>,
    /// `table[u][v]` is the index of `uv`.
    pub table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Input("multiplication table must be square over the listed elements".into()));
        }
        let m = FiniteMonoid { names, table };
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if m.mul(m.mul(u, v), w) != m.mul(u, m.mul(v, w)) {
                        return Err(Error::Input(format!(
                            "table is not associative at ({}, {}, {})",
                            m.names[u], m.names[v], m.names[w]
                        )));
                    }
                }
            }
        }
        m.unit().ok_or_else(|| Error::Input("table has no unit".into()))?;
        Ok(m)
    }

    /// The cyclic group of order `n`, elements named `1, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid { names, table }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.table[u][v]
    }

    pub fn unit(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|u| self.mul(e, u) == u && self.mul(u, e) == u))
    }
}

/// Index helpers for [`standard_coherent_presentation`].
#[derive(Clone, Copy, Debug)]
pub struct StandardIndex {
    pub n: usize,
}

impl StandardIndex {
    pub fn gamma(&self, u: usize, v: usize) -> RuleId {
        u * self.n + v
    }
    pub fn iota(&self) -> RuleId {
        self.n * self.n
    }
    pub fn alpha(&self, u: usize, v: usize, w: usize) -> usize {
        (u * self.n + v) * self.n + w
    }
    pub fn lambda(&self, u: usize) -> usize {
        self.n * self.n * self.n + u
    }
    pub fn rho(&self, u: usize) -> usize {
        self.n * self.n * self.n + self.n + u
    }
}

/// The standard coherent presentation of a finite monoid: one generator per
/// element, rules `γ_{u,v}: u|v ⇒ uv` and `ι: 1 ⇒ ε` (the unit generator
/// erased; the rule is the inverse of the unit insertion), and 3-cells
/// `α_{u,v,w}` (associativity), `λ_u` and `ρ_u` (unit laws).
pub fn standard_coherent_presentation(m: &FiniteMonoid) -> Result<Polygraph31> {
    let m = FiniteMonoid::new(m.names.clone(), m.table.clone())?;
    let n = m.len();
    let one = m.unit().unwrap();
    let ix = StandardIndex { n };
    let mut base = Polygraph2::new(m.names.clone())?;
    for u in 0..n {
        for v in 0..n {
            base.add_labelled_rule(
                format!("gamma_{}_{}", m.names[u], m.names[v]),
                vec![u as Letter, v as Letter],
                vec![m.mul(u, v) as Letter],
                format!("γ_{{{},{}}}", m.names[u], m.names[v]),
            )?;
        }
    }
    base.add_labelled_rule("iota", vec![one as Letter], vec![], "ι")?;
    let mut p = Polygraph31::new(base);
    let l = |x: usize| x as Letter;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let (uv, vw) = (m.mul(u, v), m.mul(v, w));
                let src = Path2 {
                    source: vec![l(u), l(v), l(w)],
                    steps: vec![Step::fwd(ix.gamma(u, v), 0), Step::fwd(ix.gamma(uv, w), 0)],
                };
                let tgt = Path2 {
                    source: vec![l(u), l(v), l(w)],
                    steps: vec![Step::fwd(ix.gamma(v, w), 1), Step::fwd(ix.gamma(u, vw), 0)],
                };
                let (a, b, c) = (&m.names[u], &m.names[v], &m.names[w]);
                p.cells.push(ThreeCell {
                    name: format!("alpha_{a}_{b}_{c}"),
                    src,
                    tgt,
                    label: format!("α_{{{a},{b},{c}}}"),
                });
            }
        }
    }
    for (prefix, sym, at) in [("lambda", "λ", 0usize), ("rho", "ρ", 1)] {
        for u in 0..n {
            let g = if at == 0 { ix.gamma(one, u) } else { ix.gamma(u, one) };
            let src = Path2 { source: vec![l(u)], steps: vec![Step::new(ix.iota(), Dir::Neg, at), Step::fwd(g, 0)] };
            p.cells.push(ThreeCell {
                name: format!("{prefix}_{}", m.names[u]),
                tgt: Path2::identity(vec![l(u)]),
                src,
                label: format!("{sym}_{}", m.names[u]),
            });
        }
    }
    p.validate()?;
    Ok(p)
}

/// The collapsible part reducing the standard presentation: `ι` eliminates
/// the unit generator, `λ_u` eliminates `γ_{1,u}`, `ρ_u` (u ≠ 1) eliminates
/// `γ_{u,1}`, and 3-spheres eliminate `ρ_1` and every `α` with a unit index.
pub fn standard_reduction_part(p: &Polygraph31, m: &FiniteMonoid) -> Result<CollapsiblePart> {
    let n = m.len();
    let one = m.unit().ok_or_else(|| Error::Input("table has no unit".into()))?;
    let ix = StandardIndex { n };
    let l = |x: usize| x as Letter;
    let mut part = CollapsiblePart::default();
    part.two_cells.push(CollapsibleRule { rule: ix.iota(), invert: true });
    for u in 0..n {
        part.three_cells.push(CollapsibleCell { cell: ix.lambda(u), side: Side::Src, index: 1 });
        if u != one {
            part.three_cells.push(CollapsibleCell { cell: ix.rho(u), side: Side::Src, index: 1 });
        }
    }
    let insert = |w: Word, at: usize| Path2::single(w, Step::new(ix.iota(), Dir::Neg, at));
    let gam = |u: usize, v: usize, at: usize, w: Word| Path2::single(w, Step::fwd(ix.gamma(u, v), at));
    use crate::cells::SphereEntry as E;
    let sphere = |lhs: Vec<E>, rhs: Vec<E>| -> Result<Sphere3> {
        let source = rhs[0].boundary(p)?.0;
        let target = rhs.last().unwrap().boundary(p)?.1;
        let s = Sphere3 { source, target, lhs, rhs };
        s.check(p)?;
        Ok(s)
    };
    for u in 0..n {
        for v in 0..n {
            let uv = m.mul(u, v);
            let w = vec![l(u), l(v)];
            // α_{1,u,v}
            let s = sphere(
                vec![
                    E::whiskered(p, ix.alpha(one, u, v), Dir::Pos, &[], &[], Some(insert(w.clone(), 0)), None)?,
                    E::whiskered(p, ix.lambda(uv), Dir::Pos, &[], &[], Some(gam(u, v, 0, w.clone())), None)?,
                ],
                vec![E::whiskered(p, ix.lambda(u), Dir::Pos, &[], &[l(v)], None, Some(gam(u, v, 0, w.clone())))?],
            )?;
            part.spheres.push(CollapsibleSphere { sphere: s, redundant: ix.alpha(one, u, v) });
            if u != one {
                // α_{u,1,v}
                let s = sphere(
                    vec![
                        E::whiskered(p, ix.alpha(u, one, v), Dir::Pos, &[], &[], Some(insert(w.clone(), 1)), None)?,
                        E::whiskered(p, ix.lambda(v), Dir::Pos, &[l(u)], &[], None, Some(gam(u, v, 0, w.clone())))?,
                    ],
                    vec![E::whiskered(p, ix.rho(u), Dir::Pos, &[], &[l(v)], None, Some(gam(u, v, 0, w.clone())))?],
                )?;
                part.spheres.push(CollapsibleSphere { sphere: s, redundant: ix.alpha(u, one, v) });
                if v != one {
                    // α_{u,v,1}
                    let s = sphere(
                        vec![
                            E::whiskered(p, ix.alpha(u, v, one), Dir::Pos, &[], &[], Some(insert(w.clone(), 2)), None)?,
                            E::whiskered(p, ix.rho(v), Dir::Pos, &[l(u)], &[], None, Some(gam(u, v, 0, w.clone())))?,
                        ],
                        vec![E::whiskered(p, ix.rho(uv), Dir::Pos, &[], &[], Some(gam(u, v, 0, w.clone())), None)?],
                    )?;
                    part.spheres.push(CollapsibleSphere { sphere: s, redundant: ix.alpha(u, v, one) });
                }
            }
        }
    }
    // ρ_1 and λ_1 agree once the unit has been inserted.
    let s = sphere(
        vec![E::whiskered(p, ix.rho(one), Dir::Pos, &[], &[], Some(insert(vec![], 0)), None)?],
        vec![E::whiskered(p, ix.lambda(one), Dir::Pos, &[], &[], Some(insert(vec![], 0)), None)?],
    )?;
    part.spheres.push(CollapsibleSphere { sphere: s, redundant: ix.rho(one) });

    part.order.generators.insert(one as Letter, 1);
    for u in 0..n {
        for v in 0..n {
            if u == one || v == one {
                part.order.rules.insert(ix.gamma(u, v), 2);
            }
            for w in 0..n {
                if u == one || v == one || w == one {
                    part.order.cells.insert(ix.alpha(u, v, w), 3);
                }
            }
        }
        part.order.cells.insert(ix.lambda(u), 1);
        part.order.cells.insert(ix.rho(u), 1);
    }
    part.order.rules.insert(ix.iota(), 1);
    part.order.cells.insert(ix.rho(one), 2);
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent() -> FiniteMonoid {
        FiniteMonoid::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn standard_presentation_counts() {
        let p = standard_coherent_presentation(&idempotent()).unwrap();
        assert_eq!(p.base.generators.len(), 2);
        assert_eq!(p.base.rules.len(), 5);
        assert_eq!(p.cells.len(), 8 + 2 + 2);
    }

    #[test]
    fn standard_reduction_of_idempotent_monoid() {
        let m = idempotent();
        let p = standard_coherent_presentation(&m).unwrap();
        let part = standard_reduction_part(&p, &m).unwrap();
        validate_collapsible(&p, &part).unwrap();
        let r = homotopical_reduce(&p, &part).unwrap();
        assert_eq!(r.base.generators, vec!["e".to_string()]);
        assert_eq!(r.base.rules.len(), 1);
        assert_eq!(r.base.rules[0].name, "gamma_e_e");
        assert_eq!(r.cells.len(), 1);
        assert_eq!(r.cells[0].name, "alpha_e_e_e");
    }

    #[test]
    fn empty_part_is_identity() {
        let p = standard_coherent_presentation(&idempotent()).unwrap();
        let r = homotopical_reduce(&p, &CollapsiblePart::default()).unwrap();
        assert_eq!(r, p);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let bad = FiniteMonoid::new(vec!["1".into(), "a".into(), "b".into()], vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 2, 2],
        ]);
        assert!(matches!(bad, Err(Error::Input(_))));
    }

    #[test]
    fn double_inversion_is_identity() {
        let p = standard_coherent_presentation(&idempotent()).unwrap();
        let q = nielsen_invert_rule(&nielsen_invert_rule(&p, 3).unwrap(), 3).unwrap();
        assert_eq!(p, q);
    }
}
