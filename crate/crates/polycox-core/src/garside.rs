//! Garside's coherent presentation of a spherical Artin monoid.
//!
//! The Garside presentation has one generator per non-trivial element of the
//! finite Coxeter group `W` and one rule `α_{u,v}: u|v ⇒ uv` whenever the
//! lengths add. Completing it along the Garside order adjoins rules
//! `β_{u,v,w}: u|vw ⇒ uv|w` and nine families `A`–`I` of 3-cells. Seven
//! families of 3-spheres `ω^C`–`ω^I` together with the `B` cells then reduce
//! the completion to Garside's coherent presentation: the `α` rules and the
//! `A` cells.

use std::collections::HashMap;
use std::fmt;

use crate::cells::{Polygraph31, Sphere3, SphereEntry, ThreeCell};
use crate::completion::{homotopical_complete_with, Branching, Budgets, Resolution, Resolver};
use crate::coxeter::{CoxeterGroup, ElemId};
use crate::error::{Error, Result};
use crate::order::TerminationOrder;
use crate::path::{paths_equal, Path2, Step};
use crate::tietze::{CollapsibleCell, CollapsiblePart, CollapsibleSphere, Side};
use crate::word::{Dir, Letter, Polygraph2, RuleId};

/// The Garside presentation of a finite Coxeter group.
#[derive(Clone, Debug)]
pub struct GarsidePresentation {
    pub group: CoxeterGroup,
    pub base: Polygraph2,
    alpha: HashMap<(ElemId, ElemId), RuleId>,
}

/// Generator of a non-trivial element.
pub fn gen(e: ElemId) -> Letter {
    debug_assert!(e > 0);
    (e - 1) as Letter
}

/// Element of a generator.
pub fn elem(x: Letter) -> ElemId {
    x as usize + 1
}

fn letters(es: &[ElemId]) -> Vec<Letter> {
    es.iter().map(|&e| gen(e)).collect()
}

pub fn alpha_name(g: &CoxeterGroup, u: ElemId, v: ElemId) -> (String, String) {
    let (a, b) = (g.name(u), g.name(v));
    (format!("alpha_{a}_{b}"), format!("α_{{{a},{b}}}"))
}

pub fn beta_name(g: &CoxeterGroup, u: ElemId, v: ElemId, w: ElemId) -> (String, String) {
    let (a, b, c) = (g.name(u), g.name(v), g.name(w));
    (format!("beta_{a}_{b}_{c}"), format!("β_{{{a},{b},{c}}}"))
}

/// The Garside presentation: generators `W \ {1}`, rules `α_{u,v}` for every
/// length-additive pair.
pub fn garside_presentation(g: &CoxeterGroup) -> GarsidePresentation {
    let n = g.size();
    let mut base = Polygraph2 { generators: (1..n).map(|e| g.name(e)).collect(), rules: Vec::new() };
    let mut alpha = HashMap::new();
    for u in 1..n {
        for v in 1..n {
            if g.is_reduced_product(u, v) {
                let (name, label) = alpha_name(g, u, v);
                let r = base
                    .add_labelled_rule(name, vec![gen(u), gen(v)], vec![gen(g.mul(u, v))], label)
                    .expect("element names are distinct");
                alpha.insert((u, v), r);
            }
        }
    }
    GarsidePresentation { group: g.clone(), base, alpha }
}

impl GarsidePresentation {
    /// The Garside order: fewer letters first, then letter lengths read from
    /// the right.
    pub fn order(&self) -> TerminationOrder {
        TerminationOrder::GarsideWreath { lengths: (1..self.group.size()).map(|e| self.group.length(e)).collect() }
    }

    pub fn alpha(&self, u: ElemId, v: ElemId) -> Option<RuleId> {
        self.alpha.get(&(u, v)).copied()
    }
}

/// The nine families of 3-cells of the completed Garside presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Family {
    pub const ALL: [Family; 9] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G, Family::H, Family::I];

    pub fn rank(self) -> u32 {
        self as u32
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The family of a 3-cell and its indices. `dir` tells how the cell as
/// stored relates to the family's standard orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    pub family: Family,
    pub index: Vec<ElemId>,
    pub dir: Dir,
}

impl FamilyTag {
    pub fn name(&self, g: &CoxeterGroup) -> (String, String) {
        let names: Vec<String> = self.index.iter().map(|&e| g.name(e)).collect();
        (format!("{}_{}", self.family, names.join("_")), format!("{}_{{{}}}", self.family, names.join(",")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum RuleKind {
    Alpha(ElemId, ElemId),
    Beta(ElemId, ElemId, ElemId),
}

/// A rule application the analysis asks for, by kind.
#[derive(Clone, Copy, Debug)]
struct Need {
    kind: RuleKind,
    pos: usize,
}

struct Analysis {
    tag: FamilyTag,
    left: Vec<Need>,
    right: Vec<Need>,
    /// For `B`: the rule adjoined on the target side.
    new_beta: Option<(ElemId, ElemId, ElemId)>,
}

struct Rules {
    kinds: Vec<RuleKind>,
    index: HashMap<RuleKind, RuleId>,
}

impl Rules {
    fn from_base(g: &CoxeterGroup, p: &Polygraph2) -> Result<Self> {
        let mut r = Rules { kinds: Vec::new(), index: HashMap::new() };
        for (id, rule) in p.rules.iter().enumerate() {
            let es: Vec<ElemId> = rule.lhs.iter().map(|&x| elem(x)).collect();
            let kind = match (es.as_slice(), rule.rhs.len()) {
                (&[u, v], 1) => RuleKind::Alpha(u, v),
                (&[u, vw], 2) => {
                    let v = g.mul(g.inv(u), elem(rule.rhs[0]));
                    let w = elem(rule.rhs[1]);
                    if v == 0 || g.mul(v, w) != vw {
                        return Err(Error::Classification(format!("rule {} is not of the form u|vw ⇒ uv|w", rule.name)));
                    }
                    RuleKind::Beta(u, v, w)
                }
                _ => return Err(Error::Classification(format!("rule {} is neither an α nor a β", rule.name))),
            };
            r.push(id, kind);
        }
        Ok(r)
    }

    fn push(&mut self, id: RuleId, kind: RuleKind) {
        debug_assert_eq!(id, self.kinds.len());
        self.kinds.push(kind);
        self.index.insert(kind, id);
    }
}

fn analyse(g: &CoxeterGroup, rules: &Rules, b: &Branching) -> Result<Analysis> {
    use RuleKind::*;
    let red3 = |u, v, w| g.length(g.mul(g.mul(u, v), w)) == g.length(u) + g.length(v) + g.length(w);
    let m = |a, b| g.mul(a, b);
    let need = |kind, pos| Need { kind, pos };
    let tag = |family, index: Vec<ElemId>| FamilyTag { family, index, dir: Dir::Pos };
    let (kl, kr) = (rules.kinds[b.left.rule], rules.kinds[b.right.rule]);
    let unexpected = || {
        Error::Classification(format!(
            "branching of {kl:?} at {} and {kr:?} at {} matches no family",
            b.left.pos, b.right.pos
        ))
    };
    let out = match (b.source.len(), b.left.pos, b.right.pos) {
        (3, 0, 1) => match (kl, kr) {
            (Alpha(u, v), Alpha(_, w)) => {
                if red3(u, v, w) {
                    Analysis {
                        tag: tag(Family::A, vec![u, v, w]),
                        left: vec![need(Alpha(m(u, v), w), 0)],
                        right: vec![need(Alpha(u, m(v, w)), 0)],
                        new_beta: None,
                    }
                } else {
                    Analysis { tag: tag(Family::B, vec![u, v, w]), left: vec![], right: vec![], new_beta: Some((u, v, w)) }
                }
            }
            (Alpha(u, v), Beta(_, w, x)) => {
                if red3(u, v, w) {
                    Analysis {
                        tag: tag(Family::C, vec![u, v, w, x]),
                        left: vec![need(Beta(m(u, v), w, x), 0)],
                        right: vec![need(Alpha(u, m(v, w)), 0)],
                        new_beta: None,
                    }
                } else {
                    Analysis {
                        tag: tag(Family::D, vec![u, v, w, x]),
                        left: vec![],
                        right: vec![need(Beta(u, v, w), 0), need(Alpha(w, x), 1)],
                        new_beta: None,
                    }
                }
            }
            (Beta(u, v, w), Alpha(_, x)) => Analysis {
                tag: tag(Family::E, vec![u, v, w, x]),
                left: vec![need(Alpha(w, x), 1)],
                right: vec![need(Beta(u, v, m(w, x)), 0)],
                new_beta: None,
            },
            (Beta(u, v, w), Beta(_, x, y)) => {
                if red3(w, x, y) {
                    Analysis {
                        tag: tag(Family::F, vec![u, v, w, x, y]),
                        left: vec![need(Alpha(w, m(x, y)), 1)],
                        right: vec![need(Beta(u, v, m(w, x)), 0), need(Alpha(m(w, x), y), 1)],
                        new_beta: None,
                    }
                } else {
                    Analysis {
                        tag: tag(Family::G, vec![u, v, w, x, y]),
                        left: vec![need(Beta(w, x, y), 1)],
                        right: vec![need(Beta(u, v, m(w, x)), 0)],
                        new_beta: None,
                    }
                }
            }
        },
        (2, 0, 0) => match (kl, kr) {
            (Beta(u, v1, w1), Beta(u2, v2, _)) if u == u2 && v1 != v2 => {
                let z = m(v1, w1);
                let v = g.lcm(v1, v2);
                if !g.divides(v, z) {
                    return Err(unexpected());
                }
                let (x1, x2) = (m(g.inv(v1), v), m(g.inv(v2), v));
                let y = m(g.inv(v), z);
                if x2 == 0 {
                    Analysis {
                        tag: tag(Family::H, vec![u, v1, x1, y]),
                        left: vec![need(Beta(m(u, v1), x1, y), 0)],
                        right: vec![],
                        new_beta: None,
                    }
                } else if x1 == 0 {
                    Analysis {
                        tag: FamilyTag { family: Family::H, index: vec![u, v2, x2, y], dir: Dir::Neg },
                        left: vec![],
                        right: vec![need(Beta(m(u, v2), x2, y), 0)],
                        new_beta: None,
                    }
                } else {
                    Analysis {
                        tag: tag(Family::I, vec![u, v1, x1, v2, x2, y]),
                        left: vec![need(Beta(m(u, v1), x1, y), 0)],
                        right: vec![need(Beta(m(u, v2), x2, y), 0)],
                        new_beta: None,
                    }
                }
            }
            _ => return Err(unexpected()),
        },
        _ => return Err(unexpected()),
    };
    Ok(out)
}

/// Builds a join path from its needs; `None` when some rule is still missing.
fn join(p: &Polygraph2, rules: &Rules, start: Vec<Letter>, needs: &[Need]) -> Result<Option<Path2>> {
    let mut f = Path2::identity(start);
    for n in needs {
        let Some(&r) = rules.index.get(&n.kind) else { return Ok(None) };
        f.push(p, Step::fwd(r, n.pos))?;
    }
    Ok(Some(f))
}

/// Joins critical branchings of the Garside presentation as prescribed by
/// the nine families, deferring those that need a `β` not adjoined yet.
struct GarsideResolver<'a> {
    group: &'a CoxeterGroup,
    rules: Rules,
    pending: HashMap<String, RuleKind>,
}

impl Resolver for GarsideResolver<'_> {
    fn resolve(&mut self, p: &Polygraph2, b: &Branching) -> Result<Resolution> {
        let a = analyse(self.group, &self.rules, b)?;
        let start_l = crate::word::apply_step(p, &b.source, b.left.rule, b.left.pos, Dir::Pos)?;
        let start_r = crate::word::apply_step(p, &b.source, b.right.rule, b.right.pos, Dir::Pos)?;
        let (Some(left), Some(right)) =
            (join(p, &self.rules, start_l, &a.left)?, join(p, &self.rules, start_r, &a.right)?)
        else {
            return Ok(Resolution::Defer);
        };
        let rule_name = a.new_beta.map(|(u, v, w)| {
            let (name, label) = beta_name(self.group, u, v, w);
            self.pending.insert(name.clone(), RuleKind::Beta(u, v, w));
            (name, label)
        });
        Ok(Resolution::Join { left, right, rule_name })
    }

    fn rule_added(&mut self, p: &Polygraph2, id: RuleId) {
        if let Some(kind) = self.pending.remove(&p.rules[id].name) {
            self.rules.push(id, kind);
        }
    }
}

/// The completed Garside presentation with a family tag per 3-cell.
#[derive(Clone, Debug)]
pub struct GarsideCompletion {
    pub group: CoxeterGroup,
    pub p31: Polygraph31,
    pub tags: Vec<FamilyTag>,
    by_tag: HashMap<(Family, Vec<ElemId>), usize>,
    rules: HashMap<RuleKindKey, RuleId>,
}

type RuleKindKey = (u8, ElemId, ElemId, ElemId);

fn key(k: RuleKind) -> RuleKindKey {
    match k {
        RuleKind::Alpha(u, v) => (0, u, v, 0),
        RuleKind::Beta(u, v, w) => (1, u, v, w),
    }
}

/// Completes the Garside presentation and tags every 3-cell with its family.
pub fn complete_garside(g: &CoxeterGroup) -> Result<GarsideCompletion> {
    complete_garside_with(g, Budgets { max_rules: 1_000_000, max_branchings: 10_000_000 })
}

pub fn complete_garside_with(g: &CoxeterGroup, budgets: Budgets) -> Result<GarsideCompletion> {
    let gp = garside_presentation(g);
    let mut resolver = GarsideResolver { group: g, rules: Rules::from_base(g, &gp.base)?, pending: HashMap::new() };
    let c = homotopical_complete_with(&gp.base, &gp.order(), &mut resolver, budgets)?;
    let mut p31 = c.result;
    let rules = Rules::from_base(g, &p31.base)?;
    if rules.kinds.len() != resolver.rules.kinds.len() || rules.kinds != resolver.rules.kinds {
        return Err(Error::Classification("adjoined rules do not all have the shape u|vw ⇒ uv|w".into()));
    }
    let b = &p31.base;
    let mut tags = Vec::with_capacity(p31.cells.len());
    let mut by_tag = HashMap::new();
    for (i, br) in c.cell_branchings.iter().enumerate() {
        let a = analyse(g, &rules, br)?;
        let cell = &p31.cells[i];
        let mut src = Path2::single(br.source.clone(), br.left);
        let mut tgt = Path2::single(br.source.clone(), br.right);
        let missing = || Error::Classification(format!("3-cell on {} uses a missing rule", b.format_word(&br.source)));
        for n in &a.left {
            src.push(b, Step::fwd(*rules.index.get(&n.kind).ok_or_else(missing)?, n.pos))?;
        }
        for n in &a.right {
            tgt.push(b, Step::fwd(*rules.index.get(&n.kind).ok_or_else(missing)?, n.pos))?;
        }
        if let Some((u, v, w)) = a.new_beta {
            tgt.push(b, Step::fwd(*rules.index.get(&RuleKind::Beta(u, v, w)).ok_or_else(missing)?, 0))?;
        }
        if !paths_equal(b, &src, &cell.src) || !paths_equal(b, &tgt, &cell.tgt) {
            return Err(Error::Classification(format!(
                "3-cell on {} does not have the shape of family {}",
                b.format_word(&br.source),
                a.tag.family
            )));
        }
        if by_tag.insert((a.tag.family, a.tag.index.clone()), i).is_some() {
            return Err(Error::Classification(format!("two 3-cells tagged {:?}", a.tag)));
        }
        tags.push(a.tag);
    }
    for (cell, t) in p31.cells.iter_mut().zip(&tags) {
        let (name, label) = t.name(g);
        cell.name = name;
        cell.label = label;
    }
    p31.meta.insert("construction".into(), "completed Garside presentation".into());
    let rules = rules.index.iter().map(|(&k, &r)| (key(k), r)).collect();
    Ok(GarsideCompletion { group: g.clone(), p31, tags, by_tag, rules })
}

impl GarsideCompletion {
    pub fn alpha(&self, u: ElemId, v: ElemId) -> Option<RuleId> {
        self.rules.get(&key(RuleKind::Alpha(u, v))).copied()
    }

    pub fn beta(&self, u: ElemId, v: ElemId, w: ElemId) -> Option<RuleId> {
        self.rules.get(&key(RuleKind::Beta(u, v, w))).copied()
    }

    /// The 3-cell with a given family and index, and the direction reading
    /// it in the family's standard orientation.
    pub fn cell(&self, family: Family, index: &[ElemId]) -> Option<(usize, Dir)> {
        self.by_tag.get(&(family, index.to_vec())).map(|&i| (i, self.tags[i].dir))
    }

    pub fn count(&self, family: Family) -> usize {
        self.tags.iter().filter(|t| t.family == family).count()
    }

    /// The standard 3-sphere in which the cell tagged `t` (of family C–I)
    /// appears exactly once.
    pub fn omega(&self, t: &FamilyTag) -> Result<Sphere3> {
        let g = &self.group;
        let p = &self.p31;
        let b = &p.base;
        let m = |a, c| g.mul(a, c);
        let missing = |what: String| Error::Coherence(format!("sphere for {t:?}: missing {what}"));
        let cell = |f: Family, idx: &[ElemId]| self.cell(f, idx).ok_or_else(|| missing(format!("{f}{idx:?}")));
        let alpha = |u, v| self.alpha(u, v).ok_or_else(|| missing(format!("α({u},{v})")));
        let beta = |u, v, w| self.beta(u, v, w).ok_or_else(|| missing(format!("β({u},{v},{w})")));
        // A path of forward steps from a word of elements.
        let path = |w: &[ElemId], steps: &[(RuleId, usize)]| -> Result<Path2> {
            let mut f = Path2::identity(letters(w));
            for &(r, pos) in steps {
                f.push(b, Step::fwd(r, pos))?;
            }
            Ok(f)
        };
        let entry = |f: Family,
                     idx: &[ElemId],
                     left: &[ElemId],
                     right: &[ElemId],
                     prefix: Option<Path2>,
                     suffix: Option<Path2>|
         -> Result<SphereEntry> {
            let (c, d) = cell(f, idx)?;
            SphereEntry::whiskered(p, c, d, &letters(left), &letters(right), prefix, suffix)
        };
        use Family::*;
        let ix = &t.index;
        let (lhs, rhs) = match t.family {
            C => {
                let (u, v, w, x) = (ix[0], ix[1], ix[2], ix[3]);
                let vw = m(v, w);
                (
                    vec![
                        entry(A, &[u, v, w], &[], &[x], None, None)?,
                        entry(B, &[v, w, x], &[u], &[], None, Some(path(&[u, vw, x], &[(alpha(u, vw)?, 0)])?))?,
                    ],
                    vec![
                        entry(B, &[m(u, v), w, x], &[], &[], Some(path(&[u, v, w, x], &[(alpha(u, v)?, 0)])?), None)?,
                        entry(C, ix, &[], &[], Some(path(&[u, v, w, x], &[(alpha(w, x)?, 2)])?), None)?,
                    ],
                )
            }
            D => {
                let (u, v, w, x) = (ix[0], ix[1], ix[2], ix[3]);
                let (uv, vw) = (m(u, v), m(v, w));
                (
                    vec![
                        entry(B, &[u, v, w], &[], &[x], None, Some(path(&[uv, w, x], &[(alpha(w, x)?, 1)])?))?,
                        entry(
                            B,
                            &[v, w, x],
                            &[u],
                            &[],
                            None,
                            Some(path(&[u, vw, x], &[(beta(u, v, w)?, 0), (alpha(w, x)?, 1)])?),
                        )?,
                    ],
                    vec![entry(D, ix, &[], &[], Some(path(&[u, v, w, x], &[(alpha(w, x)?, 2)])?), None)?],
                )
            }
            E => {
                let (u, v, w, x) = (ix[0], ix[1], ix[2], ix[3]);
                let (uv, vw, wx) = (m(u, v), m(v, w), m(w, x));
                (
                    vec![
                        entry(B, &[u, v, w], &[], &[x], None, Some(path(&[uv, w, x], &[(alpha(w, x)?, 1)])?))?,
                        entry(E, ix, &[], &[], Some(path(&[u, v, w, x], &[(alpha(v, w)?, 1)])?), None)?,
                        entry(A, &[v, w, x], &[u], &[], None, Some(path(&[u, m(vw, x)], &[(beta(u, v, wx)?, 0)])?))?,
                    ],
                    vec![entry(B, &[u, v, wx], &[], &[], Some(path(&[u, v, w, x], &[(alpha(w, x)?, 2)])?), None)?],
                )
            }
            F => {
                let (u, v, w, x, y) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
                let (uv, vw, wx) = (m(u, v), m(v, w), m(w, x));
                (
                    vec![
                        entry(E, &[u, v, w, x], &[], &[y], None, Some(path(&[uv, wx, y], &[(alpha(wx, y)?, 1)])?))?,
                        entry(
                            B,
                            &[vw, x, y],
                            &[u],
                            &[],
                            None,
                            Some(path(&[u, m(vw, x), y], &[(beta(u, v, wx)?, 0), (alpha(wx, y)?, 1)])?),
                        )?,
                    ],
                    vec![
                        entry(A, &[w, x, y], &[uv], &[], Some(path(&[u, vw, x, y], &[(beta(u, v, w)?, 0)])?), None)?,
                        entry(F, ix, &[], &[], Some(path(&[u, vw, x, y], &[(alpha(x, y)?, 2)])?), None)?,
                    ],
                )
            }
            G => {
                let (u, v, w, x, y) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
                let (uv, wx, xy) = (m(u, v), m(w, x), m(x, y));
                (
                    vec![
                        entry(B, &[u, v, w], &[], &[xy], None, Some(path(&[uv, w, xy], &[(beta(w, x, y)?, 1)])?))?,
                        entry(G, ix, &[], &[], Some(path(&[u, v, w, xy], &[(alpha(v, w)?, 1)])?), None)?,
                        entry(
                            C,
                            &[v, w, x, y],
                            &[u],
                            &[],
                            None,
                            Some(path(&[u, m(v, wx), y], &[(beta(u, v, wx)?, 0)])?),
                        )?,
                    ],
                    vec![entry(
                        B,
                        &[u, v, wx],
                        &[],
                        &[y],
                        Some(path(&[u, v, w, xy], &[(beta(w, x, y)?, 2)])?),
                        None,
                    )?],
                )
            }
            H => {
                let (u, v, w, x) = (ix[0], ix[1], ix[2], ix[3]);
                let (uv, vw, wx) = (m(u, v), m(v, w), m(w, x));
                let start = [u, v, w, x];
                (
                    vec![
                        entry(A, &[u, v, w], &[], &[x], None, None)?,
                        entry(B, &[u, vw, x], &[], &[], Some(path(&start, &[(alpha(v, w)?, 1)])?), None)?,
                        entry(A, &[v, w, x], &[u], &[], None, Some(path(&[u, m(vw, x)], &[(beta(u, vw, x)?, 0)])?))?,
                    ],
                    vec![
                        entry(B, &[uv, w, x], &[], &[], Some(path(&start, &[(alpha(u, v)?, 0)])?), None)?,
                        entry(
                            B,
                            &[u, v, wx],
                            &[],
                            &[],
                            Some(path(&start, &[(alpha(w, x)?, 2)])?),
                            Some(path(&[uv, wx], &[(beta(uv, w, x)?, 0)])?),
                        )?,
                        entry(
                            H,
                            ix,
                            &[],
                            &[],
                            Some(path(&start, &[(alpha(w, x)?, 2), (alpha(v, wx)?, 1)])?),
                            None,
                        )?,
                    ],
                )
            }
            I => {
                let (u, v1, x1, v2, x2, y) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
                (
                    vec![entry(I, ix, &[], &[], None, None)?, entry(H, &[u, v2, x2, y], &[], &[], None, None)?],
                    vec![entry(H, &[u, v1, x1, y], &[], &[], None, None)?],
                )
            }
            A | B => return Err(Error::Precondition(format!("no ω sphere for family {}", t.family))),
        };
        let source = lhs[0].boundary(p)?.0;
        let target = lhs.last().unwrap().boundary(p)?.1;
        let s = Sphere3 { source, target, lhs, rhs };
        s.check(p)?;
        Ok(s)
    }
}

/// The collapsible part reducing the completed Garside presentation to
/// Garside's coherent presentation: every `B` cell eliminates its `β`, and
/// each cell of the families C–I is eliminated by its ω sphere.
pub fn garside_reduction_part(c: &GarsideCompletion) -> Result<CollapsiblePart> {
    let mut part = CollapsiblePart::default();
    for (i, t) in c.tags.iter().enumerate() {
        part.order.cells.insert(i, t.family.rank());
        match t.family {
            Family::A => {}
            Family::B => part.three_cells.push(CollapsibleCell { cell: i, side: Side::Tgt, index: 1 }),
            _ => part.spheres.push(CollapsibleSphere { sphere: c.omega(t)?, redundant: i }),
        }
    }
    for (r, rule) in c.p31.base.rules.iter().enumerate() {
        if rule.rhs.len() == 2 {
            part.order.rules.insert(r, 1);
        }
    }
    Ok(part)
}

/// Garside's coherent presentation built directly: `α` rules and one cell
/// `A_{u,v,w}` per length-additive triple.
pub fn garside_coherent(g: &CoxeterGroup) -> Polygraph31 {
    let gp = garside_presentation(g);
    let n = g.size();
    let mut p = Polygraph31::new(gp.base.clone());
    for u in 1..n {
        for v in 1..n {
            let Some(a_uv) = gp.alpha(u, v) else { continue };
            for w in 1..n {
                let (uv, vw) = (g.mul(u, v), g.mul(v, w));
                let (Some(a_uvw), Some(a_vw), Some(a_uvw2)) = (gp.alpha(uv, w), gp.alpha(v, w), gp.alpha(u, vw))
                else {
                    continue;
                };
                let source = letters(&[u, v, w]);
                let src = Path2 { source: source.clone(), steps: vec![Step::fwd(a_uv, 0), Step::fwd(a_uvw, 0)] };
                let tgt = Path2 { source, steps: vec![Step::fwd(a_vw, 1), Step::fwd(a_uvw2, 0)] };
                let tag = FamilyTag { family: Family::A, index: vec![u, v, w], dir: Dir::Pos };
                let (name, label) = tag.name(g);
                p.cells.push(ThreeCell { name, src, tgt, label });
            }
        }
    }
    p.meta.insert("construction".into(), "Garside coherent presentation".into());
    p
}

/// Index of the cell `A_{u,v,w}` in [`garside_coherent`]'s output.
pub fn a_cell_index(p: &Polygraph31, g: &CoxeterGroup, u: ElemId, v: ElemId, w: ElemId) -> Option<usize> {
    let tag = FamilyTag { family: Family::A, index: vec![u, v, w], dir: Dir::Pos };
    p.cell_by_name(&tag.name(g).0)
}

/// One 3-sphere `ω_{u,v,w,x}` per length-additive quadruple of Garside's
/// coherent presentation, with its indices.
pub fn gar4_spheres(p: &Polygraph31, g: &CoxeterGroup) -> Result<Vec<(Vec<ElemId>, Sphere3)>> {
    let b = &p.base;
    let n = g.size();
    let alpha = |u: ElemId, v: ElemId| -> Result<RuleId> {
        let (name, _) = alpha_name(g, u, v);
        b.rule_by_name(&name).ok_or_else(|| Error::Coherence(format!("missing rule {name}")))
    };
    let a = |u, v, w| a_cell_index(p, g, u, v, w).ok_or_else(|| Error::Coherence("missing A cell".into()));
    let step = |w: &[ElemId], r: RuleId, pos: usize| Path2::single(letters(w), Step::fwd(r, pos));
    let mut out = Vec::new();
    for u in 1..n {
        for v in 1..n {
            if !g.is_reduced_product(u, v) {
                continue;
            }
            let uv = g.mul(u, v);
            for w in 1..n {
                if !g.is_reduced_product(uv, w) || !g.is_reduced_product(v, w) {
                    continue;
                }
                let (vw, uvw) = (g.mul(v, w), g.mul(uv, w));
                for x in 1..n {
                    if !g.is_reduced_product(uvw, x) || !g.is_reduced_product(w, x) || !g.is_reduced_product(vw, x) {
                        continue;
                    }
                    let (wx, vwx) = (g.mul(w, x), g.mul(vw, x));
                    let start = [u, v, w, x];
                    let e = |c, left: &[ElemId], right: &[ElemId], pre: Option<Path2>, suf: Option<Path2>| {
                        SphereEntry::whiskered(p, c, Dir::Pos, &letters(left), &letters(right), pre, suf)
                    };
                    let lhs = vec![
                        e(a(u, v, w)?, &[], &[x], None, Some(step(&[uvw, x], alpha(uvw, x)?, 0)))?,
                        e(a(u, vw, x)?, &[], &[], Some(step(&start, alpha(v, w)?, 1)), None)?,
                        e(a(v, w, x)?, &[u], &[], None, Some(step(&[u, vwx], alpha(u, vwx)?, 0)))?,
                    ];
                    let rhs = vec![
                        e(a(uv, w, x)?, &[], &[], Some(step(&start, alpha(u, v)?, 0)), None)?,
                        e(a(u, v, wx)?, &[], &[], Some(step(&start, alpha(w, x)?, 2)), None)?,
                    ];
                    let source = lhs[0].boundary(p)?.0;
                    let target = lhs.last().unwrap().boundary(p)?.1;
                    let s = Sphere3 { source, target, lhs, rhs };
                    s.check(p)?;
                    out.push((start.to_vec(), s));
                }
            }
        }
    }
    Ok(out)
}
