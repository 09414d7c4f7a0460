//! JSON documents for presentations, paths, Coxeter matrices, collapsible
//! parts and reduction reports.
//!
//! Words are strings of generator names (separated by `.` when some name is
//! longer than one character); rules, cells and steps refer to each other by
//! name, so documents stay readable and stable under reordering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cells::{Polygraph31, Sphere3, SphereEntry, ThreeCell};
use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::path::{Path2, Step};
use crate::tietze::{
    CollapsibleCell, CollapsiblePart, CollapsibleRule, CollapsibleSphere, OrderWitness, ReductionReport, Side,
};
use crate::word::{Dir, Polygraph2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygraph2Doc {
    pub generators: Vec<String>,
    pub rules: Vec<RuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub rule: String,
    /// `1` forwards, `-1` backwards.
    pub dir: i64,
    pub at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub source: String,
    pub steps: Vec<StepDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: String,
    pub src: PathDoc,
    pub tgt: PathDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygraph31Doc {
    pub generators: Vec<String>,
    pub rules: Vec<RuleDoc>,
    #[serde(default)]
    pub three_cells: Vec<CellDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDoc {
    pub generators: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsibleRuleDoc {
    pub rule: String,
    #[serde(default)]
    pub invert: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideDoc {
    Src,
    Tgt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsibleCellDoc {
    pub cell: String,
    pub side: SideDoc,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub cell: String,
    pub dir: i64,
    #[serde(default)]
    pub left: String,
    #[serde(default)]
    pub right: String,
    pub prefix: PathDoc,
    pub suffix: PathDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereDoc {
    pub source: PathDoc,
    pub target: PathDoc,
    pub lhs: Vec<EntryDoc>,
    pub rhs: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsibleSphereDoc {
    pub sphere: SphereDoc,
    pub redundant: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    #[serde(default)]
    pub generators: BTreeMap<String, u32>,
    #[serde(default)]
    pub rules: BTreeMap<String, u32>,
    #[serde(default)]
    pub cells: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsiblePartDoc {
    #[serde(default)]
    pub two_cells: Vec<CollapsibleRuleDoc>,
    #[serde(default)]
    pub three_cells: Vec<CollapsibleCellDoc>,
    #[serde(default)]
    pub spheres: Vec<CollapsibleSphereDoc>,
    #[serde(default)]
    pub order: OrderDoc,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsByDimension {
    pub generators: Vec<String>,
    pub rules: Vec<String>,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub removed: CellsByDimension,
    pub surviving: CellsByDimension,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Input(format!("invalid JSON: {e}"))
}

fn dir_of(d: i64) -> Result<Dir> {
    Dir::from_sign(d).ok_or_else(|| Error::Input(format!("step direction must be 1 or -1, got {d}")))
}

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

pub fn rules_to_doc(p: &Polygraph2) -> Vec<RuleDoc> {
    p.rules
        .iter()
        .map(|r| RuleDoc {
            id: r.name.clone(),
            lhs: p.format_word(&r.lhs),
            rhs: p.format_word(&r.rhs),
            label: (r.label != r.name).then(|| r.label.clone()),
        })
        .collect()
}

pub fn polygraph2_to_doc(p: &Polygraph2) -> Polygraph2Doc {
    Polygraph2Doc { generators: p.generators.clone(), rules: rules_to_doc(p) }
}

fn build_base(generators: &[String], rules: &[RuleDoc]) -> Result<Polygraph2> {
    let mut p = Polygraph2::new(generators.iter().cloned())?;
    for r in rules {
        let (lhs, rhs) = (p.parse_word(&r.lhs)?, p.parse_word(&r.rhs)?);
        let label = r.label.clone().unwrap_or_else(|| r.id.clone());
        p.add_labelled_rule(r.id.clone(), lhs, rhs, label)?;
    }
    Ok(p)
}

pub fn polygraph2_from_doc(d: &Polygraph2Doc) -> Result<Polygraph2> {
    build_base(&d.generators, &d.rules)
}

pub fn path_to_doc(p: &Polygraph2, f: &Path2) -> PathDoc {
    PathDoc {
        source: p.format_word(&f.source),
        steps: f
            .steps
            .iter()
            .map(|s| StepDoc { rule: p.rules[s.rule].name.clone(), dir: s.dir.sign() as i64, at: s.pos })
            .collect(),
    }
}

/// Parses a path and checks that every step applies.
pub fn path_from_doc(p: &Polygraph2, d: &PathDoc) -> Result<Path2> {
    let mut f = Path2::identity(p.parse_word(&d.source)?);
    for s in &d.steps {
        let r = p.rule_by_name(&s.rule).ok_or_else(|| Error::Input(format!("unknown rule {:?}", s.rule)))?;
        f.push(p, Step::new(r, dir_of(s.dir)?, s.at))?;
    }
    Ok(f)
}

pub fn polygraph31_to_doc(p: &Polygraph31) -> Polygraph31Doc {
    let b = &p.base;
    Polygraph31Doc {
        generators: b.generators.clone(),
        rules: rules_to_doc(b),
        three_cells: p
            .cells
            .iter()
            .map(|c| CellDoc {
                id: c.name.clone(),
                src: path_to_doc(b, &c.src),
                tgt: path_to_doc(b, &c.tgt),
                label: (c.label != c.name).then(|| c.label.clone()),
            })
            .collect(),
        meta: p.meta.clone(),
    }
}

pub fn polygraph31_from_doc(d: &Polygraph31Doc) -> Result<Polygraph31> {
    let mut p = Polygraph31::new(build_base(&d.generators, &d.rules)?);
    for c in &d.three_cells {
        let cell = ThreeCell {
            name: c.id.clone(),
            src: path_from_doc(&p.base, &c.src)?,
            tgt: path_from_doc(&p.base, &c.tgt)?,
            label: c.label.clone().unwrap_or_else(|| c.id.clone()),
        };
        p.add_cell(cell)?;
    }
    p.meta = d.meta.clone();
    Ok(p)
}

/// Reads either document shape: a plain 2-polygraph becomes a
/// (3,1)-polygraph without 3-cells.
pub fn parse_polygraph31(text: &str) -> Result<Polygraph31> {
    polygraph31_from_doc(&serde_json::from_str(text).map_err(parse_err)?)
}

pub fn parse_polygraph2(text: &str) -> Result<Polygraph2> {
    polygraph2_from_doc(&serde_json::from_str(text).map_err(parse_err)?)
}

pub fn polygraph2_to_json(p: &Polygraph2) -> String {
    serde_json::to_string_pretty(&polygraph2_to_doc(p)).expect("documents serialize")
}

pub fn polygraph31_to_json(p: &Polygraph31) -> String {
    serde_json::to_string_pretty(&polygraph31_to_doc(p)).expect("documents serialize")
}

// ---------------------------------------------------------------------------
// Coxeter matrices
// ---------------------------------------------------------------------------

pub fn coxeter_to_doc(m: &CoxeterMatrix) -> CoxeterDoc {
    CoxeterDoc { generators: m.generators.clone(), m: m.m.clone() }
}

pub fn coxeter_from_doc(d: &CoxeterDoc) -> Result<CoxeterMatrix> {
    CoxeterMatrix::new(d.generators.clone(), d.m.clone())
}

pub fn parse_coxeter(text: &str) -> Result<CoxeterMatrix> {
    coxeter_from_doc(&serde_json::from_str(text).map_err(parse_err)?)
}

pub fn coxeter_to_json(m: &CoxeterMatrix) -> String {
    serde_json::to_string_pretty(&coxeter_to_doc(m)).expect("documents serialize")
}

// ---------------------------------------------------------------------------
// Collapsible parts
// ---------------------------------------------------------------------------

fn entry_to_doc(p: &Polygraph31, e: &SphereEntry) -> EntryDoc {
    let b = &p.base;
    EntryDoc {
        cell: p.cells[e.cell].name.clone(),
        dir: e.dir.sign() as i64,
        left: b.format_word(&e.left),
        right: b.format_word(&e.right),
        prefix: path_to_doc(b, &e.prefix),
        suffix: path_to_doc(b, &e.suffix),
    }
}

fn cell_id(p: &Polygraph31, name: &str) -> Result<usize> {
    p.cell_by_name(name).ok_or_else(|| Error::Input(format!("unknown 3-cell {name:?}")))
}

fn entry_from_doc(p: &Polygraph31, d: &EntryDoc) -> Result<SphereEntry> {
    let b = &p.base;
    Ok(SphereEntry {
        cell: cell_id(p, &d.cell)?,
        dir: dir_of(d.dir)?,
        left: b.parse_word(&d.left)?,
        right: b.parse_word(&d.right)?,
        prefix: path_from_doc(b, &d.prefix)?,
        suffix: path_from_doc(b, &d.suffix)?,
    })
}

pub fn sphere_to_doc(p: &Polygraph31, s: &Sphere3) -> SphereDoc {
    SphereDoc {
        source: path_to_doc(&p.base, &s.source),
        target: path_to_doc(&p.base, &s.target),
        lhs: s.lhs.iter().map(|e| entry_to_doc(p, e)).collect(),
        rhs: s.rhs.iter().map(|e| entry_to_doc(p, e)).collect(),
    }
}

pub fn sphere_from_doc(p: &Polygraph31, d: &SphereDoc) -> Result<Sphere3> {
    Ok(Sphere3 {
        source: path_from_doc(&p.base, &d.source)?,
        target: path_from_doc(&p.base, &d.target)?,
        lhs: d.lhs.iter().map(|e| entry_from_doc(p, e)).collect::<Result<_>>()?,
        rhs: d.rhs.iter().map(|e| entry_from_doc(p, e)).collect::<Result<_>>()?,
    })
}

/// A collapsible part as a document over the names of `p`.
pub fn part_to_doc(p: &Polygraph31, g: &CollapsiblePart) -> CollapsiblePartDoc {
    let b = &p.base;
    CollapsiblePartDoc {
        two_cells: g
            .two_cells
            .iter()
            .map(|c| CollapsibleRuleDoc { rule: b.rules[c.rule].name.clone(), invert: c.invert })
            .collect(),
        three_cells: g
            .three_cells
            .iter()
            .map(|c| CollapsibleCellDoc {
                cell: p.cells[c.cell].name.clone(),
                side: match c.side {
                    Side::Src => SideDoc::Src,
                    Side::Tgt => SideDoc::Tgt,
                },
                index: c.index,
            })
            .collect(),
        spheres: g
            .spheres
            .iter()
            .map(|s| CollapsibleSphereDoc {
                sphere: sphere_to_doc(p, &s.sphere),
                redundant: p.cells[s.redundant].name.clone(),
            })
            .collect(),
        order: OrderDoc {
            generators: g.order.generators.iter().map(|(&x, &r)| (b.generators[x as usize].clone(), r)).collect(),
            rules: g.order.rules.iter().map(|(&x, &r)| (b.rules[x].name.clone(), r)).collect(),
            cells: g.order.cells.iter().map(|(&x, &r)| (p.cells[x].name.clone(), r)).collect(),
        },
    }
}

pub fn part_from_doc(p: &Polygraph31, d: &CollapsiblePartDoc) -> Result<CollapsiblePart> {
    let b = &p.base;
    let rule_id = |n: &str| b.rule_by_name(n).ok_or_else(|| Error::Input(format!("unknown rule {n:?}")));
    let gen_id = |n: &str| b.generator(n).ok_or_else(|| Error::Input(format!("unknown generator {n:?}")));
    let mut order = OrderWitness::default();
    for (n, &r) in &d.order.generators {
        order.generators.insert(gen_id(n)?, r);
    }
    for (n, &r) in &d.order.rules {
        order.rules.insert(rule_id(n)?, r);
    }
    for (n, &r) in &d.order.cells {
        order.cells.insert(cell_id(p, n)?, r);
    }
    Ok(CollapsiblePart {
        two_cells: d
            .two_cells
            .iter()
            .map(|c| Ok(CollapsibleRule { rule: rule_id(&c.rule)?, invert: c.invert }))
            .collect::<Result<_>>()?,
        three_cells: d
            .three_cells
            .iter()
            .map(|c| {
                Ok(CollapsibleCell {
                    cell: cell_id(p, &c.cell)?,
                    side: match c.side {
                        SideDoc::Src => Side::Src,
                        SideDoc::Tgt => Side::Tgt,
                    },
                    index: c.index,
                })
            })
            .collect::<Result<_>>()?,
        spheres: d
            .spheres
            .iter()
            .map(|s| {
                Ok(CollapsibleSphere { sphere: sphere_from_doc(p, &s.sphere)?, redundant: cell_id(p, &s.redundant)? })
            })
            .collect::<Result<_>>()?,
        order,
    })
}

pub fn parse_part(p: &Polygraph31, text: &str) -> Result<CollapsiblePart> {
    part_from_doc(p, &serde_json::from_str(text).map_err(parse_err)?)
}

pub fn part_to_json(p: &Polygraph31, g: &CollapsiblePart) -> String {
    serde_json::to_string_pretty(&part_to_doc(p, g)).expect("documents serialize")
}

pub fn report_to_doc(r: &ReductionReport) -> ReportDoc {
    ReportDoc {
        removed: CellsByDimension {
            generators: r.removed_generators.clone(),
            rules: r.removed_rules.clone(),
            cells: r.removed_cells.clone(),
        },
        surviving: CellsByDimension {
            generators: r.surviving_generators.clone(),
            rules: r.surviving_rules.clone(),
            cells: r.surviving_cells.clone(),
        },
    }
}
